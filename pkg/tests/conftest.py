"""Shared helpers: quick instance constructors and a random-instance generator."""

from __future__ import annotations

import numpy as np

import igrover as ig


def make_counts(n: int, kx: int, ky: int) -> ig.ClassCounts:
    return ig.ClassCounts(k11=ky, k10=kx - ky, k00=n - kx, n=n)


def range_instance(n: int, kx: int, ky: int) -> ig.ProblemInstance:
    """X = [0, kx-1], Y = [0, ky-1] as range specs."""
    return ig.build_instance({
        "n": n,
        "x": {"kind": "range", "lo": 0, "hi": kx - 1},
        "y": {"kind": "range", "lo": 0, "hi": ky - 1},
    })


def random_instance(rng: np.random.Generator, n_lo: int = 8, n_hi: int = 4096):
    """A random valid instance mixing all three spec kinds for X and Y.

    Every ~10th draw hits an edge shape: Y = X (no k10 class) or X = the
    whole universe (no k00 class).
    """
    n = int(rng.integers(n_lo, n_hi + 1))
    kind = rng.choice(["list", "range", "mod"])
    if kind == "list":
        kx = 1 + int(rng.integers(min(n, 256)))
        members = np.sort(rng.choice(n, size=kx, replace=False))
        x = {"kind": "list", "members": [int(v) for v in members]}
        x_members = [int(v) for v in members]
    elif kind == "range":
        lo = int(rng.integers(n))
        hi = int(rng.integers(lo, n))
        x = {"kind": "range", "lo": lo, "hi": hi}
        x_members = list(range(lo, hi + 1))
    else:
        m = int(rng.integers(1, n + 1))
        r = int(rng.integers(min(m, n)))
        x = {"kind": "mod", "m": m, "r": r}
        x_members = list(range(r, n, m))

    roll = rng.random()
    if roll < 0.1:
        y = dict(x)  # Y = X
    elif roll < 0.2 and kind == "range":
        lo2 = int(rng.integers(x["lo"], x["hi"] + 1))
        y = {"kind": "range", "lo": lo2, "hi": int(rng.integers(lo2, x["hi"] + 1))}
    else:
        ky = 1 + int(rng.integers(len(x_members)))
        picked = np.sort(rng.choice(len(x_members), size=ky, replace=False))
        y = {"kind": "list", "members": [x_members[int(j)] for j in picked]}
    return ig.build_instance({"n": n, "x": x, "y": y})
