"""Exact three-coordinate simulation of the two-oracle search.

Both oracles and the diffusion reflection keep amplitudes constant within
each of the three index classes, so the whole n-dimensional state collapses
losslessly to one point on the unit sphere:

    x = sqrt(k00) * (amplitude of any index outside X)
    y = sqrt(k10) * (amplitude of any index in X but not Y)
    z = sqrt(k11) * (amplitude of any target index)

The cheap oracle negates y and z, the expensive oracle negates z alone, and
diffusion reflects through the fixed unit vector s whose components are the
square roots of the class weights.  Success probability is exactly z**2.
Runtime per operation is O(1), independent of n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientTrace
from .instance import ClassCounts
from .scheduling import QueryStats, Schedule

_NORM_TOL = 1e-9


@dataclass(frozen=True)
class ReducedState:
    """A point (x, y, z) on the unit sphere; one coordinate per index class."""

    x: float
    y: float
    z: float

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y + self.z * self.z


@dataclass(frozen=True)
class SpherePoint:
    """The diffusion axis s: square roots of the class weights."""

    x_s: float
    y_s: float
    z_s: float


@dataclass(frozen=True)
class TraceRecord:
    """One recorded step: which op ran, where the state landed, and z**2."""

    phase: int
    step: int
    op: str
    point: ReducedState
    p_success: float


def sphere_point(counts: ClassCounts) -> SpherePoint:
    n = counts.n
    return SpherePoint(
        math.sqrt(counts.k00 / n),
        math.sqrt(counts.k10 / n),
        math.sqrt(counts.k11 / n),
    )


def initial_point(counts: ClassCounts) -> ReducedState:
    """The uniform superposition: coincides with the diffusion axis."""
    s = sphere_point(counts)
    return ReducedState(s.x_s, s.y_s, s.z_s)


def apply_oracle_x(p: ReducedState) -> ReducedState:
    """Cheap-oracle phase flip on everything inside X; x passes untouched."""
    return ReducedState(p.x, -p.y, -p.z)


def apply_oracle_y(p: ReducedState) -> ReducedState:
    """Expensive-oracle phase flip on the targets alone."""
    return ReducedState(p.x, p.y, -p.z)


def apply_diffusion(p: ReducedState, s: SpherePoint) -> ReducedState:
    """Reflection through s: p -> 2 (p . s) s - p."""
    d = p.x * s.x_s + p.y * s.y_s + p.z * s.z_s
    return ReducedState(
        2.0 * d * s.x_s - p.x,
        2.0 * d * s.y_s - p.y,
        2.0 * d * s.z_s - p.z,
    )


def success_probability(p: ReducedState) -> float:
    """Probability that measuring now lands on a target index."""
    return p.z * p.z


def run_schedule(counts: ClassCounts, sched: Schedule, record_trace: bool = True
                 ) -> tuple[ReducedState, list[TraceRecord], QueryStats]:
    """Execute init, L cheap iterations, 1 expensive, 2L cheap.

    Every iteration is oracle-then-diffusion and appends two trace records;
    the init state is recorded once up front, so a trace holds 1 + 2*(3L+1)
    records.  Counters are incremented per actual oracle call, not computed
    from L.
    """
    s = sphere_point(counts)
    p = initial_point(counts)
    trace: list[TraceRecord] = []
    if record_trace:
        trace.append(TraceRecord(0, 0, "init", p, success_probability(p)))
    count_x = 0
    count_y = 0
    plan = (
        (1, sched.L, apply_oracle_x, "oracle_x"),
        (2, 1, apply_oracle_y, "oracle_y"),
        (3, 2 * sched.L, apply_oracle_x, "oracle_x"),
    )
    for phase, steps, oracle, op_name in plan:
        for step in range(steps):
            p = oracle(p)
            if op_name == "oracle_x":
                count_x += 1
            else:
                count_y += 1
            if record_trace:
                trace.append(TraceRecord(phase, step, op_name, p, success_probability(p)))
            p = apply_diffusion(p, s)
            if record_trace:
                trace.append(TraceRecord(phase, step, "diffusion", p, success_probability(p)))
            assert abs(p.norm_sq() - 1.0) <= _NORM_TOL, "reduced state left the unit sphere"
    return p, trace, QueryStats(count_x=count_x, count_y=count_y, repetitions=1)


def write_trace_csv(path, trace: list[TraceRecord]) -> None:
    """Trace export; floats printed with 17 significant digits (lossless)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("phase,step,op,x,y,z,p_success\n")
        for r in trace:
            fh.write(
                f"{r.phase},{r.step},{r.op},"
                f"{r.point.x:.17g},{r.point.y:.17g},{r.point.z:.17g},"
                f"{r.p_success:.17g}\n"
            )


def phase1_circle_points(trace: list[TraceRecord]) -> list[ReducedState]:
    """The init point plus every post-diffusion point of the first cheap phase.

    These are the L+1 successive stops of the phase-1 trajectory; the oracle
    half-steps in between are reflections off the circle and are excluded.
    """
    pts = [r.point for r in trace if r.phase == 0 and r.op == "init"]
    pts += [r.point for r in trace if r.phase == 1 and r.op == "diffusion"]
    return pts


def _fit_plane(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Least-squares plane through the points: unit normal and max residual."""
    centroid = points.mean(axis=0)
    _, _, vt = np.linalg.svd(points - centroid, full_matrices=False)
    normal = vt[-1]
    resid = float(np.max(np.abs((points - centroid) @ normal)))
    return normal, resid


def phase1_coplanarity_residual(trace: list[TraceRecord]) -> float:
    """Largest out-of-plane deviation of the phase-1 stops (0 for a true circle)."""
    pts = phase1_circle_points(trace)
    if len(pts) < 3:
        raise InsufficientTrace(
            f"coplanarity needs at least 3 phase-1 points, trace has {len(pts)}"
        )
    arr = np.array([(p.x, p.y, p.z) for p in pts])
    return _fit_plane(arr)[1]


def phase1_rotation_check(trace: list[TraceRecord]) -> list[float]:
    """Per-step turning angles of the phase-1 trajectory about its own axis.

    Fits the circle the stops lie on (plane normal via SVD, center from the
    mean offset along the normal) and measures successive central angles
    with atan2 in the circle's own frame.  For L phase-1 iterations this
    yields L angles; they should all equal twice the per-step rotation
    angle.  Raises InsufficientTrace when fewer than 3 points are available
    (a circle needs three).
    """
    pts = phase1_circle_points(trace)
    if len(pts) < 3:
        raise InsufficientTrace(
            f"rotation check needs at least 3 phase-1 points, trace has {len(pts)}"
        )
    arr = np.array([(p.x, p.y, p.z) for p in pts])
    normal, _ = _fit_plane(arr)
    center = float((arr @ normal).mean()) * normal
    radial = arr - center
    e1 = radial[0] / np.linalg.norm(radial[0])
    e2 = np.cross(normal, e1)
    angles = np.arctan2(radial @ e2, radial @ e1)
    steps = np.diff(angles)
    # wrap into (-pi, pi] before taking magnitudes
    steps = (steps + np.pi) % (2.0 * np.pi) - np.pi
    return [float(a) for a in np.abs(steps)]
