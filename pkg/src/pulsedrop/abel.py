"""Numerics for the half-order memory kernel: the forward half-order
integral, first-kind inversion, the second-kind marching solver, the explicit
attenuation term, and the resolvent form of the solution.

The forward operator A is (A f)(t) = int_0^t f(s) (t-s)^(-1/2) ds.  The
second-kind equation solved here is

    (A u)(t) + sqrt(t_sigma) * u(t) = (A u0)(t),

and the resolvent form evaluates

    u(t) = F(t) + (pi/t_sigma) int_0^t F(s) exp(pi (t-s)/t_sigma) ds,
    F    = A u0 / sqrt(t_sigma) - A (A u0) / t_sigma.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .closedform import f_closed
from .sampling import SampledCurve, TimeGrid
from .waveform import (Step, Trapezoid, Waveform, evaluate,
                       half_integral_exact, validate_monotone)

# The resolvent integrand grows like exp(pi t / t_sigma) while F turns
# negative past its maximum; beyond a few t_sigma the two terms cancel
# catastrophically.  Queries past this horizon are refused and belong to
# solve_second_kind, which is unconditionally stable.
RESOLVENT_HORIZON = 5.0


class ResolventHorizonError(ValueError):
    """Resolvent evaluation requested beyond its stable horizon."""


@dataclass
class SolverReport:
    """A solved attenuation curve plus bookkeeping.

    max_step_residual is dimensionless: for the marching solver it is the
    floating-point defect of the per-step solves (machine-level by
    construction); for the resolvent it is a coarse/fine quadrature
    difference, i.e. an actual error estimate.
    """

    curve: SampledCurve
    max_step_residual: float
    method: str
    correction: SampledCurve | None = None

    def __post_init__(self):
        if self.max_step_residual < 0.0:
            raise ValueError("residual must be non-negative")

    def to_json(self) -> str:
        return json.dumps({
            "method": self.method,
            "max_step_residual": self.max_step_residual,
            "grid": {
                "n_points": int(len(self.curve)),
                "t_max": float(self.curve.times[-1]),
            },
        })


def half_integral(curve: SampledCurve) -> SampledCurve:
    """Forward half-order integral of a sampled curve, by product
    integration exact for piecewise-linear data; the leading cell carries an
    extra sqrt(s) basis term so that repeated application keeps full accuracy
    near t = 0 (images of A generically rise like sqrt(t))."""
    out = _backend.halfint(curve.times, curve.values)
    return SampledCurve(curve.times.copy(), out, label=f"A[{curve.label or 'f'}]")


def abel_invert(phi: SampledCurve, rtol: float = 1e-9) -> SampledCurve:
    """Invert (A u) = phi via u = A[phi'] / pi, with phi' taken as the
    per-interval slopes of the piecewise-linear representation (no
    smoothing).

    Exact in the large for data generated by constant u (phi ~ 2 c sqrt(t));
    the first handful of points carry an O(1/sqrt(k)) boundary layer that is
    inherent to the slope representation.
    """
    scale = float(np.max(np.abs(phi.values)))
    if abs(phi.values[0]) > rtol * max(scale, 1.0):
        raise ValueError(
            f"inversion requires phi(0) = 0, got {phi.values[0]!r}"
        )
    slopes = np.diff(phi.values) / np.diff(phi.times)
    out = _backend.pwconst_halfint(phi.times, slopes) / math.pi
    return SampledCurve(phi.times.copy(), out, label="U_sigma")


def _require_knot(w: Waveform, grid: TimeGrid) -> None:
    if isinstance(w, Trapezoid) and w.rise_time < grid.t_max:
        pts = grid.points
        j = np.searchsorted(pts, w.rise_time)
        near = pts[min(j, len(pts) - 1)]
        prev = pts[max(j - 1, 0)]
        tol = 1e-12 * grid.t_max
        if abs(near - w.rise_time) > tol and abs(prev - w.rise_time) > tol:
            raise ValueError(
                "trapezoid rise time must be a grid point so its kink never "
                "falls inside an interval; build the grid with "
                f"TimeGrid.with_knot(n, t_max, knot={w.rise_time!r})"
            )


def _drive_half_integral(u0: Waveform, grid: TimeGrid) -> np.ndarray:
    if isinstance(u0, (Step, Trapezoid)):
        return half_integral_exact(u0, grid.points)
    check = validate_monotone(u0)
    if not check.ok:
        raise ValueError(f"input pulse must be monotone: {check.message}")
    samples = evaluate(u0, grid.points)
    return _backend.halfint(grid.points, samples)


def solve_second_kind(u0: Waveform, t_sigma: float, grid: TimeGrid) -> SolverReport:
    """March the second-kind equation forward on the grid.

    Each step isolates the newest unknown with strictly positive coefficient
    w_kk + sqrt(t_sigma); u(0) = 0.  The drive enters through its half-order
    integral, exact for built-in shapes and numeric for sampled ones.
    """
    if not t_sigma > 0.0:
        raise ValueError(f"t_sigma must be positive, got {t_sigma}")
    _require_knot(u0, grid)
    g = _drive_half_integral(u0, grid)
    u, res = _backend.second_kind_march(grid.points, g, math.sqrt(t_sigma))
    scale = float(np.max(np.abs(g))) + math.sqrt(t_sigma) * float(np.max(np.abs(u)))
    curve = SampledCurve(grid.points.copy(), u, label="U_sigma")
    return SolverReport(curve, res / scale if scale else 0.0, method="second-kind")


def compute_F(u0: Waveform, t_sigma: float, grid: TimeGrid) -> SampledCurve:
    """Explicit attenuation term F on the grid: closed form for built-in
    drives, double numeric half-order integral for sampled ones."""
    if not t_sigma > 0.0:
        raise ValueError(f"t_sigma must be positive, got {t_sigma}")
    if isinstance(u0, (Step, Trapezoid)):
        vals = f_closed(u0, t_sigma, grid.points)
    else:
        check = validate_monotone(u0)
        if not check.ok:
            raise ValueError(f"input pulse must be monotone: {check.message}")
        samples = evaluate(u0, grid.points)
        first = _backend.halfint(grid.points, samples)
        second = _backend.halfint(grid.points, first)
        vals = first / math.sqrt(t_sigma) - second / t_sigma
    return SampledCurve(grid.points.copy(), np.asarray(vals), label="F")


def _resolvent_correction(times: np.ndarray, f_vals: np.ndarray,
                          t_sigma: float) -> np.ndarray:
    """(pi/ts) int_0^t F(s) e^{pi (t-s)/ts} ds by the trapezoidal rule.

    Accumulated as e^{pi t/ts} * cumsum of F e^{-pi s/ts} in extended
    precision: early quadrature noise is amplified by up to e^{5 pi}, so the
    running sum is kept in long double.
    """
    q = math.pi / t_sigma
    t_ld = times.astype(np.longdouble)
    w = np.exp(-q * t_ld) * f_vals.astype(np.longdouble)
    contrib = 0.5 * (w[1:] + w[:-1]) * np.diff(t_ld)
    cum = np.concatenate((np.zeros(1, dtype=np.longdouble), np.cumsum(contrib)))
    corr = q * np.exp(q * t_ld) * cum
    return corr.astype(float)


def resolvent_solution(F: SampledCurve, t_sigma: float) -> SolverReport:
    """Evaluate the resolvent form on F's own grid.

    The reported correction curve is the second (integral) term by itself, so
    its smallness against F can be checked directly.  The residual is the
    difference against a half-resolution quadrature, a genuine error estimate.
    """
    if not t_sigma > 0.0:
        raise ValueError(f"t_sigma must be positive, got {t_sigma}")
    t_end = float(F.times[-1])
    if t_end > RESOLVENT_HORIZON * t_sigma * (1.0 + 1e-12):
        raise ResolventHorizonError(
            f"resolvent evaluation is limited to t <= {RESOLVENT_HORIZON} * t_sigma "
            f"(requested {t_end:.3e} with t_sigma {t_sigma:.3e}); use "
            "solve_second_kind for longer times"
        )
    scale = float(np.max(np.abs(F.values)))
    if abs(F.values[0]) > 1e-9 * max(scale, 1.0):
        raise ValueError(f"resolvent input requires F(0) = 0, got {F.values[0]!r}")
    corr = _resolvent_correction(F.times, F.values, t_sigma)
    u = F.values + corr
    corr_half = _resolvent_correction(F.times[::2], F.values[::2], t_sigma)
    res = float(np.max(np.abs(corr[::2] - corr_half)))
    curve = SampledCurve(F.times.copy(), u, label="U_sigma")
    correction = SampledCurve(F.times.copy(), corr, label="resolvent_correction")
    return SolverReport(curve, res / max(scale, 1e-300), method="resolvent",
                        correction=correction)


def graded_times(t_max: float, n: int, knot: float | None = None) -> np.ndarray:
    """Quadratically graded times (uniform in sqrt(t)): resolves the sqrt
    rise of F at the origin, where the resolvent amplifies quadrature error
    the most."""
    s = np.linspace(0.0, math.sqrt(t_max), n + 1)
    t = s * s
    t[-1] = t_max
    if knot is not None and 0.0 < knot < t_max:
        t = np.unique(np.concatenate((t, [knot])))
    return t


def resolvent_for_waveform(u0: Waveform, t_sigma: float, out_times: np.ndarray,
                           fine_n: int = 1 << 16) -> SolverReport:
    """Resolvent path for a built-in drive, evaluated accurately.

    F is taken in closed form on an internal graded grid, the resolvent
    quadrature runs there, and the result is interpolated onto out_times.
    """
    if not isinstance(u0, (Step, Trapezoid)):
        raise ValueError("the resolvent path supports built-in waveforms only")
    knot = u0.rise_time if isinstance(u0, Trapezoid) else None
    t_fine = graded_times(float(out_times[-1]), fine_n, knot=knot)
    F = SampledCurve(t_fine, f_closed(u0, t_sigma, t_fine), label="F")
    rep = resolvent_solution(F, t_sigma)
    curve = SampledCurve(np.asarray(out_times, dtype=float).copy(),
                         rep.curve.interp(out_times), label="U_sigma")
    correction = SampledCurve(curve.times.copy(),
                              rep.correction.interp(out_times),
                              label="resolvent_correction")
    return SolverReport(curve, rep.max_step_residual, method="resolvent",
                        correction=correction)
