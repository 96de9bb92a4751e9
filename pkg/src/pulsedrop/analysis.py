"""Engineering questions on top of the solvers: the time t_delta at which the
relative drop U_sigma/V reaches a budget delta, parameter sweeps over rise
time, figure-ready attenuation tables, and cross-method comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .abel import resolvent_for_waveform, solve_second_kind
from .closedform import (Resistive, RegimeModel, StrongSkin, delta_front,
                         usigma_resistive, usigma_step_skin)
from .sampling import SampledCurve, TimeGrid
from .waveform import Sampled, Step, Trapezoid, Waveform

DEFAULT_HORIZON_FACTOR = 1e3


class UnsupportedCombination(ValueError):
    """Requested method cannot handle this waveform/regime combination."""


class DeltaUnreachable(RuntimeError):
    """The requested drop level was not reached within the search horizon."""

    def __init__(self, message: str, achieved_max: float, horizon: float):
        super().__init__(message)
        self.achieved_max = achieved_max
        self.horizon = horizon


@dataclass(frozen=True)
class TDeltaQuery:
    """Find the smallest t with U_sigma(t)/V >= delta."""

    delta: float
    waveform: Waveform
    model: RegimeModel
    method: str = "closed-form"  # "closed-form" | "second-kind"

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if self.method not in ("closed-form", "second-kind"):
            raise ValueError(f"unknown method {self.method!r}")


def _amplitude(w: Waveform) -> float:
    if isinstance(w, Sampled):
        return float(np.max(w.values))
    return w.amplitude


def _closed_ratio(w: Waveform, model: RegimeModel, t: float) -> float:
    """U_sigma(t)/V via the closed-form route."""
    v = _amplitude(w)
    if isinstance(model, StrongSkin):
        if not isinstance(w, Step):
            raise UnsupportedCombination(
                "closed-form strong-skin attenuation exists for step drives "
                "only; use the second-kind solver for other waveforms"
            )
        return usigma_step_skin(t, model.t_sigma, w.amplitude) / v
    return float(usigma_resistive(w, model.t_R, t)) / v


def _t_char(model: RegimeModel) -> float:
    return model.t_sigma if isinstance(model, StrongSkin) else model.t_R


def _find_closed(q: TDeltaQuery, horizon: float, rel_tol: float) -> float:
    t_char = _t_char(q.model)
    hi = t_char * 2.0 ** -40
    while _closed_ratio(q.waveform, q.model, hi) < q.delta:
        hi *= 8.0
        if hi > horizon:
            achieved = _closed_ratio(q.waveform, q.model, horizon)
            raise DeltaUnreachable(
                f"delta = {q.delta} not reached by t = {horizon:.3e} "
                f"(maximum achieved: {achieved:.6f})", achieved, horizon)
    lo = 0.0
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if _closed_ratio(q.waveform, q.model, mid) >= q.delta:
            hi = mid
        else:
            lo = mid
    return hi


def _solve_ratio_curve(w: Waveform, t_sigma: float, t_max: float, n: int) -> SampledCurve:
    knot = w.rise_time if isinstance(w, Trapezoid) and w.rise_time < t_max else None
    grid = TimeGrid.with_knot(n, t_max, knot) if knot else TimeGrid.uniform(n, t_max)
    rep = solve_second_kind(w, t_sigma, grid)
    return SampledCurve(rep.curve.times, rep.curve.values / _amplitude(w),
                        label="U_sigma_over_V")


def _find_second_kind(q: TDeltaQuery, horizon: float) -> float:
    if not isinstance(q.model, StrongSkin):
        raise UnsupportedCombination(
            "the second-kind route applies to the strong-skin regime; the "
            "resistive regime has exact closed forms"
        )
    ts = q.model.t_sigma
    t_max = ts * 2.0 ** -16
    crossing = None
    while True:
        curve = _solve_ratio_curve(q.waveform, ts, t_max, 1024)
        above = np.nonzero(curve.values >= q.delta)[0]
        if above.size:
            crossing = curve.times[above[0]]
            if above[0] >= len(curve) // 16:
                break
            t_max = max(crossing * 2.0, t_max / 64.0)
        else:
            t_max *= 8.0
            if t_max > horizon:
                achieved = float(np.max(curve.values))
                raise DeltaUnreachable(
                    f"delta = {q.delta} not reached by t = {horizon:.3e} "
                    f"(maximum achieved: {achieved:.6f})", achieved, horizon)
    # refine: one dense solve around the located crossing, answer within one
    # grid step (reported as the linear interpolation of the crossing)
    fine = _solve_ratio_curve(q.waveform, ts, min(2.0 * crossing, horizon), 4096)
    k = int(np.nonzero(fine.values >= q.delta)[0][0])
    t0, t1 = fine.times[k - 1], fine.times[k]
    v0, v1 = fine.values[k - 1], fine.values[k]
    if v1 == v0:
        return float(t1)
    return float(t0 + (q.delta - v0) / (v1 - v0) * (t1 - t0))


def find_t_delta(q: TDeltaQuery, horizon: float | None = None,
                 rel_tol: float = 1e-6) -> float:
    """Smallest t with U_sigma(t)/V >= delta, by bracketing and bisection on
    the monotone attenuation curve.

    Closed-form route: relative tolerance rel_tol.  Numeric route: exact to
    one grid step of the refinement solve.  Unreachable deltas raise
    DeltaUnreachable carrying the maximum that was achieved.
    """
    horizon = horizon if horizon is not None else DEFAULT_HORIZON_FACTOR * _t_char(q.model)
    if q.method == "closed-form":
        return _find_closed(q, horizon, rel_tol)
    return _find_second_kind(q, horizon)


@dataclass(frozen=True)
class SweepCell:
    t_0: float
    delta: float
    t_delta: float | None
    error: str | None = None


def sweep_t_delta(t0_values, deltas, t_sigma: float,
                  horizon: float | None = None) -> list[SweepCell]:
    """t_delta for every (rise time, delta) pair, trapezoid drive, numeric
    strong-skin route.  Failed cells are marked and the sweep continues.
    Rows are ordered t_0-major, delta-minor."""
    model = StrongSkin(t_sigma)
    rows: list[SweepCell] = []
    for t0 in t0_values:
        w = Trapezoid(1.0, float(t0))
        for d in deltas:
            q = TDeltaQuery(float(d), w, model, method="second-kind")
            try:
                rows.append(SweepCell(float(t0), float(d), find_t_delta(q, horizon)))
            except DeltaUnreachable as exc:
                rows.append(SweepCell(float(t0), float(d), None, str(exc)))
    return rows


@dataclass
class Figure1Block:
    t0_over_tsigma: float
    t_over_tsigma: np.ndarray
    f_over_v: np.ndarray
    usigma_resolvent: np.ndarray
    usigma_numeric: np.ndarray


def figure1_data(t0_over_tsigma, grid: TimeGrid | None = None,
                 t_sigma: float = 1.0) -> list[Figure1Block]:
    """Attenuation and explicit-term tables for several rise-time ratios:
    for each ratio, columns (t/ts, F/V, U/V by the resolvent, U/V by the
    second-kind solver) on a shared grid with the kink inserted."""
    ratios = [float(r) for r in t0_over_tsigma]
    if len(ratios) < 4:
        raise ValueError("figure tables expect at least four rise-time ratios")
    from .closedform import f_closed

    blocks = []
    base = grid or TimeGrid.uniform(1024, 2.0 * t_sigma)
    for r in ratios:
        t0 = r * t_sigma
        w = Trapezoid(1.0, t0)
        g = TimeGrid.with_knot(len(base) - 1, base.t_max, t0) \
            if t0 < base.t_max else base
        numeric = solve_second_kind(w, t_sigma, g).curve
        resolvent = resolvent_for_waveform(w, t_sigma, g.points).curve
        blocks.append(Figure1Block(
            t0_over_tsigma=r,
            t_over_tsigma=g.points / t_sigma,
            f_over_v=np.asarray(f_closed(w, t_sigma, g.points)),
            usigma_resolvent=resolvent.values,
            usigma_numeric=numeric.values,
        ))
    return blocks


@dataclass
class MethodComparison:
    methods: list[str]
    max_abs: dict[str, float] = field(default_factory=dict)
    mean_abs: dict[str, float] = field(default_factory=dict)
    ratio_curve: SampledCurve | None = None


def compare_methods(w: Waveform, model: RegimeModel, grid: TimeGrid) -> MethodComparison:
    """Pairwise discrepancy of every solution route valid for (waveform,
    regime), plus the front-vs-ohmic attenuation ratio track where the step
    closed forms define it."""
    curves: dict[str, np.ndarray] = {}
    t = grid.points
    if isinstance(model, StrongSkin):
        curves["second-kind"] = solve_second_kind(w, model.t_sigma, grid).curve.values
        if isinstance(w, (Step, Trapezoid)) and grid.t_max <= 5.0 * model.t_sigma:
            curves["resolvent"] = resolvent_for_waveform(
                w, model.t_sigma, t).curve.values
        if isinstance(w, Step):
            curves["closed-form"] = np.asarray(
                usigma_step_skin(t, model.t_sigma, w.amplitude))
    else:
        curves["closed-form"] = np.asarray(usigma_resistive(w, model.t_R, t))
        from .closedform import _conv_node_values, exp_convolution
        curves["convolution"] = exp_convolution(_conv_node_values(w, t), t, model.t_R)

    cmp = MethodComparison(methods=sorted(curves))
    names = sorted(curves)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            d = np.abs(curves[a] - curves[b])
            cmp.max_abs[f"{a} vs {b}"] = float(np.max(d))
            cmp.mean_abs[f"{a} vs {b}"] = float(np.mean(d))

    if isinstance(w, Step) and w.amplitude > 0.0:
        if isinstance(model, StrongSkin):
            mask = (t > 0.0) & (t <= 0.1 * model.t_sigma)
        else:
            mask = t > 0.0
        if np.any(mask):
            tt = t[mask]
            num = np.asarray(usigma_step_skin(tt, model.t_sigma)) \
                if isinstance(model, StrongSkin) \
                else -np.expm1(-tt / model.t_R)
            den = np.asarray(delta_front(tt, model))
            cmp.ratio_curve = SampledCurve(tt, num / den, label="delta_over_Delta")
    return cmp
