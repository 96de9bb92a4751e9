"""Closed-form attenuation results and the scaled complementary error
function they are built on.

Everything here is exact analytics: the explicit first-order attenuation term
F(t) for step and trapezoid drives, the full step response in the strong-skin
regime, the resistive-regime responses, and the front-attenuation measure in
both regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .waveform import Step, Trapezoid, Waveform, UnsupportedWaveform, _dif32

_ERFCX_CUTOFF = 2.5
_ERFCX_DEPTH = 50
_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class StrongSkin:
    """Thick-electrode regime with skin attenuation time t_sigma."""

    t_sigma: float

    def __post_init__(self):
        if not self.t_sigma > 0.0:
            raise ValueError(f"t_sigma must be positive, got {self.t_sigma}")


@dataclass(frozen=True)
class Resistive:
    """Thin-electrode regime with time constant t_R = L/R."""

    t_R: float

    def __post_init__(self):
        if not self.t_R > 0.0:
            raise ValueError(f"t_R must be positive, got {self.t_R}")


RegimeModel = StrongSkin | Resistive

# Approximate front attenuation in the strong-skin regime is valid only for
# t much smaller than t_sigma; queries beyond this fraction are refused.
SKIN_FRONT_VALIDITY = 0.1


def _erfcx_scalar(x: float) -> float:
    if x < _ERFCX_CUTOFF:
        return math.exp(x * x) * math.erfc(x)
    # Laplace continued fraction for sqrt(pi) e^{x^2} erfc(x), evaluated
    # bottom-up: 1/(x + 1/(2x + 2/(x + 3/(2x + ...))))
    f = 0.0
    for k in range(_ERFCX_DEPTH, 0, -1):
        den = 2.0 * x if k % 2 == 1 else x
        f = k / (den + f)
    return 1.0 / ((x + f) * _SQRT_PI)


def erfcx(x):
    """exp(x^2) * erfc(x) for x >= 0, scalar or array.

    Relative error is a few ULP over [0, 30]: the two-branch evaluation
    avoids both the overflow of exp(x^2) and the underflow of erfc(x) that
    break the naive product for x beyond ~26.
    """
    if np.isscalar(x) or np.ndim(x) == 0:
        xf = float(x)
        if xf < 0.0:
            raise ValueError("erfcx is implemented for x >= 0 only")
        return _erfcx_scalar(xf)
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("erfcx is implemented for x >= 0 only")
    out = np.empty_like(arr)
    flat = arr.ravel()
    res = out.ravel()
    for i in range(flat.shape[0]):
        res[i] = _erfcx_scalar(flat[i])
    return out


def f_closed(w: Waveform, t_sigma: float, t):
    """Explicit attenuation term F(t) for built-in drives.

    Step of height V:      F = V (2 sqrt(t/ts) - pi t/ts).
    Trapezoid (rise t0):   F = (V/t0) { (4/(3 sqrt(ts)))[t^{3/2} - (t-t0)^{3/2} H(t-t0)]
                                       - (pi/(2 ts))[t^2 - (t-t0)^2 H(t-t0)] },
    continuous and once-differentiable across t = t0.
    """
    if not t_sigma > 0.0:
        raise ValueError(f"t_sigma must be positive, got {t_sigma}")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("defined for t >= 0 only")
    if isinstance(w, Step):
        x = t_arr / t_sigma
        out = w.amplitude * (2.0 * np.sqrt(x) - math.pi * x)
    elif isinstance(w, Trapezoid):
        t0 = w.rise_time
        term32 = np.where(t_arr > t0, _dif32(np.maximum(t_arr, t0), t0), t_arr ** 1.5)
        # t^2 - (t-t0)^2 = t0 (2t - t0), exact
        term2 = np.where(t_arr > t0, t0 * (2.0 * t_arr - t0), t_arr ** 2)
        out = (w.amplitude / t0) * (
            4.0 / (3.0 * math.sqrt(t_sigma)) * term32
            - math.pi / (2.0 * t_sigma) * term2
        )
    else:
        raise UnsupportedWaveform("F has closed form for Step and Trapezoid only")
    return out if isinstance(t, np.ndarray) else float(out)


def usigma_step_skin(t, t_sigma: float, amplitude: float = 1.0):
    """Ohmic drop for a step drive in the strong-skin regime:
    V * (1 - erfcx(sqrt(pi t / ts))).

    The erfcx form is mandatory: the equivalent exp(pi t/ts) * erfc(...)
    product overflows once t exceeds a few hundred ts.
    """
    if not t_sigma > 0.0:
        raise ValueError(f"t_sigma must be positive, got {t_sigma}")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("defined for t >= 0 only")
    out = amplitude * (1.0 - erfcx(np.sqrt(math.pi * t_arr / t_sigma)))
    return out if isinstance(t, np.ndarray) else float(out)


def _conv_node_values(w: Waveform, t):
    """Drive samples used by the exponential-kernel quadrature.  A step is
    sampled with its right limit at t = 0 (the jump carries no measure), so
    the trapezoid rule sees the constant it actually integrates."""
    from .waveform import evaluate

    if isinstance(w, Step):
        return np.full_like(t, w.amplitude)
    return np.asarray(evaluate(w, t), dtype=float)


def exp_convolution(u0_values, times, t_R: float):
    """int_0^t u0(s) exp((s-t)/t_R) ds / t_R by the trapezoidal rule,
    accumulated with the per-step recurrence so no large exponentials appear."""
    t = np.asarray(times, dtype=float)
    u = np.asarray(u0_values, dtype=float)
    out = np.zeros(t.shape[0])
    acc = 0.0
    for n in range(1, t.shape[0]):
        h = t[n] - t[n - 1]
        d = math.exp(-h / t_R)
        acc = acc * d + 0.5 * h * (u[n - 1] * d + u[n])
        out[n] = acc / t_R
    return out


def usigma_resistive(w: Waveform, t_R: float, t):
    """Ohmic drop in the thin-electrode (resistive) regime.

    Step:       V (1 - exp(-t/t_R)).
    Trapezoid:  V (t/t0 - (t_R/t0)(1 - e^{-t/t_R}))           for t <= t0,
                V (1 - (t_R/t0)(e^{t0/t_R} - 1) e^{-t/t_R})   for t  > t0.
    Sampled:    trapezoidal-rule convolution with the exponential kernel.
    """
    if not t_R > 0.0:
        raise ValueError(f"t_R must be positive, got {t_R}")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("defined for t >= 0 only")
    if isinstance(w, Step):
        out = w.amplitude * (-np.expm1(-t_arr / t_R))
    elif isinstance(w, Trapezoid):
        t0 = w.rise_time
        ramp = w.amplitude * (t_arr / t0 - (t_R / t0) * (-np.expm1(-t_arr / t_R)))
        # expm1 keeps the t0 -> 0 limit exact: (t_R/t0)(e^{t0/t_R}-1) -> 1
        coeff = (t_R / t0) * math.expm1(t0 / t_R)
        plateau = w.amplitude * (1.0 - coeff * np.exp(-t_arr / t_R))
        out = np.where(t_arr <= t0, ramp, plateau)
    else:
        scalar = not isinstance(t, np.ndarray)
        grid = np.unique(np.concatenate((w.times[w.times >= 0.0], np.atleast_1d(t_arr))))
        if grid[0] != 0.0:
            grid = np.concatenate(([0.0], grid))
        vals = exp_convolution(_conv_node_values(w, grid), grid, t_R)
        out = np.interp(t_arr, grid, vals)
        return float(out) if scalar else out
    return out if isinstance(t, np.ndarray) else float(out)


def delta_front(t, model: RegimeModel):
    """Front attenuation 1 - U_front/V.

    Resistive regime: exactly 1 - exp(-t / (2 t_R)).  Strong-skin regime:
    the approximation (1/2) sqrt(t/ts), valid only for t well below ts;
    queries beyond SKIN_FRONT_VALIDITY * ts raise instead of extrapolating.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("defined for t >= 0 only")
    if isinstance(model, Resistive):
        out = -np.expm1(-t_arr / (2.0 * model.t_R))
    else:
        if np.any(t_arr > SKIN_FRONT_VALIDITY * model.t_sigma):
            raise ValueError(
                "the strong-skin front approximation holds only for "
                f"t <= {SKIN_FRONT_VALIDITY} * t_sigma; got t up to "
                f"{float(np.max(t_arr)):.3e} with t_sigma = {model.t_sigma:.3e}"
            )
        out = 0.5 * np.sqrt(t_arr / model.t_sigma)
    return out if isinstance(t, np.ndarray) else float(out)
