"""Input pulse models: ideal step, trapezoid (linear rise to a plateau), and
monotone sampled data, plus the exact half-order integrals of the built-ins.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class UnsupportedWaveform(TypeError):
    """Operation not defined for this waveform kind."""


@dataclass(frozen=True)
class Step:
    """Ideal step of height `amplitude`, evaluating to 0 at t = 0 so the
    quiescent initial condition is kept."""

    amplitude: float

    def __post_init__(self):
        if not self.amplitude >= 0.0:
            raise ValueError(f"amplitude must be non-negative, got {self.amplitude}")


@dataclass(frozen=True)
class Trapezoid:
    """Linear rise to `amplitude` over `rise_time`, constant afterwards."""

    amplitude: float
    rise_time: float

    def __post_init__(self):
        if not self.amplitude >= 0.0:
            raise ValueError(f"amplitude must be non-negative, got {self.amplitude}")
        if not self.rise_time > 0.0:
            raise ValueError(f"rise_time must be positive, got {self.rise_time}")


@dataclass(frozen=True)
class Sampled:
    """Piecewise-linear pulse through (times, values); clamped to the last
    value beyond the grid.  Values are expected to start at 0 and be
    non-decreasing; use validate_monotone to check."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.ascontiguousarray(self.times, dtype=float)
        values = np.ascontiguousarray(self.values, dtype=float)
        if times.ndim != 1 or times.shape != values.shape or times.shape[0] < 2:
            raise ValueError("need equal-length 1-d arrays with at least two samples")
        if times[0] != 0.0:
            raise ValueError("sampled waveform must start at t = 0")
        if not np.all(np.diff(times) > 0.0):
            raise ValueError("sample times must be strictly increasing")
        times.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)


Waveform = Step | Trapezoid | Sampled


@dataclass(frozen=True)
class MonotoneCheck:
    ok: bool
    first_violation: int | None = None
    message: str = ""


def evaluate(w: Waveform, t):
    """U0(t) for scalar or array t >= 0."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("waveform is defined for t >= 0 only")
    if isinstance(w, Step):
        out = np.where(t_arr > 0.0, w.amplitude, 0.0)
    elif isinstance(w, Trapezoid):
        out = w.amplitude * np.minimum(t_arr / w.rise_time, 1.0)
    else:
        out = np.interp(t_arr, w.times, w.values)
    return out if isinstance(t, np.ndarray) else float(out)


def _dif32(t, t0):
    """t^(3/2) - (t-t0)^(3/2) for t >= t0, evaluated without cancellation:
    a^(3/2) - b^(3/2) = (a - b)(a + sqrt(ab) + b) / (sqrt(a) + sqrt(b))."""
    b = t - t0
    return t0 * (t + np.sqrt(t * b) + b) / (np.sqrt(t) + np.sqrt(b))


def half_integral_exact(w: Waveform, t):
    """int_0^t U0(s) (t-s)^(-1/2) ds in closed form (built-in shapes only).

    Step: 2 V sqrt(t).  Trapezoid: (V/t0)(4/3)[t^(3/2) - (t-t0)^(3/2) H(t-t0)].
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("waveform is defined for t >= 0 only")
    if isinstance(w, Step):
        out = 2.0 * w.amplitude * np.sqrt(t_arr)
    elif isinstance(w, Trapezoid):
        t0 = w.rise_time
        out = t_arr ** 1.5
        past = t_arr > t0
        out = np.where(past, _dif32(np.maximum(t_arr, t0), t0), out)
        out *= (4.0 / 3.0) * w.amplitude / t0
    else:
        raise UnsupportedWaveform(
            "no closed-form half-order integral for sampled waveforms; "
            "use the numeric half_integral path"
        )
    return out if isinstance(t, np.ndarray) else float(out)


def validate_monotone(w: Waveform) -> MonotoneCheck:
    """Check that the pulse is a monotone rise from zero; reports the first
    decreasing sample of a Sampled waveform.  Built-ins always pass."""
    if not isinstance(w, Sampled):
        return MonotoneCheck(ok=True)
    if w.values[0] != 0.0:
        return MonotoneCheck(False, 0, f"values[0] must be 0, got {w.values[0]}")
    drops = np.nonzero(np.diff(w.values) < 0.0)[0]
    if drops.size:
        i = int(drops[0]) + 1
        return MonotoneCheck(False, i, f"value decreases at index {i}")
    return MonotoneCheck(ok=True)


def load_waveform_csv(path) -> Sampled:
    """Two-column CSV (time_s, volts) with a mandatory header row."""
    from .sampling import SampledCurve

    curve = SampledCurve.from_csv(path)
    return Sampled(curve.times, curve.values)
