"""Independent finite-difference oracle: leapfrog integration of the
telegrapher equations with a series resistance, on staggered voltage/current
grids, driven by a step at the input of a matched-length line.

This solver shares no machinery with the memory-kernel solvers; it exists to
validate the resistive-regime closed forms (front attenuation
1 - exp(-t/2t_R) and ohmic drop 1 - exp(-t/t_R)) from the governing
equations alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .sampling import SampledCurve

FRONT_STANDOFF_CELLS = 3
ARRIVAL_THRESHOLD = 1e-3  # of the drive amplitude


@dataclass(frozen=True)
class FdtdConfig:
    """Line and run parameters.  The run must end before the front reaches
    the far end (t_end <= length * sqrt(L C)): the line is semi-infinite as
    far as the physics is concerned."""

    L: float          # H/m
    C: float          # F/m
    R: float          # ohm/m
    length: float     # m
    t_end: float      # s
    n_cells: int = 4000
    cfl: float = 1.0
    amplitude: float = 1.0

    def __post_init__(self):
        for name in ("L", "C", "length", "t_end", "amplitude"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.R < 0.0:
            raise ValueError("R must be non-negative")
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"cfl must be in (0, 1], got {self.cfl}")
        if self.n_cells < 100:
            raise ValueError(f"n_cells must be at least 100, got {self.n_cells}")
        if self.t_end > self.length * math.sqrt(self.L * self.C):
            raise ValueError(
                "t_end exceeds the one-way transit time: the front would "
                "reach the far boundary and the semi-infinite-line premise "
                "would break"
            )

    @classmethod
    def default(cls) -> "FdtdConfig":
        """A 50-ohm line with t_R = L/R spanning 1600 time steps and a run of
        two resistive time constants."""
        L, C, R = 2.5e-7, 1.0e-10, 125.0
        return cls(L=L, C=C, R=R, length=1.0, t_end=2.0 * L / R)

    @property
    def t_R(self) -> float:
        if self.R == 0.0:
            return math.inf
        return self.L / self.R

    @property
    def dz(self) -> float:
        return self.length / self.n_cells

    @property
    def dt(self) -> float:
        return self.cfl * self.dz * math.sqrt(self.L * self.C)


@dataclass
class FdtdProbe:
    """Measured attenuation curves plus scheme diagnostics.

    delta_curve is the front attenuation 1 - U_front/V sampled at whole
    steps (the probe sits FRONT_STANDOFF_CELLS behind the analytic front);
    sigma_curve is the ohmic drop sum(R I dz)/V over cells behind the front,
    sampled at half steps.  The two are independent measurements.
    """

    delta_curve: SampledCurve
    sigma_curve: SampledCurve
    impedance_curve: SampledCurve
    arrival_times: np.ndarray      # per cell, NaN where the pulse never arrived
    energy_injected: np.ndarray    # per step
    energy_field: np.ndarray       # per step
    config: FdtdConfig


def simulate_step(cfg: FdtdConfig) -> FdtdProbe:
    """Run the leapfrog scheme with a step drive (realized as a one-timestep
    ramp so no Nyquist-frequency seed is injected)."""
    dt, dz = cfg.dt, cfg.dz
    steps = int(round(cfg.t_end / dt))
    if steps < 10:
        raise ValueError("t_end spans fewer than 10 time steps")
    rho = cfg.R * dt / (2.0 * cfg.L)  # semi-implicit resistive term
    a_i = (1.0 - rho) / (1.0 + rho)
    b_i = (dt / (cfg.L * dz)) / (1.0 + rho)
    c_u = dt / (cfg.C * dz)
    sigma, delta, imped, injected, field_energy, arrival = _backend.fdtd_run(
        cfg.n_cells, steps, a_i, b_i, c_u, cfg.amplitude, dt, cfg.cfl,
        FRONT_STANDOFF_CELLS, cfg.R * dz, 0.5 * cfg.C * dz, 0.5 * cfg.L * dz,
        ARRIVAL_THRESHOLD * cfg.amplitude,
    )
    t_half = (np.arange(steps) + 0.5) * dt
    t_full = (np.arange(steps) + 1.0) * dt
    ok = ~np.isnan(delta)
    if not np.any(ok):
        raise ValueError("run too short: the front probe never became defined")
    sigma_curve = SampledCurve(t_half, sigma / cfg.amplitude, label="delta")
    delta_curve = SampledCurve(t_full[ok], delta[ok], label="Delta")
    imp_curve = SampledCurve(t_full[ok], imped[ok], label="U_over_I")
    return FdtdProbe(delta_curve, sigma_curve, imp_curve, arrival,
                     injected, field_energy, cfg)


@dataclass
class FdtdVerification:
    delta_max_rel_dev: float
    sigma_max_rel_dev: float
    ratio_early: float
    ratio_time: float
    window: tuple[float, float]


def verify_against_closed_form(probe: FdtdProbe, t_R: float) -> FdtdVerification:
    """Maximum relative deviation of both measured curves from their
    resistive-regime closed forms over [0.1 t_R, t_end], plus the measured
    ohmic-to-front attenuation ratio at the earliest reliable time."""
    if not t_R > 0.0 or not math.isfinite(t_R):
        raise ValueError("verification needs a finite positive t_R")
    t_end = probe.config.t_end
    lo = 0.1 * t_R
    if lo >= probe.sigma_curve.times[-1] or lo >= probe.delta_curve.times[-1]:
        raise ValueError("probe too short to cover the comparison window")

    td = probe.delta_curve.times
    md = (td >= lo)
    ref_d = -np.expm1(-td[md] / (2.0 * t_R))
    dev_d = np.max(np.abs(probe.delta_curve.values[md] - ref_d) / ref_d)

    ts = probe.sigma_curve.times
    ms = (ts >= lo)
    ref_s = -np.expm1(-ts[ms] / t_R)
    dev_s = np.max(np.abs(probe.sigma_curve.values[ms] - ref_s) / ref_s)

    t_early = max(0.05 * t_R, probe.delta_curve.times[0])
    ratio = float(probe.sigma_curve.interp(t_early) / probe.delta_curve.interp(t_early))
    return FdtdVerification(
        delta_max_rel_dev=float(dev_d),
        sigma_max_rel_dev=float(dev_s),
        ratio_early=ratio,
        ratio_time=t_early,
        window=(lo, t_end),
    )
