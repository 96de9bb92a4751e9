"""Line geometry, electrode material, and the physical constants derived from
them: per-length inductance, magnetic diffusion coefficient, the skin
attenuation time, and (when a resistance is defined) the resistive time
constant.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

MU_0 = 4.0e-7 * math.pi  # magnetic constant, H/m

# Electrodes are "thick" when their thickness exceeds K_HI diffusion depths
# and "thin" below K_LO; the factor-3 buffer flags the gray zone explicitly
# instead of guessing.
K_LO = 1.0 / 3.0
K_HI = 3.0


class ConfigError(ValueError):
    """Invalid geometry, material, or solver configuration."""


@dataclass(frozen=True)
class ElectrodeMaterial:
    """Electrode conductivity (S/m) and optional thickness (m).

    A missing thickness means the electrodes are effectively infinitely
    thick: the strong-skin regime applies at all times.
    """

    conductivity: float
    thickness: float | None = None

    def __post_init__(self):
        if not self.conductivity > 0.0:
            raise ConfigError(f"conductivity must be positive, got {self.conductivity}")
        if self.thickness is not None and not self.thickness > 0.0:
            raise ConfigError(f"thickness must be positive, got {self.thickness}")


@dataclass(frozen=True)
class Coaxial:
    """Coaxial geometry: outer and inner radius of the dielectric tube (m)."""

    r_outer: float
    r_inner: float

    def __post_init__(self):
        if not self.r_inner > 0.0:
            raise ConfigError(f"r_inner must be positive, got {self.r_inner}")
        if not self.r_outer > self.r_inner:
            raise ConfigError(
                f"coaxial line requires r_outer > r_inner > 0 "
                f"(got r_outer={self.r_outer}, r_inner={self.r_inner}); "
                "equal radii give zero inductance"
            )


@dataclass(frozen=True)
class Stripline:
    """Wide stripline geometry: electrode gap d (m), width much larger than d."""

    gap: float

    def __post_init__(self):
        if not self.gap > 0.0:
            raise ConfigError(f"gap must be positive, got {self.gap}")


Geometry = Coaxial | Stripline


@dataclass(frozen=True)
class LineSpec:
    """A transmission line: geometry, electrode material, and optionally an
    explicit per-length resistance (sum of both electrodes, ohm/m) that
    bypasses the thickness-based estimate."""

    geometry: Geometry
    material: ElectrodeMaterial
    resistance_override: float | None = None

    def __post_init__(self):
        if self.resistance_override is not None and not self.resistance_override > 0.0:
            raise ConfigError(
                f"resistance_override must be positive, got {self.resistance_override}"
            )


@dataclass(frozen=True)
class TimeConstants:
    """Derived constants: all SI.

    t_R and resistance_R are None when neither an electrode thickness nor a
    resistance override is available.
    """

    inductance_L: float   # H/m
    diffusion_D: float    # m^2/s
    t_sigma: float        # s
    resistance_R: float | None = None  # ohm/m
    t_R: float | None = None           # s

    def to_dict(self) -> dict:
        return {
            "inductance_L": self.inductance_L,
            "diffusion_D": self.diffusion_D,
            "t_sigma": self.t_sigma,
            "resistance_R": self.resistance_R,
            "t_R": self.t_R,
        }


class Regime(enum.Enum):
    STRONG_SKIN = "strong-skin"
    RESISTIVE = "resistive"
    INDETERMINATE = "indeterminate"


def diffusion_depth(t: float, material: ElectrodeMaterial) -> float:
    """Magnetic diffusion depth 2*sqrt(D*t) at time t."""
    if t < 0.0:
        raise ValueError(f"time must be non-negative, got {t}")
    d_m = 1.0 / (MU_0 * material.conductivity)
    return 2.0 * math.sqrt(d_m * t)


def per_length_resistance(spec: LineSpec) -> float | None:
    """Series resistance of both electrodes, ohm/m.

    Uses the override when given, else the DC estimate from the electrode
    thickness: current flows in a shell of cross-section 2*pi*r*thickness
    (coax) or thickness per unit width (stripline).
    """
    if spec.resistance_override is not None:
        return spec.resistance_override
    th = spec.material.thickness
    if th is None:
        return None
    sigma = spec.material.conductivity
    if isinstance(spec.geometry, Coaxial):
        return 1.0 / (sigma * 2.0 * math.pi * spec.geometry.r_inner * th) + \
               1.0 / (sigma * 2.0 * math.pi * spec.geometry.r_outer * th)
    return 2.0 / (sigma * th)


def derive_constants(spec: LineSpec) -> TimeConstants:
    """Derive all physical constants of a line.

    Coax: L = (mu0 / 2 pi) ln(r_outer/r_inner) and
    t_sigma = (pi / D) * [(2 r_outer r_inner / (r_outer + r_inner)) * ln(r_outer/r_inner)]^2.
    Stripline (per unit width): L = mu0 * gap and t_sigma = pi * gap^2 / D,
    with D = 1 / (mu0 * sigma) the magnetic diffusion coefficient.
    """
    sigma = spec.material.conductivity
    diffusion = 1.0 / (MU_0 * sigma)
    geo = spec.geometry
    if isinstance(geo, Coaxial):
        log_ratio = math.log(geo.r_outer / geo.r_inner)
        inductance = MU_0 / (2.0 * math.pi) * log_ratio
        eff = 2.0 * geo.r_outer * geo.r_inner / (geo.r_outer + geo.r_inner) * log_ratio
        t_sigma = math.pi / diffusion * eff * eff
    else:
        inductance = MU_0 * geo.gap
        t_sigma = math.pi * geo.gap ** 2 / diffusion
    resistance = per_length_resistance(spec)
    t_r = inductance / resistance if resistance is not None else None
    return TimeConstants(
        inductance_L=inductance,
        diffusion_D=diffusion,
        t_sigma=t_sigma,
        resistance_R=resistance,
        t_R=t_r,
    )


def skin_regime(t: float, material: ElectrodeMaterial) -> Regime:
    """Classify the electrode response at time t.

    Strong skin effect when the thickness exceeds K_HI diffusion depths,
    resistive when below K_LO of one; the band in between is reported as
    indeterminate rather than silently resolved.  Electrodes without a
    thickness are treated as infinitely thick.
    """
    if t < 0.0:
        raise ValueError(f"time must be non-negative, got {t}")
    if material.thickness is None:
        return Regime.STRONG_SKIN
    depth = diffusion_depth(t, material)
    if material.thickness > K_HI * depth:
        return Regime.STRONG_SKIN
    if material.thickness < K_LO * depth:
        return Regime.RESISTIVE
    return Regime.INDETERMINATE
