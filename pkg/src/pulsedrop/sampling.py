"""Time grids and sampled curves.

A TimeGrid is the discretization support for the numeric solvers: uniform, or
uniform with one extra knot inserted so that a waveform's kink lands exactly
on a grid point.  A SampledCurve is a labelled function-on-grid and is the
common currency between the solver, analysis, and CSV layers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

CSV_FLOAT_FMT = "{:.8e}"  # 9 significant digits, byte-stable output


def _format_row(values) -> str:
    return ",".join(CSV_FLOAT_FMT.format(v) for v in values)


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing time points starting at 0."""

    points: np.ndarray
    kind: str = "uniform"
    knot: float | None = None

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.shape[0] < 16:
            raise ValueError("grid needs at least 16 points")
        if pts[0] != 0.0:
            raise ValueError("grid must start at t = 0")
        if not np.all(np.diff(pts) > 0.0):
            raise ValueError("grid points must be strictly increasing")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @classmethod
    def uniform(cls, n: int, t_max: float) -> "TimeGrid":
        if n < 16:
            raise ValueError(f"n must be at least 16, got {n}")
        if not t_max > 0.0:
            raise ValueError(f"t_max must be positive, got {t_max}")
        return cls(np.linspace(0.0, t_max, n + 1))

    @classmethod
    def with_knot(cls, n: int, t_max: float, knot: float) -> "TimeGrid":
        """Uniform grid with `knot` inserted as an exact grid point."""
        if not 0.0 < knot:
            raise ValueError(f"knot must be positive, got {knot}")
        pts = np.linspace(0.0, t_max, n + 1)
        if knot < t_max:
            j = np.searchsorted(pts, knot)
            if not np.isclose(pts[min(j, n)], knot, rtol=0.0, atol=1e-15 * t_max):
                pts = np.insert(pts, j, knot)
        return cls(pts, kind="uniform-with-knot", knot=knot)

    @property
    def t_max(self) -> float:
        return float(self.points[-1])

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass
class SampledCurve:
    """Values on a strictly increasing time grid, with a semantic label."""

    times: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.times = np.ascontiguousarray(self.times, dtype=float)
        self.values = np.ascontiguousarray(self.values, dtype=float)
        if self.times.shape != self.values.shape or self.times.ndim != 1:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if self.times.shape[0] < 2:
            raise ValueError("curve needs at least two samples")
        if not np.all(np.diff(self.times) > 0.0):
            raise ValueError("curve times must be strictly increasing")

    def interp(self, t):
        """Linear interpolation, clamped to the end values outside the grid."""
        return np.interp(t, self.times, self.values)

    def __len__(self) -> int:
        return self.times.shape[0]

    def to_csv(self, path, metadata: dict | None = None) -> None:
        """Two-column CSV with a header row; metadata goes into '#' comments."""
        name = self.label or "value"
        with open(path, "w", newline="\n") as fh:
            for key, val in (metadata or {}).items():
                fh.write(f"# {key}: {val}\n")
            fh.write(f"time_s,{name}\n")
            for t, v in zip(self.times, self.values):
                fh.write(_format_row((t, v)) + "\n")

    @classmethod
    def from_csv(cls, path) -> "SampledCurve":
        times, values = [], []
        label = ""
        with open(path) as fh:
            header_seen = False
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if not header_seen:
                    cols = line.split(",")
                    if len(cols) != 2:
                        raise ValueError(f"{path}: expected a two-column header row")
                    try:
                        float(cols[0])
                    except ValueError:
                        label = cols[1]
                        header_seen = True
                        continue
                    raise ValueError(f"{path}: header row is required")
                a, b = line.split(",")
                times.append(float(a))
                values.append(float(b))
        return cls(np.array(times), np.array(values), label=label)
