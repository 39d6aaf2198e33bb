"""Closed-form line shapes, core fractions and overlap analysis.

All shapes are parametrized by a radius ``r`` and damping ``k`` and share
the peak height 2r/k and the full width at half maximum k/pi. Abscissae
are in Hz measured from the line centre unless noted.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import erf

from .errors import NoHalfCrossing, NonAbsorptive, NonpositiveDamping, NonpositiveRadius, ShapeMismatch

SQRT2 = math.sqrt(2.0)


class Shape(str, enum.Enum):
    LORENTZIAN = "lorentzian"
    GAUSSIAN = "gaussian"
    TRUNCATED_PARABOLA = "truncated_parabola"


@dataclass(frozen=True)
class LineSpec:
    shape: Shape
    r: float
    k: float
    phi: float = 0.0
    center: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "shape", Shape(self.shape))
        if not self.r > 0:
            raise NonpositiveRadius(f"r must be positive, got {self.r}")
        if not self.k > 0:
            raise NonpositiveDamping(f"k must be positive, got {self.k}")

    @classmethod
    def from_fwhm(cls, shape, fwhm: float, r: float = 1.0, phi: float = 0.0, center: float = 0.0):
        return cls(shape, r, math.pi * fwhm, phi, center)

    @property
    def fwhm(self) -> float:
        return self.k / math.pi

    @property
    def peak(self) -> float:
        return 2 * self.r / self.k


@dataclass(frozen=True, eq=False)
class SampledLine:
    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be 1-d and of equal length")
        steps = np.diff(grid)
        if grid.size > 1:
            if np.any(steps <= 0):
                raise ValueError("grid must be strictly increasing")
            if not np.allclose(steps, steps[0], rtol=1e-6, atol=0):
                raise ValueError("grid must be uniformly spaced")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @property
    def step(self) -> float:
        return float(self.grid[1] - self.grid[0])


class Extremum(NamedTuple):
    position: float
    value: float
    kind: str  # "max" or "min"


def absorption(nu, r: float, k: float):
    w = 2 * np.pi * np.asarray(nu, dtype=float)
    return 2 * r * k / (w**2 + k**2)


def dispersion(nu, r: float, k: float):
    w = 2 * np.pi * np.asarray(nu, dtype=float)
    return 2 * r * w / (w**2 + k**2)


def phased_line(omega, spec: LineSpec):
    """Phase-sensitive Lorentzian in angular frequency.

    ``r cos(phi) k/(d^2+k^2) - r sin(phi) d/(d^2+k^2)`` with d = omega - omega0.
    The geometric transform and the FID model produce ``cos(phi) A + sin(phi) D``
    instead, i.e. twice this value with the dispersive sign reversed; see
    ``phased_lorentzian``.
    """
    if spec.shape is not Shape.LORENTZIAN:
        raise ShapeMismatch(f"phased_line needs a lorentzian, got {spec.shape.value}")
    d = np.asarray(omega, dtype=float) - 2 * np.pi * spec.center
    den = d**2 + spec.k**2
    return spec.r * math.cos(spec.phi) * spec.k / den - spec.r * math.sin(spec.phi) * d / den


def phased_lorentzian(nu, r: float, k: float, phi: float):
    """``cos(phi) A(nu) + sin(phi) D(nu)``: the curve traced by the transform."""
    return math.cos(phi) * absorption(nu, r, k) + math.sin(phi) * dispersion(nu, r, k)


def gaussian_sigma(k: float) -> float:
    return k / (2 * np.pi * math.sqrt(2 * math.log(2)))


def gaussian(u, r: float, k: float):
    """Gaussian with the same peak 2r/k and FWHM k/pi as the Lorentzian."""
    sigma = gaussian_sigma(k)
    u = np.asarray(u, dtype=float)
    return (2 * r / k) * np.exp(-(u**2) / (2 * sigma**2))


def parabola_half_support(k: float) -> float:
    return k / (SQRT2 * np.pi)


def truncated_parabola(u, r: float, k: float):
    u = np.asarray(u, dtype=float)
    body = -4 * np.pi**2 * r * u**2 / k**3 + 2 * r / k
    return np.where(body > 0, body, 0.0)


def parabola_target(omega, s: float, a: float):
    """Frequency-domain target ``s (1 - (a omega)^2)`` on |a omega| <= 1, else 0."""
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")
    body = 1 - (a * np.asarray(omega, dtype=float)) ** 2
    return s * np.where(body > 0, body, 0.0)


def evaluate(spec: LineSpec, nu):
    """Value of ``spec`` at absolute frequencies ``nu``.

    Gaussian and parabolic lines only exist as absorptive shapes, so their
    phase must be a multiple of pi (the sign follows cos phi).
    """
    x = np.asarray(nu, dtype=float) - spec.center
    if spec.shape is Shape.LORENTZIAN:
        return phased_lorentzian(x, spec.r, spec.k, spec.phi)
    if abs(math.sin(spec.phi)) > 1e-12:
        raise ShapeMismatch(f"{spec.shape.value} lines need phi = 0 or pi")
    sign = 1.0 if math.cos(spec.phi) > 0 else -1.0
    if spec.shape is Shape.GAUSSIAN:
        return sign * gaussian(x, spec.r, spec.k)
    return sign * truncated_parabola(x, spec.r, spec.k)


def total_area(spec: LineSpec) -> float:
    if spec.shape is Shape.LORENTZIAN:
        return spec.r
    if spec.shape is Shape.GAUSSIAN:
        return spec.peak * gaussian_sigma(spec.k) * math.sqrt(2 * math.pi)
    return (4.0 / 3.0) * spec.peak * parabola_half_support(spec.k)


def core_fraction(spec: LineSpec, delta: float) -> float:
    """Share of the line area inside a centred window of full width ``delta``."""
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if spec.phi != 0:
        raise NonAbsorptive("core fraction is defined for absorptive lines (phi = 0)")
    h = delta / 2
    if spec.shape is Shape.LORENTZIAN:
        return (2 / math.pi) * math.atan(2 * math.pi * h / spec.k)
    if spec.shape is Shape.GAUSSIAN:
        return float(erf(h / (SQRT2 * gaussian_sigma(spec.k))))
    w = parabola_half_support(spec.k)
    if h >= w:
        return 1.0
    x = h / w
    return 1.5 * x - 0.5 * x**3


def sum_lines(specs, grid) -> SampledLine:
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one line")
    grid = np.asarray(grid, dtype=float)
    total = np.zeros_like(grid)
    for spec in specs:
        total = total + evaluate(spec, grid)
    return SampledLine(grid, total)


def _vertex(x0, h, y0, y1, y2):
    den = y0 - 2 * y1 + y2
    if den == 0:
        return x0 + h, y1
    off = 0.5 * (y0 - y2) / den
    return x0 + h * (1 + off), y1 - 0.25 * (y0 - y2) * off


def find_extrema(line: SampledLine) -> list[Extremum]:
    """Interior local maxima and minima of a sampled line.

    Single-sample extrema are refined by the parabola through the sample and
    its two neighbours. Flat runs count once, at their midpoint.
    """
    y = line.values
    x = line.grid
    if y.size < 3:
        raise ValueError("need at least three samples")
    h = line.step
    # collapse runs of equal values
    starts = np.flatnonzero(np.r_[True, y[1:] != y[:-1]])
    ends = np.r_[starts[1:] - 1, y.size - 1]
    out = []
    for j in range(1, starts.size - 1):
        s, e = starts[j], ends[j]
        before, here, after = y[s - 1], y[s], y[e + 1]
        if here > before and here > after:
            kind = "max"
        elif here < before and here < after:
            kind = "min"
        else:
            continue
        if s == e:
            pos, val = _vertex(x[s - 1], h, before, here, after)
        else:
            pos, val = 0.5 * (x[s] + x[e]), here
        out.append(Extremum(float(pos), float(val), kind))
    return out


def maxima(line: SampledLine) -> list[Extremum]:
    return [e for e in find_extrema(line) if e.kind == "max"]


def measure_fwhm(line: SampledLine) -> float:
    """Width between linearly interpolated half-maximum crossings."""
    y, x = line.values, line.grid
    i = int(np.argmax(y))
    peak = y[i]
    if not peak > 0:
        raise NoHalfCrossing("line has no positive maximum")
    half = peak / 2
    left = np.flatnonzero(y[:i] < half)
    right = np.flatnonzero(y[i:] < half)
    if left.size == 0 or right.size == 0:
        raise NoHalfCrossing("line does not fall below half maximum inside the grid")
    lo = left[-1]
    hi = i + right[0]
    xl = x[lo] + (half - y[lo]) * (x[lo + 1] - x[lo]) / (y[lo + 1] - y[lo])
    xr = x[hi - 1] + (half - y[hi - 1]) * (x[hi] - x[hi - 1]) / (y[hi] - y[hi - 1])
    return float(xr - xl)
