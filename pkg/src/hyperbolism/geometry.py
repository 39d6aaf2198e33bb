"""Newton hyperbolism of circles and ellipses into spectral line curves.

Curves live in the plane as paired abscissa/ordinate arrays. Every point
function accepts scalars or numpy arrays and broadcasts, so a whole curve
is produced by passing a vector of angles.

Stage pipeline for a transverse Bloch vector (``run_protocol``)::

    raw-circle -> detector-mapped -> mirrored -> transformed -> physical

``sgn(0)`` is taken as +1 throughout.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import NonpositiveDamping, NonpositiveRadius, SingularOrdinate, ZeroVector

Y_EPSILON = 1e-12
DEFAULT_N_THETA = 2048
DEFAULT_U_MAX_FWHM = 20.0


class Point2(NamedTuple):
    u: float | np.ndarray
    v: float | np.ndarray


class Kind(str, enum.Enum):
    """Ellipse parametrizations; each preserves different Lorentzian properties."""

    A = "A"  # amplitude and absorption FWHM
    B = "B"  # amplitude only
    C = "C"  # amplitude and integral area
    D = "D"  # FWHM and integral area (amplitude only once fully transformed)


class Stage(enum.IntEnum):
    RAW_CIRCLE = 0
    DETECTOR_MAPPED = 1
    MIRRORED = 2
    TRANSFORMED = 3
    PHYSICAL = 4

    @property
    def label(self) -> str:
        return self.name.lower().replace("_", "-")


@dataclass(frozen=True)
class TransitionState:
    """Transverse magnetization of one transition.

    ``mx``/``my`` are twice the transverse expectation values, ``k`` the
    decay constant of exp(-k t) and ``center`` the line frequency in Hz.
    ``gyro_sign`` is +1 or -1 and flips the frequency axis.
    """

    mx: float
    my: float
    k: float
    center: float = 0.0
    gyro_sign: int = 1

    def __post_init__(self):
        if not self.k > 0:
            raise NonpositiveDamping(f"damping k must be positive, got {self.k}")
        if self.gyro_sign not in (1, -1):
            raise ValueError(f"gyro_sign must be +1 or -1, got {self.gyro_sign}")

    @classmethod
    def from_polar(cls, r: float, phi: float, k: float, center: float = 0.0, gyro_sign: int = 1):
        return cls(2 * r * math.cos(phi), 2 * r * math.sin(phi), k, center, gyro_sign)

    @property
    def r(self) -> float:
        return math.hypot(self.mx, self.my) / 2

    @property
    def phi(self) -> float:
        # atan2 returns (-pi, pi]
        return math.atan2(self.my, self.mx)

    def check_nonzero(self):
        if self.mx == 0 and self.my == 0:
            raise ZeroVector("transition vector (mx, my) is zero and has no phase")


@dataclass(frozen=True, eq=False)
class PlaneCurve:
    """Ordered curve samples together with the pipeline stage they belong to."""

    u: np.ndarray
    v: np.ndarray
    stage: Stage
    theta: np.ndarray
    state: TransitionState | None = None
    power: float | None = None
    kind: Kind | None = None
    n_theta: int = 0
    dropped: int = 0
    clipped: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if u.shape != v.shape or u.ndim != 1:
            raise ValueError("u and v must be 1-d arrays of equal length")
        if u.size == 0:
            raise ValueError("curve has no points")
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise ValueError("curve contains non-finite coordinates")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "theta", np.asarray(self.theta, dtype=float))

    def __len__(self):
        return self.u.size

    @property
    def points(self) -> list[Point2]:
        return [Point2(float(a), float(b)) for a, b in zip(self.u, self.v)]


def sgn(x):
    """Sign with sgn(0) = +1."""
    return np.where(np.asarray(x) >= 0, 1.0, -1.0)


def _check_rk(r, k):
    if not k > 0:
        raise NonpositiveDamping(f"damping k must be positive, got {k}")
    if not r > 0:
        raise NonpositiveRadius(f"radius r must be positive, got {r}")


def _scalarize(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


def theta_grid(n_theta: int) -> np.ndarray:
    if n_theta < 8:
        raise ValueError(f"n_theta must be at least 8, got {n_theta}")
    return 2 * np.pi * np.arange(n_theta) / n_theta


# -- protocol steps ---------------------------------------------------------


def bloch_to_unit_circle(state: TransitionState, n_theta: int = DEFAULT_N_THETA) -> PlaneCurve:
    """Unit circle whose diameter is the Bloch vector rescaled to length 2.

    Coordinates are in the (M_x, M_y) axes; the circle passes through the
    origin and is centred on (cos phi, sin phi).
    """
    state.check_nonzero()
    theta = theta_grid(n_theta)
    phi = state.phi
    return PlaneCurve(
        u=math.cos(phi) + np.cos(theta),
        v=math.sin(phi) + np.sin(theta),
        stage=Stage.RAW_CIRCLE,
        theta=theta,
        state=state,
        n_theta=n_theta,
    )


def detector_map(p, gyro_sign: int = 1) -> Point2:
    """Swap axes so the absorptive component becomes the ordinate."""
    mx, my = p
    return Point2(_scalarize(gyro_sign * np.asarray(my, dtype=float)), _scalarize(mx))


def half_plane_mirror(p) -> Point2:
    """Reflect the lower half-plane across the ordinate axis."""
    u, v = p
    return Point2(_scalarize(sgn(v) * np.asarray(u, dtype=float)), _scalarize(v))


def _divide_by_ordinate(u, v, power, eta=1.0, y_epsilon=Y_EPSILON):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if power > 0 and np.any(np.abs(v) < y_epsilon):
        raise SingularOrdinate(f"|v| < {y_epsilon} with power {power}")
    if power <= 0:
        return eta * u * np.abs(v) ** (-power)
    return eta * u / np.abs(v) ** power


def hyperbolism(p, power: float = 1.0, eta: float = 1.0, y_epsilon: float = Y_EPSILON) -> Point2:
    """Generalized Newton transform ``(u, v) -> (sgn(v) eta u / |v|**power, v)``.

    ``power=1, eta=1`` is the classical hyperbolism; ``power=0, eta=1`` is a
    plain half-plane mirror.
    """
    u, v = p
    mu, mv = half_plane_mirror((u, v))
    return Point2(_scalarize(_divide_by_ordinate(mu, mv, power, eta, y_epsilon)), _scalarize(v))


def physical_scale(p, r: float, k: float) -> Point2:
    """Scale normalized coordinates to Hz (abscissa) and amplitude (ordinate)."""
    if not k > 0:
        raise NonpositiveDamping(f"damping k must be positive, got {k}")
    u, v = p
    return Point2(
        _scalarize(k * np.asarray(u, dtype=float) / (2 * np.pi)),
        _scalarize(r * np.asarray(v, dtype=float) / k),
    )


# -- parametric curves ------------------------------------------------------


def ellipse_point(kind: Kind | str, theta, phi: float, r: float, k: float) -> Point2:
    """Point of a physically scaled ellipse for the given parametrization."""
    _check_rk(r, k)
    kind = Kind(kind)
    s = math.sin(phi) + np.cos(theta)
    c = math.cos(phi) + np.sin(theta)
    if kind is Kind.A:
        x, y = (k / (2 * np.pi)) * s, (r / k) * c
    elif kind is Kind.B:
        x, y = (r / (2 * np.pi)) * s, (r / k) * c
    elif kind is Kind.C:
        x, y = (k / np.pi) * s, (r / k) * c
    else:
        x, y = (k / (2 * np.pi)) * s, (2 * r / k) * c
    return Point2(_scalarize(x), _scalarize(y))


def continuous_transform_point(
    kind: Kind | str, theta, phi: float, r: float, k: float, power: float,
    y_epsilon: float = Y_EPSILON,
) -> Point2:
    """Ellipse point carried a fraction ``power`` of the way to its Lorentzian.

    ``power=0`` gives the mirrored ellipse, ``power=1`` the Lorentzian curve
    (identical for all four parametrizations), ``power=0.5`` a truncated
    parabola for absorptive phases and ``power=-1`` a piriform quartic.
    """
    _check_rk(r, k)
    kind = Kind(kind)
    s = math.sin(phi) + np.cos(theta)
    c = math.cos(phi) + np.sin(theta)
    y = (r / k) * c
    if power > 0 and np.any(np.abs(y) < y_epsilon):
        raise SingularOrdinate(f"ordinate below {y_epsilon} with power {power}")
    zeta = sgn(y)
    # |y|^-p, written as a product for p <= 0 so that y = 0 stays finite
    lift = np.abs(y) ** (-power) if power <= 0 else 1 / np.abs(y) ** power
    if kind is Kind.A:
        x = zeta * (r**power * k ** (1 - power) / (2 * np.pi)) * s * lift
    elif kind is Kind.B:
        x = zeta * (r / (2 * np.pi)) * s * lift
    elif kind is Kind.C:
        x = zeta * (r**power * k ** (1 - power) / (2**power * np.pi)) * s * lift
    else:
        x = zeta * (r**power * k ** (1 - power) / (2 * np.pi)) * s * lift
        y = (2 ** (1 - power) * r / k) * c
    return Point2(_scalarize(x), _scalarize(y))


def lorentzian_curve_point(theta, phi: float, r: float, k: float, y_epsilon: float = Y_EPSILON) -> Point2:
    c = math.cos(phi) + np.sin(theta)
    if np.any(np.abs(c) < y_epsilon):
        raise SingularOrdinate("cos(phi) + sin(theta) vanishes")
    s = math.sin(phi) + np.cos(theta)
    return Point2(_scalarize(k / (2 * np.pi) * s / c), _scalarize(r / k * c))


def dispersion_semi_ellipse_point(theta, phi: float, r: float, k: float) -> Point2:
    """Finite-support replacement for a dispersive line: two half ellipses.

    The baseline diameter of each half equals the absorption FWHM k/pi.
    """
    _check_rk(r, k)
    st = np.sin(theta)
    u = (k / (2 * np.pi)) * sgn(st) * (math.sin(phi) + np.cos(theta))
    return Point2(_scalarize(u), _scalarize((r / k) * st))


def piriform_point(theta, eta_x: float = 1.0, eta_y: float = 1.0) -> Point2:
    lift = 1 + np.sin(theta)
    return Point2(_scalarize(eta_x * np.cos(theta) * lift), _scalarize(eta_y * lift))


# -- curve builders ---------------------------------------------------------


def _kind_scalings(kind: Kind, power: float, r: float, k: float) -> tuple[float, float]:
    """Abscissa and ordinate factors that turn the unit-circle transform into
    the continuous transform of the chosen ellipse parametrization."""
    if kind is Kind.A:
        return 1.0, 1.0
    if kind is Kind.B:
        return (r / k) ** (1 - power), 1.0
    if kind is Kind.C:
        return 2.0 ** (1 - power), 1.0
    return 1.0, 2.0 ** (1 - power)


@dataclass(frozen=True)
class ProtocolOptions:
    y_epsilon: float = Y_EPSILON
    # physical curves keep |u - center| <= u_max_fwhm * k/pi; None disables clipping
    u_max_fwhm: float | None = DEFAULT_U_MAX_FWHM


def run_protocol(
    state: TransitionState,
    power: float = 1.0,
    kind: Kind | str = Kind.A,
    n_theta: int = DEFAULT_N_THETA,
    options: ProtocolOptions | None = None,
) -> list[PlaneCurve]:
    """Carry a transition vector through every stage of the transform.

    Returns the five stage curves in pipeline order. Samples whose ordinate
    vanishes are dropped before the division (count kept in ``dropped``);
    physical samples outside the tail window are dropped as ``clipped``.
    """
    options = options or ProtocolOptions()
    kind = Kind(kind)
    r, k = state.r, state.k
    raw = bloch_to_unit_circle(state, n_theta)
    common = dict(state=state, power=power, kind=kind, n_theta=n_theta)

    du, dv = detector_map((raw.u, raw.v), state.gyro_sign)
    mapped = PlaneCurve(du, dv, Stage.DETECTOR_MAPPED, raw.theta, **common)
    mu, mv = half_plane_mirror((du, dv))
    mirrored = PlaneCurve(mu, mv, Stage.MIRRORED, raw.theta, **common)

    keep = np.ones(n_theta, dtype=bool)
    if power > 0:
        keep = np.abs(mv) >= options.y_epsilon
    dropped = int(n_theta - keep.sum())
    eta_u, eta_v = _kind_scalings(kind, power, r, k)
    tu = _divide_by_ordinate(mu[keep], mv[keep], power, eta_u, options.y_epsilon)
    tv = eta_v * mv[keep]
    theta = raw.theta[keep]
    transformed = PlaneCurve(tu, tv, Stage.TRANSFORMED, theta, dropped=dropped, **common)

    pu, pv = physical_scale((tu, tv), r, k)
    pu = np.atleast_1d(pu)
    pv = np.atleast_1d(pv)
    inside = np.ones(pu.size, dtype=bool)
    if options.u_max_fwhm is not None:
        inside = np.abs(pu) <= options.u_max_fwhm * k / np.pi
    physical = PlaneCurve(
        pu[inside] + state.center, pv[inside], Stage.PHYSICAL, theta[inside],
        dropped=dropped, clipped=int(pu.size - inside.sum()), **common,
    )
    return [raw, mapped, mirrored, transformed, physical]


def parametric_curve(
    kind: Kind | str, phi: float, r: float, k: float, power: float,
    n_theta: int = DEFAULT_N_THETA, center: float = 0.0,
    options: ProtocolOptions | None = None,
) -> PlaneCurve:
    """Sample ``continuous_transform_point`` over a uniform angle grid."""
    options = options or ProtocolOptions()
    theta = theta_grid(n_theta)
    c = math.cos(phi) + np.sin(theta)
    keep = np.ones(n_theta, dtype=bool)
    if power > 0:
        keep = np.abs((r / k) * c) >= options.y_epsilon
    theta = theta[keep]
    u, v = continuous_transform_point(kind, theta, phi, r, k, power, options.y_epsilon)
    u, v = np.atleast_1d(u), np.atleast_1d(v)
    inside = np.ones(u.size, dtype=bool)
    if options.u_max_fwhm is not None:
        inside = np.abs(u) <= options.u_max_fwhm * k / np.pi
    return PlaneCurve(
        u[inside] + center, v[inside], Stage.PHYSICAL, theta[inside],
        power=power, kind=Kind(kind), n_theta=n_theta,
        dropped=int(n_theta - keep.sum()), clipped=int(keep.sum() - inside.sum()),
    )


def polygon_area(u, v) -> float:
    """Shoelace area of a closed polygon."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return 0.5 * abs(float(np.dot(u, np.roll(v, -1)) - np.dot(v, np.roll(u, -1))))
