"""Free induction decays and the Lorentz-to-parabola apodization steps."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .analytic import LineSpec
from .errors import OverflowGuard, RootBeyondSignal, ShrinkForbidden

SERIES_LIMIT = 0.5


@dataclass(frozen=True, eq=False)
class TimeSignal:
    samples: np.ndarray
    dt: float
    t0: float = 0.0
    # time of the last kept sample after ``truncate_at_root``
    truncated_at: float | None = None

    def __post_init__(self):
        x = np.asarray(self.samples, dtype=complex)
        if x.ndim != 1 or x.size < 1:
            raise ValueError("samples must be a non-empty 1-d array")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not np.all(np.isfinite(x)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", x)

    def __len__(self):
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.samples.size)

    @property
    def duration(self) -> float:
        return float(self.times[-1])

    def with_samples(self, samples) -> "TimeSignal":
        return replace(self, samples=samples)


@dataclass(frozen=True)
class WindowParams:
    a: float
    s: float = 1.0

    def __post_init__(self):
        if not (self.a > 0 and self.s > 0):
            raise ValueError("window parameters a and s must be positive")

    @classmethod
    def from_fwhm(cls, fwhm: float, s: float = 1.0) -> "WindowParams":
        return cls(window_scale(fwhm), s)


def window_scale(fwhm: float) -> float:
    """Window time scale a = 1/(sqrt(2) pi FWHM) in seconds for FWHM in Hz."""
    if not fwhm > 0:
        raise ValueError(f"fwhm must be positive, got {fwhm}")
    return 1.0 / (math.sqrt(2) * math.pi * fwhm)


@dataclass(frozen=True)
class NoiseSpec:
    """White complex Gaussian noise, either at a fixed per-component power
    or calibrated to a frequency-domain signal-to-noise ratio.

    Calibration measures the signal on the noiseless reference spectrum
    (the input zero-filled to ``zero_fill`` samples and transformed) and the
    noise as the variance of the real part far from the line.
    """

    seed: int
    target_snr: float | None = None
    noise_power: float | None = None
    zero_fill: int | None = None
    peak_halfwidth: float = 2.0
    noise_guard: float = 50.0

    def __post_init__(self):
        if (self.target_snr is None) == (self.noise_power is None):
            raise ValueError("set exactly one of target_snr and noise_power")
        if self.target_snr is not None and not self.target_snr > 0:
            raise ValueError("target_snr must be positive")
        if self.noise_power is not None and self.noise_power < 0:
            raise ValueError("noise_power must be non-negative")


def synthesize_fid(lines, dt: float, n: int, global_phase: float = 0.0, t0: float = 0.0) -> TimeSignal:
    """Sum of ``r exp(i(phi + 2 pi center t)) exp(-k t)`` over the lines."""
    lines = list(lines)
    if not lines:
        raise ValueError("need at least one line")
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    t = t0 + dt * np.arange(n)
    x = np.zeros(n, dtype=complex)
    for line in lines:
        if not isinstance(line, LineSpec):
            raise TypeError("lines must be LineSpec instances")
        x += line.r * np.exp(1j * (line.phi + 2 * np.pi * line.center * t) - line.k * t)
    if global_phase:
        x *= np.exp(1j * global_phase)
    return TimeSignal(x, dt, t0)


def white_noise(n: int, seed: int) -> np.ndarray:
    """Unit-variance noise for the real and imaginary parts."""
    rng = np.random.default_rng(seed)
    re = rng.standard_normal(n)
    im = rng.standard_normal(n)
    return re + 1j * im


def calibrated_noise_power(sig: TimeSignal, noise: np.ndarray, spec: NoiseSpec) -> float:
    from . import spectrum

    n_fill = spec.zero_fill or len(sig)
    clean = spectrum.transform(zero_fill(sig, n_fill))
    pure = spectrum.transform(zero_fill(sig.with_samples(noise), n_fill))
    peak, quiet = spectrum.default_regions(clean, spec.peak_halfwidth, spec.noise_guard)
    unit = spectrum.measure_snr(pure, peak, quiet, signal=clean)
    return unit / spec.target_snr


def add_white_noise(sig: TimeSignal, spec: NoiseSpec) -> TimeSignal:
    noise = white_noise(len(sig), spec.seed)
    power = spec.noise_power
    if power is None:
        power = calibrated_noise_power(sig, noise, spec)
    if power == 0:
        return sig
    return sig.with_samples(sig.samples + math.sqrt(power) * noise)


def compensate_decay(sig: TimeSignal, k_comp: float, max_exponent: float = 700.0) -> TimeSignal:
    """Multiply by exp(k_comp t) to undo an exponential decay."""
    if not math.isfinite(k_comp):
        raise ValueError("k_comp must be finite")
    arg = k_comp * sig.times
    if np.max(np.abs(arg)) > max_exponent:
        raise OverflowGuard(f"|k_comp t| exceeds {max_exponent}")
    return sig.with_samples(sig.samples * np.exp(arg))


def _shape(x):
    # 3 (sin x - x cos x) / x^3, even in x, equal to 1 at x = 0
    # below SERIES_LIMIT the closed form cancels badly; the truncated series
    # is accurate there to a few ulp
    x = np.abs(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    small = x < SERIES_LIMIT
    xs = x[small] ** 2
    out[small] = 1 - xs * (1 / 10 - xs * (1 / 280 - xs * (1 / 15120 - xs * (1 / 1330560 - xs / 172972800))))
    xl = x[~small]
    out[~small] = 3 * (np.sin(xl) - xl * np.cos(xl)) / xl**3
    return out


def normalized_window_value(t, a: float):
    """Parabolic-line window scaled to 1 at t = 0."""
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")
    out = _shape(np.asarray(t, dtype=float) / a)
    return float(out) if out.ndim == 0 else out


def window_value(t, p: WindowParams):
    """Inverse (unitary) Fourier transform of the truncated-parabola spectrum."""
    scale = p.s * 2 * math.sqrt(2) * p.a / math.sqrt(math.pi) / (3 * p.a**2)
    out = scale * _shape(np.asarray(t, dtype=float) / p.a)
    return float(out) if out.ndim == 0 else out


def bisect(f, lo: float, hi: float, xtol: float = 1e-12, max_iter: int = 200) -> float:
    flo = f(lo)
    fhi = f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("root is not bracketed")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol or mid in (lo, hi):
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def tan_roots(count: int) -> list[float]:
    """First ``count`` positive solutions of tan x = x.

    Root m lies in (m pi, (m + 1/2) pi), where sin x - x cos x changes sign
    and has no poles; bisection runs to machine resolution.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    g = lambda x: math.sin(x) - x * math.cos(x)
    return [bisect(g, m * math.pi, (m + 0.5) * math.pi, xtol=0.0) for m in range(1, count + 1)]


def window_roots(a: float, count: int) -> list[float]:
    return [a * x for x in tan_roots(count)]


def apply_window(sig: TimeSignal, a: float) -> TimeSignal:
    return sig.with_samples(sig.samples * normalized_window_value(sig.times, a))


def truncate_at_root(sig: TimeSignal, a: float, root_index: int) -> TimeSignal:
    """Keep samples up to and including the ``root_index``-th window root."""
    if root_index < 1:
        raise ValueError("root_index is 1-based")
    cut = window_roots(a, root_index)[-1]
    if cut > sig.duration:
        raise RootBeyondSignal(f"root {root_index} at {cut:.6g} s is beyond the signal ({sig.duration:.6g} s)")
    keep = sig.times <= cut
    return replace(sig, samples=sig.samples[keep], truncated_at=cut)


def zero_fill(sig: TimeSignal, target_len: int) -> TimeSignal:
    n = len(sig)
    if target_len < n:
        raise ShrinkForbidden(f"cannot zero-fill {n} samples down to {target_len}")
    if target_len == n:
        return sig
    return sig.with_samples(np.concatenate([sig.samples, np.zeros(target_len - n, dtype=complex)]))


def gaussian_window(sig: TimeSignal, tau: float) -> TimeSignal:
    """Multiply by exp(-(t/tau)^2)."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    return sig.with_samples(sig.samples * np.exp(-((sig.times / tau) ** 2)))


def gaussian_tau_for_fwhm(fwhm: float) -> float:
    """tau whose Gaussian window yields a spectral line of the given FWHM."""
    return 2 * math.sqrt(math.log(2)) / (math.pi * fwhm)


def gaussian_tau_matching_parabola(fwhm: float, level: float = 0.03) -> float:
    """tau whose Gaussian line crosses the parabolic line of the same FWHM
    at ``level`` times the maximum."""
    half_width = fwhm * math.sqrt((1 - level) / 2)
    return math.sqrt(math.log(1 / level)) / (math.pi * half_width)
