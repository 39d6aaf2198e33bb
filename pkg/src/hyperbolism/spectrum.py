"""Discrete Fourier transform of time signals and spectral measurements.

Forward transform is unnormalized, ``X_j = sum_m x_m exp(-2 pi i j m / n)``;
bins are reordered onto an ascending axis from -1/(2 dt) to 1/(2 dt) - df.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyRegion
from .timedomain import TimeSignal


@dataclass(frozen=True, eq=False)
class Spectrum:
    bins: np.ndarray
    freq: np.ndarray
    df: float

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=complex)
        freq = np.asarray(self.freq, dtype=float)
        if bins.shape != freq.shape:
            raise ValueError("bins and freq must have equal length")
        object.__setattr__(self, "bins", bins)
        object.__setattr__(self, "freq", freq)

    def __len__(self):
        return self.bins.size

    @property
    def real(self) -> np.ndarray:
        return self.bins.real

    def index_of(self, nu: float) -> int:
        return int(np.argmin(np.abs(self.freq - nu)))

    def window(self, lo: float, hi: float) -> "Spectrum":
        m = (self.freq >= lo) & (self.freq <= hi)
        return Spectrum(self.bins[m], self.freq[m], self.df)


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _bit_reversed(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    return rev


def fft_radix2(x) -> np.ndarray:
    """Iterative decimation-in-time FFT for power-of-two lengths."""
    x = np.asarray(x, dtype=complex)
    n = x.size
    if not is_power_of_two(n):
        raise ValueError(f"length {n} is not a power of two")
    out = x[_bit_reversed(n)]
    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / size)
        blocks = out.reshape(-1, size)
        even = blocks[:, :half]
        odd = blocks[:, half:] * twiddle
        out = np.concatenate([even + odd, even - odd], axis=1).ravel()
        size *= 2
    return out


def dft_direct(x, chunk: int = 512) -> np.ndarray:
    """O(n^2) DFT; phases use (j m mod n) to keep the twiddles exact."""
    x = np.asarray(x, dtype=complex)
    n = x.size
    m = np.arange(n)
    out = np.empty(n, dtype=complex)
    for start in range(0, n, chunk):
        j = np.arange(start, min(start + chunk, n))
        phase = (np.outer(j, m) % n) * (2 * np.pi / n)
        out[start:start + j.size] = np.exp(-1j * phase) @ x
    return out


def dft(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    return fft_radix2(x) if is_power_of_two(x.size) else dft_direct(x)


def frequency_axis(n: int, dt: float) -> np.ndarray:
    return np.fft.fftshift(np.fft.fftfreq(n, dt))


def transform(sig: TimeSignal) -> Spectrum:
    n = len(sig)
    if n < 2:
        raise ValueError("need at least two samples")
    bins = np.fft.fftshift(dft(sig.samples))
    return Spectrum(bins, frequency_axis(n, sig.dt), 1.0 / (n * sig.dt))


def phase_correct(spec: Spectrum, phi0: float) -> Spectrum:
    """Zero-order phase correction, bins times exp(-i phi0)."""
    return Spectrum(spec.bins * np.exp(-1j * phi0), spec.freq, spec.df)


def _mask(spec: Spectrum, region) -> np.ndarray:
    lo, hi = region
    m = (spec.freq >= lo) & (spec.freq <= hi)
    if not m.any():
        raise EmptyRegion(f"no bins in [{lo}, {hi}]")
    return m


def measure_snr(spec: Spectrum, peak_region, noise_region, signal: Spectrum | None = None) -> float:
    """Squared peak of the real part over the real-part noise variance.

    The peak is taken from ``signal`` when given (the noiseless line pushed
    through the same processing), otherwise from ``spec`` itself.
    """
    lo_p, hi_p = peak_region
    lo_n, hi_n = noise_region
    if max(lo_p, lo_n) <= min(hi_p, hi_n):
        raise ValueError("peak and noise regions overlap")
    source = spec if signal is None else signal
    peak = float(np.max(source.real[_mask(source, peak_region)]))
    var = float(np.var(spec.real[_mask(spec, noise_region)]))
    if var == 0:
        return math.inf
    return peak**2 / var


def default_regions(spec: Spectrum, peak_halfwidth: float = 2.0, guard: float = 50.0):
    """Peak region around the real-part maximum and the wider of the two
    flanks at least ``guard`` Hz away from it as noise region."""
    nu = float(spec.freq[np.argmax(spec.real)])
    lo, hi = float(spec.freq[0]), float(spec.freq[-1])
    peak = (nu - peak_halfwidth, nu + peak_halfwidth)
    left = (lo, nu - guard)
    right = (nu + guard, hi)
    noise = left if left[1] - left[0] >= right[1] - right[0] else right
    if noise[1] <= noise[0]:
        raise EmptyRegion("spectrum too narrow for a noise region")
    return peak, noise
