"""End-to-end apodization runs and the measurements taken on their spectra."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import SampledLine, measure_fwhm
from .spectrum import Spectrum, transform
from .timedomain import (
    TimeSignal,
    apply_window,
    compensate_decay,
    gaussian_window,
    truncate_at_root,
    window_scale,
    zero_fill,
)


@dataclass(frozen=True)
class Processed:
    signal: TimeSignal  # after truncation, before zero-filling
    spectrum: Spectrum


def _finish(sig: TimeSignal, n_fill: int | None) -> Processed:
    filled = zero_fill(sig, max(n_fill or len(sig), len(sig)))
    return Processed(sig, transform(filled))


def parabolic(sig: TimeSignal, k_comp: float | None, fwhm: float, root: int | None,
              n_fill: int | None = None) -> Processed:
    """Compensate, apply the parabolic-line window, truncate at a window root."""
    a = window_scale(fwhm)
    if k_comp:
        sig = compensate_decay(sig, k_comp)
    sig = apply_window(sig, a)
    if root is not None:
        sig = truncate_at_root(sig, a, root)
    return _finish(sig, n_fill)


def gaussian(sig: TimeSignal, k_comp: float | None, tau: float, n_fill: int | None = None,
             max_time: float | None = None) -> Processed:
    """Lorentz-to-Gaussian: compensate and multiply by exp(-(t/tau)^2)."""
    if k_comp:
        sig = compensate_decay(sig, k_comp)
    sig = gaussian_window(sig, tau)
    if max_time is not None:
        sig = sig.with_samples(sig.samples[sig.times <= max_time])
    return _finish(sig, n_fill)


def plain(sig: TimeSignal, n_fill: int | None = None, max_time: float | None = None) -> Processed:
    if max_time is not None:
        sig = sig.with_samples(sig.samples[sig.times <= max_time])
    return _finish(sig, n_fill)


@dataclass(frozen=True)
class ParabolaFit:
    rms: float  # RMS residual on the support, fraction of peak
    beyond: float  # max |amplitude| outside support + 3 df, fraction of peak
    peak_position: float


def normalized_real(spec: Spectrum) -> np.ndarray:
    return spec.real / np.max(spec.real)


def parabola_residual(spec: Spectrum, center: float, fwhm: float, guard_bins: int = 3) -> ParabolaFit:
    """Compare the peak-normalized real spectrum with the ideal truncated parabola."""
    y = normalized_real(spec)
    d = spec.freq - center
    half_support = fwhm / math.sqrt(2)
    target = np.clip(1 - 2 * (d / fwhm) ** 2, 0, None)
    on = np.abs(d) <= half_support
    off = np.abs(d) > half_support + guard_bins * spec.df
    rms = float(np.sqrt(np.mean((y[on] - target[on]) ** 2)))
    return ParabolaFit(rms, float(np.max(np.abs(y[off]))), float(spec.freq[np.argmax(spec.real)]))


def tail_amplitude(spec: Spectrum, center: float, offset: float) -> float:
    """Peak-normalized real amplitude at the bin nearest ``center + offset``."""
    return float(normalized_real(spec)[spec.index_of(center + offset)])


def spectral_fwhm(spec: Spectrum, center: float, span: float) -> float:
    w = spec.window(center - span, center + span)
    return measure_fwhm(SampledLine(w.freq, w.real))
