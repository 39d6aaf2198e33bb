import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.optimize import brentq

from hyperbolism import analytic as an
from hyperbolism.analytic import LineSpec, SampledLine, Shape
from hyperbolism.errors import NoHalfCrossing, NonAbsorptive, NonpositiveDamping, ShapeMismatch

SHAPES = list(Shape)


def grid(lo, hi, step):
    return np.arange(lo, hi + step / 2, step)


# -- shape functions --------------------------------------------------------


@pytest.mark.parametrize("nu, expected", [
    (0.0, 2.0),
    (1 / (2 * math.pi), 1.0),
    (1.0, 2 / (4 * math.pi**2 + 1)),
])
def test_absorption(nu, expected):
    assert an.absorption(nu, 1, 1) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("nu, expected", [
    (0.0, 0.0),
    (1 / (2 * math.pi), 1.0),
    (-1 / (2 * math.pi), -1.0),
])
def test_dispersion(nu, expected):
    assert an.dispersion(nu, 1, 1) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("phi, expected", [(0.0, 1.0), (math.pi / 2, 0.0), (math.pi, -1.0)])
def test_phased_line_at_center(phi, expected):
    spec = LineSpec(Shape.LORENTZIAN, 1, 1, phi, center=3.0)
    assert an.phased_line(2 * math.pi * 3.0, spec) == pytest.approx(expected, abs=1e-12)


def test_phased_line_rejects_other_shapes():
    with pytest.raises(ShapeMismatch):
        an.phased_line(0.0, LineSpec(Shape.GAUSSIAN, 1, 1))


@given(st.floats(-math.pi, math.pi), st.floats(-3, 3))
def test_phased_lorentzian_is_twice_phased_line_with_reversed_phase(phi, nu):
    r, k = 0.8, 1.3
    spec = LineSpec(Shape.LORENTZIAN, r, k, -phi)
    want = 2 * an.phased_line(2 * math.pi * nu, spec)
    assert an.phased_lorentzian(nu, r, k, phi) == pytest.approx(want, rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("u, expected", [(0.0, 2.0), (1 / (2 * math.pi), 1.0), (1 / math.pi, 0.125)])
def test_gaussian(u, expected):
    assert an.gaussian(u, 1, 1) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("u, expected", [
    (0.0, 2.0),
    (1 / (2 * math.pi), 1.0),
    (1 / (math.sqrt(2) * math.pi) + 0.01, 0.0),
])
def test_truncated_parabola(u, expected):
    assert an.truncated_parabola(u, 1, 1) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("omega_a, expected", [(0.0, 1.0), (1 / math.sqrt(2), 0.5), (1.0, 0.0), (1.5, 0.0)])
def test_parabola_target(omega_a, expected):
    a = 0.37
    assert an.parabola_target(omega_a / a, 1.0, a) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("shape", SHAPES)
def test_shared_peak_and_fwhm(shape):
    spec = LineSpec(shape, 0.7, 1.0)
    line = SampledLine(grid(-1, 1, 1e-5), an.evaluate(spec, grid(-1, 1, 1e-5)))
    assert line.values.max() == pytest.approx(spec.peak, rel=1e-9)
    assert an.measure_fwhm(line) == pytest.approx(1 / math.pi, rel=1e-3)


@pytest.mark.parametrize("shape", SHAPES)
def test_area_normalization(shape):
    spec = LineSpec(shape, 1.0, 1.0)
    f = lambda u: float(an.evaluate(spec, u))
    if shape is Shape.TRUNCATED_PARABOLA:
        w = an.parabola_half_support(spec.k)
        area = quad(f, -w, w)[0]
    else:
        area = quad(f, -np.inf, np.inf, limit=500)[0]
    assert area == pytest.approx(an.total_area(spec), rel=1e-3)
    # Lorentzian area equals r
    if shape is Shape.LORENTZIAN:
        assert area == pytest.approx(1.0, rel=1e-6)


def test_evaluate_rejects_phased_gaussian():
    with pytest.raises(ShapeMismatch):
        an.evaluate(LineSpec(Shape.GAUSSIAN, 1, 1, phi=0.3), 0.0)


def test_evaluate_inverted_parabola():
    spec = LineSpec(Shape.TRUNCATED_PARABOLA, 1, 1, phi=math.pi)
    assert an.evaluate(spec, 0.0) == pytest.approx(-2.0)


def test_linespec_validation():
    with pytest.raises(NonpositiveDamping):
        LineSpec(Shape.LORENTZIAN, 1, 0)
    assert LineSpec.from_fwhm("gaussian", 2.0).k == pytest.approx(2 * math.pi)


# -- core fractions ---------------------------------------------------------


def _chi_oracle(spec, delta):
    f = lambda u: float(an.evaluate(spec, u))
    inner = quad(f, -delta / 2, delta / 2, limit=200)[0]
    return inner / an.total_area(spec)


@pytest.mark.parametrize("shape", SHAPES)
@pytest.mark.parametrize("delta", [0.1, 0.5, 1.0, math.sqrt(2), 2.5])
def test_core_fraction_matches_quadrature(shape, delta):
    spec = LineSpec.from_fwhm(shape, 1.0)
    assert an.core_fraction(spec, delta) == pytest.approx(_chi_oracle(spec, delta), rel=1e-6, abs=1e-9)


def test_core_fraction_reference_values():
    chi = {s: an.core_fraction(LineSpec.from_fwhm(s, 1.0), math.sqrt(2)) for s in SHAPES}
    assert chi[Shape.LORENTZIAN] == pytest.approx(2 / math.pi * math.atan(math.sqrt(2)), rel=1e-12)
    assert 0.605 <= chi[Shape.LORENTZIAN] <= 0.615
    assert 0.895 <= chi[Shape.GAUSSIAN] <= 0.910
    assert chi[Shape.TRUNCATED_PARABOLA] == 1.0


@pytest.mark.parametrize("shape", SHAPES)
def test_core_fraction_monotone(shape):
    spec = LineSpec.from_fwhm(shape, 1.0)
    values = [an.core_fraction(spec, d) for d in np.linspace(0.01, 4, 200)]
    assert np.all(np.diff(values) >= 0)
    assert 0 < values[0] and values[-1] <= 1


def test_core_fraction_errors():
    with pytest.raises(NonAbsorptive):
        an.core_fraction(LineSpec(Shape.LORENTZIAN, 1, 1, phi=0.2), 1.0)
    with pytest.raises(ValueError):
        an.core_fraction(LineSpec(Shape.LORENTZIAN, 1, 1), 0.0)


# -- sums and extrema -------------------------------------------------------


def test_sum_single_line_is_evaluation():
    spec = LineSpec(Shape.GAUSSIAN, 1, 1, center=0.2)
    g = grid(-1, 1, 1e-3)
    assert np.array_equal(an.sum_lines([spec], g).values, an.evaluate(spec, g))


@settings(max_examples=50)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(0.1, 3), st.floats(0.1, 3))
def test_sum_lines_is_linear(c1, c2, r1, r2):
    g = grid(-2, 2, 1e-2)
    a = LineSpec(Shape.LORENTZIAN, r1, 1.0, 0.4, c1)
    b = LineSpec(Shape.LORENTZIAN, r2, 0.5, -1.0, c2)
    total = an.sum_lines([a, b], g).values
    assert np.allclose(total, an.evaluate(a, g) + an.evaluate(b, g), rtol=1e-13, atol=1e-13)


def test_sum_lines_empty():
    with pytest.raises(ValueError):
        an.sum_lines([], [0.0, 1.0])


def _doublet(shape, sep, k=1.0, step=1e-4, phis=(0.0, 0.0)):
    g = grid(-1, 1, step)
    specs = [LineSpec(shape, 1.0, k, phis[0], -sep / 2), LineSpec(shape, 1.0, k, phis[1], sep / 2)]
    return an.sum_lines(specs, g)


def test_parabola_pseudo_triplet():
    peaks = an.maxima(_doublet(Shape.TRUNCATED_PARABOLA, 0.3))
    assert len(peaks) == 3
    assert peaks[1].position == pytest.approx(0.0, abs=1e-4)


def test_narrow_parabola_doublet_merges():
    assert len(an.maxima(_doublet(Shape.TRUNCATED_PARABOLA, 0.19))) == 1


def test_lorentzian_doublet_peaks_pulled_inward():
    peaks = an.maxima(_doublet(Shape.LORENTZIAN, 0.3))
    assert len(peaks) == 2
    sep = peaks[1].position - peaks[0].position
    assert sep == pytest.approx(0.267, abs=0.005)
    # oracle: zero of the analytic derivative of the summed line
    k, w = 1.0, 2 * math.pi

    def slope(u):
        return sum(-2 * k * 2 * w**2 * (u - c) / ((w * (u - c)) ** 2 + k**2) ** 2 for c in (-0.15, 0.15))

    root = brentq(slope, 0.05, 0.2, xtol=1e-14)
    assert sep == pytest.approx(2 * root, abs=1e-6)


def test_parabola_doublet_peaks_unmoved():
    step = 1e-4
    peaks = an.maxima(_doublet(Shape.TRUNCATED_PARABOLA, 0.3, step=step))
    assert peaks[-1].position - peaks[0].position == pytest.approx(0.3, abs=2 * step)


def test_opposite_sign_parabola_overlap_is_affine():
    step = 1e-4
    line = _doublet(Shape.TRUNCATED_PARABOLA, 0.3, step=step, phis=(0.0, math.pi))
    w = an.parabola_half_support(1.0)
    lo, hi = 0.15 - w, -0.15 + w
    inside = np.flatnonzero((line.grid > lo + step) & (line.grid < hi - step))
    assert inside.size > 100
    y = line.values
    d2 = y[inside - 1] - 2 * y[inside] + y[inside + 1]
    assert np.max(np.abs(d2)) <= 1e-9 * 2.0


def test_single_line_maximum_position():
    g = grid(0, 10, 1e-3)
    line = an.sum_lines([LineSpec(Shape.LORENTZIAN, 1, 1, center=5.0)], g)
    (peak,) = an.find_extrema(line)
    assert peak.kind == "max"
    assert peak.position == pytest.approx(5.0, abs=1e-9)


@settings(max_examples=100)
@given(st.floats(-0.8, 0.8), st.floats(0.3, 2.0))
def test_vertex_refinement_exact_for_parabola(c, k):
    g = grid(-1, 1, 1e-2)
    y = -(g - c) ** 2 + k
    (peak,) = an.find_extrema(SampledLine(g, y))
    assert peak.position == pytest.approx(c, abs=1e-9)
    assert peak.value == pytest.approx(k, abs=1e-9)


def test_plateau_counts_once():
    g = np.arange(7.0)
    (e,) = an.find_extrema(SampledLine(g, [0, 1, 2, 2, 2, 1, 0]))
    assert e.position == 3.0 and e.value == 2.0


def test_minimum_found():
    g = grid(-1, 1, 1e-3)
    line = SampledLine(g, an.dispersion(g, 1.0, 1.0))
    kinds = sorted(e.kind for e in an.find_extrema(line))
    assert kinds == ["max", "min"]


# -- FWHM -------------------------------------------------------------------


@pytest.mark.parametrize("shape", SHAPES)
def test_measure_fwhm(shape):
    g = grid(-2, 2, 1e-4)
    line = an.sum_lines([LineSpec(shape, 1, 1)], g)
    assert an.measure_fwhm(line) == pytest.approx(1 / math.pi, rel=1e-3)


def test_measure_fwhm_needs_crossings():
    g = grid(-0.05, 0.05, 1e-3)
    with pytest.raises(NoHalfCrossing):
        an.measure_fwhm(an.sum_lines([LineSpec(Shape.LORENTZIAN, 1, 1)], g))
    with pytest.raises(NoHalfCrossing):
        an.measure_fwhm(SampledLine(g, -np.ones_like(g)))


def test_sampled_line_validation():
    with pytest.raises(ValueError):
        SampledLine([0, 1, 3], [0, 0, 0])
    with pytest.raises(ValueError):
        SampledLine([0, 1, 0.5], [0, 0, 0])
