"""Contour engine: closed-form transforms, saddle shifting, convolution."""

import math

import numpy as np
import pytest
import scipy.integrate
import scipy.special as sps

from gammamoments import (ConstraintError, ContourSpec, adapted_contour,
                          bessel_k0, contour_density, contour_log_density,
                          default_contour, inverse_mellin, mellin_convolve,
                          mellin_convolve_many, mellin_symbol,
                          saddle_abscissa, tm2, tm3, tm4, w1, w2)

# frozen with mpmath (meijerg / besselk at 25 digits)
W3_R1_AT_1 = 0.16404160674837607
W3_R1_AT_01 = 1.6174597214048724
W3_R1_AT_10 = 0.0025030566951819922
W4_R1_AT_01 = 1.2972663675440976
W4_R1_AT_1 = 0.12293692982559143
W4_R1_AT_10 = 0.004407618900766703


def _gamma_symbol(power):
    def symbol(s):
        return power * sps.loggamma(s)
    return symbol


class TestContourSpec:
    def test_validation(self):
        with pytest.raises(ConstraintError):
            ContourSpec(c=1.0, t_max=-1.0, n_points=128)
        with pytest.raises(ConstraintError):
            ContourSpec(c=1.0, t_max=10.0, n_points=8)
        with pytest.raises(ConstraintError):
            ContourSpec(c=1.0, t_max=10.0, n_points=128, rule="gauss")

    def test_refined_doubles(self):
        spec = ContourSpec(c=1.0, t_max=10.0, n_points=128)
        assert spec.refined().n_points == 256


class TestClosedFormTransforms:
    def test_gamma_gives_exponential(self):
        spec = ContourSpec(c=1.5, t_max=40.0, n_points=4096)
        for x in (0.3, 1.0, 2.0, 5.0):
            got = inverse_mellin(_gamma_symbol(1), x, spec)
            assert got == pytest.approx(math.exp(-x), rel=1e-10)

    def test_gamma_squared_gives_bessel(self):
        # Mellin pair: Gamma(s)^2  <->  2 K0(2 sqrt(x))
        spec = ContourSpec(c=1.5, t_max=60.0, n_points=8192)
        for x in (0.25, 1.0, 4.0, 9.0):
            got = inverse_mellin(_gamma_symbol(2), x, spec)
            want = 2.0 * bessel_k0(2.0 * math.sqrt(x))
            assert abs(got - want) / want < 1e-8

    def test_gamma_cubed_vs_convolution_oracle(self):
        # inverse of Gamma^3 equals (inverse of Gamma^2) convolved with e^-t
        symbol3 = _gamma_symbol(3)
        spec = ContourSpec(c=1.5, t_max=80.0, n_points=16384)
        for x in (0.5, 1.0, 3.0):
            got = inverse_mellin(symbol3, x, spec)
            want, _ = scipy.integrate.quad(
                lambda t: 2.0 * bessel_k0(2.0 * math.sqrt(x / t))
                * math.exp(-t) / t, 0.0, 60.0, limit=300)
            assert got == pytest.approx(want, rel=1e-7)


class TestSaddle:
    def test_saddle_satisfies_stationarity(self):
        seq = tm3(2)
        for x in (1e-6, 1.0, 1e8):
            c = saddle_abscissa(seq, x)
            deriv = sum(a * sps.digamma(a * (c - 1.0) + b)
                        for a, b in seq.factors)
            assert deriv == pytest.approx(math.log(x), abs=1e-6)

    def test_adapted_contour_beats_static_in_tail(self):
        seq = tm2(1)
        x = 1e10
        log_w, sign = contour_log_density(seq, x)
        assert sign > 0
        # closed form: W2(1, x) = 2 K0(2 sqrt(x)), far below double range
        from gammamoments.weights import log_w2
        want = float(log_w2(1, np.float64(x)))
        assert log_w == pytest.approx(want, abs=1e-8)

    def test_default_contour_abscissa(self):
        seq = tm4(2)
        spec = default_contour(seq)
        assert spec.c == pytest.approx(seq.rightmost_pole + 1.0)


class TestContourDensities:
    @pytest.mark.parametrize("x,want", [
        (0.1, W3_R1_AT_01), (1.0, W3_R1_AT_1), (10.0, W3_R1_AT_10)])
    def test_tm3_r1_frozen(self, x, want):
        got = contour_density(tm3(1), x)
        assert got == pytest.approx(want, rel=1e-10)

    @pytest.mark.parametrize("x,want", [
        (0.1, W4_R1_AT_01), (1.0, W4_R1_AT_1), (10.0, W4_R1_AT_10)])
    def test_tm4_r1_frozen(self, x, want):
        got = contour_density(tm4(1), x)
        assert got == pytest.approx(want, rel=1e-10)

    def test_positivity_across_range(self):
        seq = tm3(2)
        for x in np.logspace(-6, 8, 15):
            _, sign = contour_log_density(seq, float(x))
            assert sign > 0

    def test_self_convergence_under_refinement(self):
        seq = tm4(1)
        x = 2.5
        spec = adapted_contour(seq, x)
        coarse = inverse_mellin(lambda s: mellin_symbol(seq, s), x, spec)
        fine = inverse_mellin(lambda s: mellin_symbol(seq, s), x,
                              spec.refined())
        assert abs(fine - coarse) / fine < 1e-9

    def test_rejects_nonpositive_x(self):
        with pytest.raises(ConstraintError):
            contour_density(tm3(1), 0.0)


class TestConvolution:
    def test_exponential_square(self):
        # e^{-t} convolved with itself has Mellin transform Gamma(s)^2
        for x in (0.25, 1.0, 4.0):
            got = mellin_convolve(lambda v: np.exp(-v), lambda v: np.exp(-v),
                                  x)
            want = 2.0 * bessel_k0(2.0 * math.sqrt(x))
            assert got == pytest.approx(want, rel=1e-8)

    def test_positivity_preserved(self):
        xs = np.logspace(-3, 3, 25)
        vals = mellin_convolve_many(lambda v: w1(2.0, v),
                                    lambda v: w1(3.0, v), xs)
        assert np.all(vals > 0.0)

    def test_scalar_matches_vector_path(self):
        xs = np.array([0.5, 1.0, 2.0])
        vec = mellin_convolve_many(lambda v: w1(2.0, v),
                                   lambda v: w1(4.0, v), xs)
        for x, v in zip(xs, vec):
            assert mellin_convolve(lambda t: w1(2.0, t),
                                   lambda t: w1(4.0, t),
                                   float(x)) == pytest.approx(v, rel=1e-10)

    def test_wide_x_range_single_call(self):
        xs = np.array([1e-12, 1e-3, 1.0, 1e4, 1e8])
        vals = mellin_convolve_many(lambda v: w1(2.0, v),
                                    lambda v: w1(2.0, v), xs)
        assert np.all(np.isfinite(vals))
        assert np.all(vals >= 0.0)

    def test_rejects_nonpositive_x(self):
        with pytest.raises(ConstraintError):
            mellin_convolve(lambda v: np.exp(-v), lambda v: np.exp(-v), -1.0)
