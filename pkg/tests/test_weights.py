"""Principal weight functions: closed forms, spline-backed densities,
origin/tail behaviour, and the convolution cross-check."""

import math

import numpy as np
import pytest

from gammamoments import (ConstraintError, DomainError, TruncationError,
                          bessel_k0, contour_density, principal_solution,
                          tm1, tm2, tm3, tm4, w1, w2, w3, w4,
                          w4_via_convolution, weight_tm1, weight_tm2,
                          weight_tm3, weight_tm4, weight_w1)

TWO_K0_2 = 2.0 * 0.1138938727495334  # 2 K0(2), frozen with mpmath


class TestClosedForms:
    def test_w1_formula(self):
        for q, x in [(2, 0.5), (4, 1.0), (6, 7.0)]:
            want = math.exp(-x ** (1.0 / q)) / (q * x ** ((q - 1.0) / q))
            assert w1(q, x) == pytest.approx(want, rel=1e-14)

    def test_w2_formula(self):
        for r, x in [(1, 1.0), (2, 0.5), (3, 4.0)]:
            want = (2.0 * bessel_k0(2.0 * x ** (1.0 / (2.0 * r)))
                    / (r * x ** ((r - 1.0) / r)))
            assert w2(r, x) == pytest.approx(want, rel=1e-13)

    def test_w2_frozen_at_one(self):
        assert w2(1, 1.0) == pytest.approx(TWO_K0_2, rel=1e-13)

    def test_rejects_bad_arguments(self):
        with pytest.raises(DomainError):
            w1(2, 0.0)
        with pytest.raises(DomainError):
            w1(0.5, 1.0)
        with pytest.raises(ConstraintError):
            w2(0, 1.0)


class TestWeightObjects:
    def test_tm1_metadata(self):
        w = weight_tm1(2)
        assert w.alpha0 == pytest.approx(-3.0 / 4.0)
        assert w.growth == (1.0, 1.0 / 4.0)
        assert w.tail_certified

    def test_tm2_metadata(self):
        w = weight_tm2(3)
        assert w.alpha0 == pytest.approx(-2.0 / 3.0)
        assert w.growth == (2.0, 1.0 / 6.0)

    def test_contour_backed_not_tail_certified(self):
        assert not weight_tm3(1).tail_certified
        assert not weight_tm4(1).tail_certified

    def test_principal_solution_dispatch(self):
        for seq, factory in [(tm1(2), weight_tm1), (tm2(2), weight_tm2),
                             (tm3(1), weight_tm3), (tm4(1), weight_tm4)]:
            assert principal_solution(seq).name == factory(seq.r).name

    def test_evaluate_matches_log_evaluate(self):
        w = weight_tm2(2)
        xs = np.logspace(-3, 3, 11)
        assert np.allclose(w.evaluate(xs), np.exp(w.log_evaluate(xs)),
                           rtol=1e-15)


class TestOriginExponent:
    def test_alpha0_slope_fit_tm1(self):
        # ln W ~ alpha0 ln x near the origin; tm1 is a pure power there
        w = weight_tm1(2)
        xs = np.logspace(-14, -12, 12)
        slope, _ = np.polyfit(np.log(xs), w.log_evaluate(xs), 1)
        assert slope == pytest.approx(w.alpha0, abs=0.01)

    def test_alpha0_slope_fit_tm2(self):
        # the K0 origin behaviour adds a ln ln(1/x) correction ~ 1/ln(1/x)
        w = weight_tm2(3)
        xs = np.logspace(-14, -12, 12)
        slope, _ = np.polyfit(np.log(xs), w.log_evaluate(xs), 1)
        assert slope == pytest.approx(w.alpha0, abs=0.05)

    def test_alpha0_slope_fit_spline(self):
        w = weight_tm4(1)
        xs = np.logspace(-14, -12, 12)
        slope, _ = np.polyfit(np.log(xs), w.log_evaluate(xs), 1)
        # K0-type log factor perturbs the pure power slightly
        assert slope == pytest.approx(w.alpha0, abs=0.05)


class TestSplineDensities:
    @pytest.mark.parametrize("r,x", [(1, 0.5), (1, 50.0), (2, 3.0)])
    def test_spline_matches_direct_contour_w3(self, r, x):
        direct = w3(r, x)
        spline = weight_tm3(r).evaluate(np.float64(x))
        assert spline == pytest.approx(direct, rel=1e-8)

    @pytest.mark.parametrize("r,x", [(1, 0.2), (2, 10.0)])
    def test_spline_matches_direct_contour_w4(self, r, x):
        direct = w4(r, x)
        spline = weight_tm4(r).evaluate(np.float64(x))
        assert spline == pytest.approx(direct, rel=1e-8)

    def test_positive_on_wide_grid(self):
        w = weight_tm3(2)
        xs = np.logspace(-18, 10, 400)
        assert np.all(np.isfinite(w.log_evaluate(xs)))

    def test_beyond_window_raises(self):
        w = weight_tm3(1)
        with pytest.raises(TruncationError):
            w.log_evaluate(np.float64(1e40))


class TestDualRoute:
    @pytest.mark.parametrize("x", [0.1, 1.0, 10.0])
    def test_w4_contour_vs_convolution(self, x):
        direct = w4(1, x)
        conv = w4_via_convolution(1, x)
        assert conv == pytest.approx(direct, rel=1e-7)

    def test_w4_r2(self):
        direct = w4(2, 1.0)
        conv = w4_via_convolution(2, 1.0)
        assert conv == pytest.approx(direct, rel=1e-7)


class TestGenericW1:
    def test_half_integer_index(self):
        w = weight_w1(3.0)
        x = 2.0
        want = math.exp(-x ** (1.0 / 3.0)) / (3.0 * x ** (2.0 / 3.0))
        assert w.evaluate(np.float64(x)) == pytest.approx(want, rel=1e-14)

    def test_moments_are_gamma(self):
        # int x^n w1(q, x) dx = Gamma(qn + 1)
        import scipy.integrate
        q = 3.0
        for n in (0, 1, 2):
            val, _ = scipy.integrate.quad(
                lambda t, n=n: t ** (q * n) * math.exp(-t) * q / q,
                0, 200.0, limit=200)
            assert val == pytest.approx(math.gamma(q * n + 1.0), rel=1e-8)
