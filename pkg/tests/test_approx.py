import math

import numpy as np
import pytest

from oracles import li_quadrature
from primedensity import (ApproxMethod, DomainError, FitParams, LEGENDRE_B,
                          PUBLISHED_FIT, PoleError, conjecture_pi, estimate,
                          f_hat, gauss_ratio, legendre, li, riemann_r_gram,
                          riemann_r_mobius, zeta_int)
from primedensity.approx import LI_ASYMPTOTIC_CROSSOVER, _li_asymptotic, _li_convergent
from primedensity.tables import round_half_away_from_zero


class TestGaussRatio:
    def test_thousand(self):
        value = gauss_ratio(1000.0)
        assert value == pytest.approx(144.76482730108395, rel=1e-15)
        assert round_half_away_from_zero(value) == 145

    def test_fixed_point_at_e(self):
        assert gauss_ratio(math.e) == pytest.approx(math.e, rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            gauss_ratio(1.0)
        with pytest.raises(DomainError):
            gauss_ratio(0.5)


class TestLegendre:
    def test_ten(self):
        value = legendre(10.0)
        assert value == pytest.approx(20.043088913387926, rel=1e-15)
        assert round_half_away_from_zero(value) == 20

    def test_hundred(self):
        # the printed powers table carries 37 here; the formula gives 35.695
        assert round_half_away_from_zero(legendre(100.0)) == 36

    def test_zero_shift_reduces_to_gauss(self):
        for x in (2.5, 10.0, 1234.5):
            assert legendre(x, 0.0) == gauss_ratio(x)

    def test_pole(self):
        with pytest.raises(PoleError):
            legendre(math.exp(LEGENDRE_B), LEGENDRE_B)

    def test_domain(self):
        with pytest.raises(DomainError):
            legendre(0.0)


class TestLogIntegral:
    def test_two(self):
        assert li(2.0) == pytest.approx(1.0451637801174927, rel=1e-14)

    def test_printed_rows(self):
        assert round_half_away_from_zero(li(1000.0)) == 178
        assert round_half_away_from_zero(li(100.0)) == 30

    def test_against_quadrature(self):
        for x in (2.0, 10.0, 1e3, 1e6):
            oracle = li_quadrature(x)
            assert abs(li(x) - oracle) / oracle < 1e-9, x

    def test_domain(self):
        with pytest.raises(DomainError):
            li(1.0)
        with pytest.raises(DomainError):
            li(0.3)

    def test_route_crossover_consistency(self):
        # both evaluation routes agree to 1e-12 around and above the switch
        for x in np.logspace(13, 18, 11):
            a = _li_convergent(float(x))
            b = _li_asymptotic(float(x))
            assert abs(a - b) / b < 1e-12, x

    def test_asymptotic_used_above_crossover(self):
        x = LI_ASYMPTOTIC_CROSSOVER * 10
        assert li(x) == _li_asymptotic(x)


class TestZeta:
    def test_basel(self):
        assert zeta_int(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-14)

    def test_against_scipy(self):
        scipy_zeta = pytest.importorskip("scipy.special").zeta
        for s in range(2, 80):
            assert zeta_int(s) == pytest.approx(float(scipy_zeta(s)), rel=1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            zeta_int(1)


class TestRiemannRGram:
    def test_million(self):
        value = riemann_r_gram(1e6)
        assert round_half_away_from_zero(value) == 78527
        assert value == pytest.approx(78527.39942912768, rel=1e-12)

    def test_two_positive_finite(self):
        # direct high-precision evaluation of the series gives 1.54101
        assert riemann_r_gram(2.0) == pytest.approx(1.5410090161871286, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            riemann_r_gram(1.5)


class TestRiemannRMobius:
    def test_single_term_is_li(self):
        for x in (10.0, 1e4):
            assert riemann_r_mobius(x, n_max=1) == li(x)

    def test_printed_rows(self):
        assert round_half_away_from_zero(riemann_r_mobius(100.0)) == 26
        assert round_half_away_from_zero(riemann_r_mobius(1e10)) == 455050683

    def test_tracks_gram_with_shrinking_gap(self):
        # the truncated tail keeps the two constructions apart at small x;
        # measured gaps shrink from ~6e-3 at 10 to ~4e-11 at 1e10
        ladder = {1: 1e-2, 2: 1e-3, 3: 1e-4, 4: 1e-4, 5: 1e-5,
                  6: 1e-6, 7: 1e-6, 8: 1e-6, 9: 1e-6, 10: 1e-6}
        for k, bound in ladder.items():
            x = 10.0 ** k
            gap = abs(riemann_r_mobius(x) - riemann_r_gram(x)) / riemann_r_gram(x)
            assert gap < bound, (k, gap)

    def test_domain(self):
        with pytest.raises(DomainError):
            riemann_r_mobius(1.9)
        with pytest.raises(DomainError):
            riemann_r_mobius(100.0, n_max=0)


class TestFHat:
    def test_value_at_three(self):
        assert f_hat(3.0) == pytest.approx(0.9414768105663438, rel=1e-14)

    def test_value_at_one(self):
        # close to the corrected correction value at x=10, far from the
        # printed positive one
        value = f_hat(1.0)
        assert value == pytest.approx(-0.20480124910290542, rel=1e-14)
        assert abs(value - (-0.1974149070059541)) < 0.01
        assert abs(value - 0.19741491) > 0.39

    def test_limit_is_additive_constant(self):
        assert abs(f_hat(1e9) - PUBLISHED_FIT.d) < 1e-8

    def test_transient_below_millionth_from_y12(self):
        # the decaying-exponential transient is under 1e-3 from y=12 on;
        # the a/y tail still contributes ~0.058 there
        for y in (12.0, 15.0, 22.0):
            residual = f_hat(y) - PUBLISHED_FIT.d - PUBLISHED_FIT.a / y
            assert abs(residual) < 1e-3, y

    def test_strictly_increasing_on_small_y(self):
        ys = np.linspace(1.0, 5.0, 400)
        vals = [f_hat(float(y)) for y in ys]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            f_hat(0.0)
        with pytest.raises(DomainError):
            f_hat(-1.0)


class TestConjecturePi:
    def test_thousand(self):
        value = conjecture_pi(1000.0)
        assert value == pytest.approx(167.60867017752975, rel=1e-14)
        assert round_half_away_from_zero(value) == 168

    def test_ten_billion(self):
        # the printed cell is 455041196; the formula value rounds one above
        value = conjecture_pi(1e10)
        assert value == pytest.approx(455041196.71268046, rel=1e-14)
        assert round_half_away_from_zero(value) == 455041197

    def test_algebraic_inverse(self):
        for x in (10.0, 1234.0, 1e8):
            denom = math.log(x) - f_hat(math.log10(x))
            assert conjecture_pi(x) * denom == pytest.approx(x, rel=1e-14)

    def test_strictly_increasing(self):
        xs = np.logspace(1, 22, 1000)
        vals = [conjecture_pi(float(x)) for x in xs]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_consistent_with_gauss_at_infinity(self):
        ratio = conjecture_pi(1e22) / gauss_ratio(1e22)
        assert 0.95 < ratio < 1.05

    def test_pole(self):
        with pytest.raises(PoleError):
            conjecture_pi(2.0, FitParams(a=0.7, b=-5.0, c=-1.0, d=100.0))

    def test_domain(self):
        with pytest.raises(DomainError):
            conjecture_pi(1.5)


class TestDispatch:
    def test_all_methods(self):
        x = 1000.0
        assert estimate(x, ApproxMethod.GAUSS) == gauss_ratio(x)
        assert estimate(x, "legendre") == legendre(x)
        assert estimate(x, "li") == li(x)
        assert estimate(x, "riemann-r") == riemann_r_mobius(x)
        assert estimate(x, "conjecture") == conjecture_pi(x)

    def test_custom_params(self):
        custom = FitParams(0.7, -5.0, -1.0, 1.0)
        assert estimate(100.0, "conjecture", fit=custom) == conjecture_pi(100.0, custom)
        assert estimate(100.0, "legendre", legendre_b=1.0) == legendre(100.0, 1.0)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            estimate(10.0, "secant")
