import math

import numpy as np
import pytest

from fuzzcalc.core import (AlphaGrid, FuzzyNumber, fn_arith, fn_crisp,
                           fn_distance, fn_from_triangular)
from fuzzcalc.errors import DegenerateGrid, RangeError, SwitchingPointError
from fuzzcalc.fractional import gamma_fn, power_rule_oracle
from fuzzcalc.fuzzyfun import (FORM_I, FORM_II, FuzzyFunction,
                               fuzzy_frac_derivative, fuzzy_riemann_integral,
                               fuzzy_rl_integral, gh_derivative_series)

GRID = AlphaGrid.uniform(20)
C = fn_from_triangular(1, 2, 3, GRID)


def scaled(u, s):
    return fn_arith(u, None, "scale", scalar=s)


def sample(fn, a, b, m):
    return FuzzyFunction.from_callable(fn, a, b, m)


class TestFuzzyFunction:
    def test_times_and_value(self):
        F = sample(lambda t: scaled(C, 1 + t), 0, 1, 10)
        assert len(F) == 11
        assert np.allclose(F.times, np.linspace(0, 1, 11))
        assert fn_distance(F.value(0), C) < 1e-12

    def test_needs_two_samples(self):
        with pytest.raises(DegenerateGrid):
            FuzzyFunction(0, 0.1, [C])

    def test_grids_must_agree(self):
        other = fn_from_triangular(1, 2, 3, AlphaGrid.uniform(5))
        with pytest.raises(DegenerateGrid):
            FuzzyFunction(0, 0.1, [C, other])

    def test_index_check(self):
        F = sample(lambda t: C, 0, 1, 10)
        with pytest.raises(RangeError):
            F.value(F.check_index(11))


class TestGhDerivative:
    def test_expanding_is_form_i(self):
        F = sample(lambda t: scaled(C, t), 0, 1, 100)
        deriv, info = gh_derivative_series(F)
        assert all(f == FORM_I for f in info.forms[1:])
        assert info.switching_points == ()
        for k in (0, 50, 100):
            assert fn_distance(deriv.value(k), C) < 1e-9

    def test_contracting_is_form_ii(self):
        F = sample(lambda t: scaled(C, 1 - t), 0, 1, 100)
        deriv, info = gh_derivative_series(F)
        assert all(f == FORM_II for f in info.forms[1:])
        assert fn_distance(deriv.value(50), scaled(C, -1)) < 1e-9

    def test_crisp_defaults_to_form_i(self):
        F = sample(lambda t: fn_crisp(math.sin(t), GRID), 0, 1, 100)
        deriv, info = gh_derivative_series(F)
        assert all(f == FORM_I for f in info.forms)
        got = deriv.value(50)
        assert got.lower[0] == pytest.approx(math.cos(0.5), rel=1e-4)

    def test_switching_point_located(self):
        # width shrinks until t = 1 then grows again
        h = 0.01
        F = sample(lambda t: scaled(C, (1 - t) ** 2), 0, 2, 200)
        deriv, info = gh_derivative_series(F)
        assert len(info.switching_points) == 1
        assert abs(info.switching_points[0] - 1.0) <= 1.5 * h
        assert FORM_II in info.forms and FORM_I in info.forms

    def test_needs_three_samples(self):
        F = FuzzyFunction(0, 0.5, [C, C])
        with pytest.raises(DegenerateGrid):
            gh_derivative_series(F)

    def test_newton_leibniz(self):
        # integral of the derivative recovers F(b) when F(a) is crisp zero
        F = sample(lambda t: scaled(C, t * t), 0, 1, 100)
        deriv, _ = gh_derivative_series(F)
        total = fuzzy_riemann_integral(deriv, 0, 100)
        assert fn_distance(total, F.value(100)) < 1e-9


class TestRiemannIntegral:
    def test_constant(self):
        F = sample(lambda t: C, 0, 1, 50)
        assert fn_distance(fuzzy_riemann_integral(F, 0, 50), C) < 1e-12

    def test_empty_range_is_zero(self):
        F = sample(lambda t: C, 0, 1, 50)
        z = fuzzy_riemann_integral(F, 7, 7)
        assert z.is_crisp and z.lower[0] == 0.0

    def test_reversed_range(self):
        F = sample(lambda t: C, 0, 1, 50)
        with pytest.raises(RangeError):
            fuzzy_riemann_integral(F, 5, 2)

    def test_additive_over_subdivision(self):
        F = sample(lambda t: scaled(C, 1 + t), 0, 1, 60)
        whole = fuzzy_riemann_integral(F, 0, 60)
        left = fuzzy_riemann_integral(F, 0, 30)
        right = fuzzy_riemann_integral(F, 30, 60)
        assert fn_distance(whole, fn_arith(left, right, "add")) < 1e-12


class TestFractionalIntegral:
    def test_constant_power_law(self):
        # I^q of a constant c is c t^q / Gamma(q+1)
        F = sample(lambda t: C, 0, 1, 400)
        q = 0.5
        got = fuzzy_rl_integral(F, q, 400)
        want = scaled(C, 1.0 / gamma_fn(q + 1.0))
        assert fn_distance(got, want) < 1e-5

    def test_order_one_is_riemann(self):
        F = sample(lambda t: scaled(C, 1 + math.sin(t)), 0, 1, 100)
        a = fuzzy_rl_integral(F, 1.0, 100)
        b = fuzzy_riemann_integral(F, 0, 100)
        assert fn_distance(a, b) < 1e-10

    def test_order_range(self):
        F = sample(lambda t: C, 0, 1, 10)
        with pytest.raises(RangeError):
            fuzzy_rl_integral(F, 1.5, 10)


class TestFractionalDerivative:
    def test_linear_expanding(self):
        # D^q (c t) = c t^(1-q) / Gamma(2-q); at t = 1 this is c / Gamma(1.5)
        F = sample(lambda t: scaled(C, t), 0, 1, 400)
        got, form = fuzzy_frac_derivative(F, 0.5, 400)
        assert form == FORM_I
        want = scaled(C, 1.0 / gamma_fn(1.5))
        assert fn_distance(got, want) < 1e-4

    def test_crisp_matches_scalar_calculus(self):
        F = sample(lambda t: fn_crisp(t * t, GRID), 0, 1, 400)
        got, _ = fuzzy_frac_derivative(F, 0.5, 400)
        want = power_rule_oracle(2.0, 0.5, 0.0, 1.0, "derivative")
        assert got.lower[0] == pytest.approx(want, rel=1e-4)
        assert got.upper[0] == pytest.approx(want, rel=1e-4)

    def test_form_inherited_from_gh_derivative(self):
        F = sample(lambda t: scaled(C, 1 - t), 0, 0.9, 200)
        got, form = fuzzy_frac_derivative(F, 0.5, 200)
        assert form == FORM_II

    def test_switching_point_blocks(self):
        F = sample(lambda t: scaled(C, (1 - t) ** 2), 0, 2, 200)
        with pytest.raises(SwitchingPointError):
            fuzzy_frac_derivative(F, 0.5, 200)

    def test_at_origin_is_zero(self):
        F = sample(lambda t: scaled(C, t), 0, 1, 100)
        got, _ = fuzzy_frac_derivative(F, 0.5, 0)
        assert got.is_crisp and got.lower[0] == 0.0

    def test_order_range(self):
        F = sample(lambda t: scaled(C, t), 0, 1, 100)
        with pytest.raises(RangeError):
            fuzzy_frac_derivative(F, 1.0, 100)
