"""Tests for exact truncated series arithmetic and the identity registry.

Expected coefficient values come from independent small computations
(convolutions by hand, recurrences, brute-force class counts) and are
frozen; involution-style checks (square the square root, multiply by
the reciprocal) guard the nontrivial operations.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permlab.series import (
    ENUM_DEPTH_LIMIT,
    IDENTITIES,
    MSeries,
    NonContractionError,
    SeriesError,
    TOTAL_GRADED,
    X_GRADED,
    arith,
    check_identity,
    fixed_point_solve,
    identity_ids,
    named_series,
    series_names,
)

SCHRODER = [1, 1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098]
LITTLE = [1, 1, 3, 11, 45, 197, 903, 4279, 20793, 103049, 518859]
CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]
A033321 = [1, 1, 2, 6, 21, 79, 311, 1265, 5275, 22431, 96900]


def x(order, grading=X_GRADED):
    return MSeries.var("x", order, grading)


def t(order, grading=X_GRADED):
    return MSeries.var("t", order, grading)


def geometric(order):
    return MSeries({(n, 0, 0): 1 for n in range(order + 1)}, order)


class TestArithmetic:
    def test_geometric_identity(self):
        s = (1 - x(20)) * geometric(20)
        assert s == MSeries.const(1, 20)

    def test_additive_identity(self):
        s = named_series("catalan", 8)
        assert arith(s, MSeries({}, 8), "add") == s

    def test_catalan_square_coefficient(self):
        c = named_series("catalan", 4)
        sq = arith(c, c, "mul")
        # [x^2] C^2 = 1*2 + 1*1 + 2*1
        assert sq.coefficient(x=2) == 5

    def test_order_is_min_of_operands(self):
        a = MSeries.const(1, 10)
        b = MSeries.const(1, 4)
        assert (a + b).order == 4
        assert (a * b).order == 4

    def test_grading_mismatch_rejected(self):
        with pytest.raises(SeriesError, match="grading"):
            x(5) + x(5, TOTAL_GRADED)

    def test_truncation_respects_grading(self):
        s = MSeries({(2, 0, 3): 1}, 4, TOTAL_GRADED)
        assert s.is_zero()  # total degree 5 > 4
        s2 = MSeries({(2, 0, 3): 1}, 4, X_GRADED)
        assert not s2.is_zero()

    def test_zero_coefficients_dropped(self):
        s = x(5) - x(5)
        assert s.coeffs == {}

    def test_negative_order_rejected(self):
        with pytest.raises(SeriesError, match="order must be"):
            MSeries({}, -1)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=5),
           st.lists(st.integers(-5, 5), min_size=1, max_size=5),
           st.lists(st.integers(-5, 5), min_size=1, max_size=5))
    def test_ring_axioms_on_truncations(self, a, b, c):
        def mk(coeffs):
            return MSeries({(i, 0, 0): v for i, v in enumerate(coeffs)}, 6)

        sa, sb, sc = mk(a), mk(b), mk(c)
        assert sa + sb == sb + sa
        assert sa * sb == sb * sa
        assert (sa * sb) * sc == sa * (sb * sc)
        assert sa * (sb + sc) == sa * sb + sa * sc


class TestInverseRoundTrips:
    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(-4, 4), min_size=0, max_size=5))
    def test_reciprocal_then_multiply(self, tail):
        s = MSeries({(i + 1, 0, 0): v for i, v in enumerate(tail)}, 8) + 1
        assert s * s.reciprocal() == MSeries.const(1, 8)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(-4, 4), min_size=0, max_size=5))
    def test_sqrt_of_square(self, tail):
        s = MSeries({(i + 1, 0, 0): v for i, v in enumerate(tail)}, 8) + 1
        assert (s * s).sqrt1() == s


class TestReciprocal:
    def test_reciprocal_of_one_minus_tx(self):
        inv = (1 - t(6) * x(6)).reciprocal()
        assert inv.coeffs == {(n, n, 0): 1 for n in range(7)}

    def test_reciprocal_of_scalar(self):
        assert MSeries.const(2, 5).reciprocal() == MSeries.const(Fraction(1, 2), 5)

    def test_fibonacci(self):
        inv = (1 - x(9) - x(9) * x(9)).reciprocal()
        assert [int(c) for c in inv.x_coefficients()] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]

    def test_reciprocal_verifies_by_multiplication(self):
        s = 1 - 3 * x(12) + x(12) ** 3
        assert (s * s.reciprocal()) == MSeries.const(1, 12)

    def test_zero_constant_term_rejected(self):
        with pytest.raises(SeriesError, match="not invertible"):
            x(5).reciprocal()

    def test_polynomial_grade_zero_rejected(self):
        with pytest.raises(SeriesError, match="constant"):
            (1 - t(5)).reciprocal()


class TestSqrt:
    def test_involution_kernel_radicand(self):
        r = 1 - 6 * x(20) + x(20) ** 2
        assert r.sqrt1() * r.sqrt1() == r

    def test_sqrt_of_one(self):
        assert MSeries.const(1, 8).sqrt1() == MSeries.const(1, 8)

    def test_bivariate_radicand_involution(self):
        g = TOTAL_GRADED
        xs, us = x(16, g), MSeries.var("u", 16, g)
        p = xs * xs + xs + 1
        q = xs * xs + 3 * xs + 1
        r = 1 + us * us * p * p - 2 * us * q
        assert r.sqrt1() * r.sqrt1() == r

    def test_constant_term_must_be_one(self):
        with pytest.raises(SeriesError, match="constant term"):
            (2 + x(5)).sqrt1()


class TestSubstitute:
    def test_catalan_layered_x2_coefficient(self):
        # C(x/(1-tx)) = 1 + x + (t+2)x^2 + ...
        cl = named_series("catalan-layered", 4)
        assert cl.coefficient(x=2, t=1) == 1
        assert cl.coefficient(x=2) == 2

    def test_identity_binding_is_noop(self):
        s = named_series("lead-4132", 6)
        assert s.substitute({"x": x(6), "t": t(6)}) == s

    def test_positive_valuation_enforced(self):
        with pytest.raises(SeriesError, match="zero constant term"):
            named_series("catalan", 5).substitute({"x": 1 + x(5)})

    def test_t_eval_at_one_allowed_in_x_grading(self):
        y = named_series("lead-4132", 10)
        at_one = y.substitute({"t": 1})
        assert [int(c) for c in at_one.x_coefficients()] == A033321[:11]

    def test_y_at_one_matches_radical_form(self):
        y = named_series("lead-4132", 12).substitute({"t": 1})
        assert y == named_series("a033321", 12)


class TestDivision:
    def test_divide_one_minus_t(self):
        # (1 - t^3) / (1 - t) = 1 + t + t^2
        s = 1 - t(5) ** 3
        q = s.divide_one_minus("t")
        assert q.coeffs == {(0, 0, 0): 1, (0, 1, 0): 1, (0, 2, 0): 1}

    def test_inexact_division_rejected(self):
        with pytest.raises(SeriesError, match="not divisible"):
            (1 + t(5)).divide_one_minus("t")

    def test_shift_down(self):
        s = x(6) ** 2 + x(6) ** 3
        assert s.shift_down("x", 2).coeffs == {(0, 0, 0): 1, (1, 0, 0): 1}
        with pytest.raises(SeriesError, match="not divisible"):
            (1 + x(5)).shift_down("x", 1)


class TestFixedPoints:
    def test_catalan(self):
        y = fixed_point_solve("catalan-fixed", 10)
        assert [int(c) for c in y.x_coefficients()] == CATALAN

    def test_catalan_closed_form_agrees(self):
        assert named_series("catalan-closed", 12) == named_series("catalan", 12)

    def test_joint_system_lowest_term(self):
        c3 = named_series("stat132-ending-max", 10)
        assert min(c3.terms())[0] == (2, 1, 1)  # u*t*x^2 from the single 12

    def test_gf_263514_is_schroder(self):
        f = fixed_point_solve("gf-263514-fixed", 10)
        assert [int(c) for c in (1 + f).x_coefficients()] == SCHRODER

    def test_unknown_equation(self):
        with pytest.raises(SeriesError, match="unknown equation"):
            fixed_point_solve("no-such", 5)

    def test_non_contraction_detected(self):
        from permlab.series import EQUATIONS, _Equation

        EQUATIONS["bad-equation"] = _Equation(
            ("bad",),
            lambda order: (MSeries.const(0, order),),
            lambda y: (1 - y,),
        )
        try:
            with pytest.raises(NonContractionError):
                fixed_point_solve("bad-equation", 6)
        finally:
            del EQUATIONS["bad-equation"]


class TestNamedSeries:
    def test_large_schroder(self):
        s = named_series("large-schroder", 10)
        assert [int(c) for c in s.x_coefficients()] == SCHRODER

    def test_little_schroder(self):
        s = named_series("little-schroder", 10)
        assert [int(c) for c in s.x_coefficients()] == LITTLE

    def test_cubic_root_construction_agrees(self):
        assert named_series("schroder-cubic-root", 14) == named_series(
            "large-schroder", 14
        )

    def test_kernel_root_is_little_schroder(self):
        assert named_series("kernel-root", 10) == named_series("little-schroder", 10)

    def test_simples_series_lowest_term(self):
        s = named_series("simples-gf-closed", 8)
        assert min(s.terms(), key=lambda kv: (kv[0][0] + kv[0][2], kv[0]))[0] == (2, 0, 2)

    def test_enum_backed_depth_guard(self):
        with pytest.raises(SeriesError, match="depth limit"):
            named_series("lead-enum-254613", ENUM_DEPTH_LIMIT + 1)

    def test_unknown_name(self):
        with pytest.raises(SeriesError, match="unknown series"):
            named_series("no-such", 5)

    def test_registry_names_all_buildable_at_small_orders(self):
        for order in (0, 5):
            for name in series_names():
                assert named_series(name, order).order == order

    def test_pretty_output_is_sorted_by_grade(self):
        s = named_series("stat132-ending-max", 4)
        lines = s.pretty().splitlines()
        assert lines[0] == "1 * x^2 t^1 u^1"


class TestIdentities:
    def test_all_identities_pass_at_low_order(self):
        # full default-order runs live in the acceptance suite
        for iid in identity_ids():
            order = 6 if IDENTITIES[iid].enum_backed else 8
            res = check_identity(iid, order)
            assert res.passed, (iid, res.first_mismatch)

    def test_unknown_identity(self):
        with pytest.raises(SeriesError, match="unknown identity"):
            check_identity("no-such")

    def test_failure_reports_first_mismatch(self):
        res = check_identity("schroder-cubic", 8, corrupt=True)
        assert res.status == "fail"
        key, lhs, rhs = res.first_mismatch
        assert key == (0, 0, 0)
        assert lhs - rhs == -1  # constant 2 corrupted to 1

    def test_json_shape(self):
        res = check_identity("schroder-cubic", 8)
        d = res.to_json_dict()
        assert d == {"id": "schroder-cubic", "order": 8, "status": "pass",
                     "firstMismatch": None}
