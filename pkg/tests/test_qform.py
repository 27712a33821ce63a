"""Kernel tests: canonical forms, substitution, residues, local series,
numeric evaluation, and the randomized property suites."""

import cmath
import math
import random
from fractions import Fraction as F

import pytest

from conftest import (circle_integral, pole_distance_bound, random_form,
                      random_rational)
from qdegree.qform import (AffineExponent as AE, DivisionByZeroError,
                           FactoredForm as FF, PoleAtSubstitutionError,
                           SumForm, local_series, residue)


class TestAffineExponent:
    def test_zero_coefficients_dropped(self):
        e = AE.make(1, {"z1": F(0), "z2": F(1, 2)})
        assert e.variables() == ("z2",)
        assert e.coeff("z1") == 0

    def test_structural_equality(self):
        assert AE.make(F(1, 2), {"z": 1}) == AE.make(F(1, 2), {"z": F(2, 2)})
        assert AE.make(0, {"z": 1}) != AE.make(0, {"z": -1})

    def test_substitute_affine_value(self):
        e = AE.make(1, {"z": 2, "w": 1})
        got = e.substitute("z", AE.make(F(3, 2), {"u": 1}))
        assert got == AE.make(4, {"u": 2, "w": 1})

    def test_natural_variable_order(self):
        e = AE.make(0, {"z10": 1, "z2": 1})
        assert e.variables() == ("z2", "z10")

    def test_render_terms_constant_first(self):
        assert AE.make(F(-3, 2), {"z1": 1, "z2": F(-1, 2)}).render() == "-3/2 + z1 - 1/2*z2"
        assert AE.make(0, {"z1": F(5, 3)}).render() == "5/3*z1"
        assert AE.make(0).render() == "0"


class TestCanonicalForm:
    def test_inverse_pair_cancels(self):
        z = AE.variable("z")
        assert (FF.binomial(z) * FF.binomial(z, -1)).is_one

    def test_orientation_rule(self):
        z = AE.variable("z")
        got = FF.binomial(-z)
        want = FF.q_power(-z).scale(-1) * FF.binomial(z)
        assert got == want
        assert got.render() == "-1 * q^(-z) * (1 - q^(z))^1"

    def test_multiplicity_addition(self):
        b = FF.q_power(3) * FF.binomial(AE.make(2, {"z": -1}))
        got = b * b
        assert got == FF.q_power(AE.make(10, {"z": -2})) * FF.binomial(AE.make(-2, {"z": 1}), 2)

    def test_constant_orientation_parity(self):
        # (1 - q^-1)^2 = q^-2 (1 - q)^2 with positive sign
        got = FF.binomial(-1, 2)
        assert got == FF.q_power(-2) * FF.binomial(1, 2)
        assert got.constant == 1

    def test_zero_exponent_numerator_is_zero(self):
        assert FF.build(1, 0, AE.constant(0), ((AE.constant(0), 1),)).is_zero

    def test_zero_exponent_denominator_raises(self):
        with pytest.raises(PoleAtSubstitutionError):
            FF.build(1, 0, AE.constant(0), ((AE.constant(0), -1),))

    def test_division_by_zero_form(self):
        with pytest.raises(DivisionByZeroError):
            FF.zero().inverse()

    def test_render_golden(self):
        p = FF.from_constant(F(-1, 2), -1) * FF.q_power(AE.make(F(3, 2), {"z1": 1}))
        p = p * FF.binomial(AE.make(-1, {"z1": 1}), -1) * FF.binomial(AE.variable("z1"), 2)
        assert p.render() == ("-1/2 * logq^-1 * q^(3/2 + z1) * "
                              "(1 - q^(-1 + z1))^-1 * (1 - q^(z1))^2")
        assert FF.one().render() == "1"
        assert FF.zero().render() == "0"


class TestSubstitute:
    def test_numerator_vanishes_to_zero(self):
        f = FF.binomial(AE.make(-2, {"z": 1}))
        assert f.substitute("z", 2).is_zero

    def test_denominator_vanishes_raises(self):
        f = FF.binomial(AE.make(-2, {"z": 1}), -1)
        with pytest.raises(PoleAtSubstitutionError):
            f.substitute("z", 2)

    @pytest.mark.parametrize("t,d,l", [(1, 3, 2), (2, 5, 3), (3, 6, 6), (2, 2, 2)])
    def test_nested_specialization_factor(self, t, d, l):
        # (1 - q^(t(d-l)/2 - z)) at z := t(d-l+2)/2 gives (1 - q^-t) for any level
        f = FF.binomial(AE.make(F(t * (d - l), 2), {"z": -1}))
        assert f.substitute("z", F(t * (d - l + 2), 2)) == FF.binomial(AE.constant(-t))

    def test_monomial_identity_case(self):
        f = FF.q_power(AE.make(0, {"z1": 1, "z2": 1}))
        assert f.substitute("z2", 0) == FF.q_power(AE.variable("z1"))

    def test_denominator_checked_before_numerator(self):
        f = FF.binomial(AE.variable("z")) * FF.binomial(AE.variable("z", 2), -1)
        with pytest.raises(PoleAtSubstitutionError):
            f.substitute("z", 0)


class TestResidue:
    def test_inverted_binomial_residue(self):
        # 1/(q^(z-c) - 1) = -1/(1 - q^(z-c)) has residue 1/logq at z = c
        c = F(3, 2)
        f = FF.binomial(AE.make(-c, {"z": 1}), -1).scale(-1)
        assert residue(f, "z", c).single_term() == FF.from_constant(1, -1)

    def test_sign_flip(self):
        c = F(3, 2)
        f = FF.binomial(AE.make(-c, {"z": 1}), -1)
        assert residue(f, "z", c).single_term() == FF.from_constant(-1, -1)

    def test_regular_point_gives_zero(self):
        f = FF.binomial(AE.variable("z")) * FF.binomial(AE.make(-1, {"z": 1}), -1)
        assert residue(f, "z", 0).is_zero

    def test_cancelling_zero_and_pole_is_regular(self):
        # (1 - q^z) / (1 - q^(2z)) has a removable point at z = 0
        f = FF.binomial(AE.variable("z")) * FF.binomial(AE.variable("z", 2), -1)
        assert residue(f, "z", 0).is_zero

    def test_slope_scaling(self):
        # residue of 1/(1 - q^(e z)) at 0 is -1/(e logq)
        for e in (F(2), F(1, 2), F(-3, 2)):
            f = FF.binomial(AE.variable("z", e), -1)
            assert residue(f, "z", 0).single_term() == FF.from_constant(-1 / e, -1)

    def test_double_pole(self):
        # 1/(1 - q^z)^2 = 1/(logq z)^2 (1 + logq z + ...) ; residue -> 1/logq ... check numerically
        f = FF.binomial(AE.variable("z"), -2)
        sym = residue(f, "z", 0)
        num = circle_integral(f, 2.0, "z", 0.0, 0.3)
        assert abs(sym.eval_numeric(2.0) - num) < 1e-10

    def test_triple_pole_with_zero(self):
        f = FF.binomial(AE.variable("z", 1, -1), -3) * FF.binomial(AE.variable("z", 2, -2))
        sym = residue(f, "z", 1)
        num = circle_integral(f, 2.0, "z", 1.0, 0.25)
        assert abs(sym.eval_numeric(2.0) - num) < 1e-9

    def test_residue_in_other_variables_stays_exact(self):
        # pole in z with a spectator variable w in the regular part
        f = (FF.binomial(AE.make(0, {"z": 1, "w": 1}))
             * FF.binomial(AE.make(-1, {"z": 1}), -1))
        got = residue(f, "z", 1).single_term()
        want = FF.binomial(AE.make(1, {"w": 1})) * FF.from_constant(-1, -1)
        assert got == want

    def test_log_grade_decrement(self):
        f = FF.from_constant(3, 2) * FF.binomial(AE.variable("z"), -1)
        assert residue(f, "z", 0).single_term().log_grade == 1


class TestLocalSeries:
    def test_series_orders_of_simple_pole(self):
        f = FF.binomial(AE.variable("z"), -1)
        s = local_series(f, "z", 0, 2)
        assert s.min_order == -1
        lnq = math.log(2.0)
        assert abs(s.coefficient(-1).eval_numeric(2.0) + 1 / lnq) < 1e-12

    def test_series_numeric_laurent_coefficients(self):
        f = (FF.binomial(AE.variable("z", 1, F(-1, 2)), -2)
             * FF.binomial(AE.make(1, {"z": 1})) * FF.q_power(AE.variable("z", F(1, 3))))
        s = local_series(f, "z", F(1, 2), 2)
        q = 2.0
        center, radius = 0.5, 0.3
        for n in range(s.min_order, 3):
            total = 0j
            nodes = 512
            for k in range(nodes):
                w = cmath.exp(2j * math.pi * k / nodes)
                zv = center + radius * w
                total += f.eval_numeric(q, {"z": zv}) * (radius * w) ** (-n)
            num = total / nodes
            assert abs(s.coefficient(n).eval_numeric(q) - num) < 1e-8 * max(1, abs(num))

    def test_truncation_error(self):
        s = local_series(FF.binomial(AE.variable("z"), -1), "z", 0, 1)
        with pytest.raises(ValueError):
            s.coefficient(2)


class TestEvalNumeric:
    def test_basic_values(self):
        assert FF.binomial(AE.variable("z")).eval_numeric(2.0, {"z": 1}) == pytest.approx(-1.0)
        assert FF.from_constant(1, -1).eval_numeric(math.e) == pytest.approx(1.0)

    def test_imaginary_axis_value(self):
        z = 1j * math.pi / math.log(2)
        f = FF.binomial(AE.variable("z", -1)) * FF.binomial(AE.variable("z"))
        assert f.eval_numeric(2.0, {"z": z}) == pytest.approx(4.0)

    def test_division_by_zero_guard(self):
        f = FF.binomial(AE.variable("z"), -1)
        with pytest.raises(DivisionByZeroError):
            f.eval_numeric(2.0, {"z": 0.0})

    def test_unassigned_variable(self):
        with pytest.raises(ValueError):
            FF.q_power(AE.variable("z")).eval_numeric(2.0, {})

    def test_exact_rational_evaluation(self):
        f = FF.q_power(3) * FF.binomial(1) * FF.binomial(2, -1)
        assert f.eval_exact(F(2)) == F(8, 3)
        with pytest.raises(ValueError):
            FF.q_power(F(1, 2)).eval_exact(F(2))


# ---------------------------------------------------------------------------
# Randomized property suites (also exercised by the acceptance gate)
# ---------------------------------------------------------------------------

def canonical_uniqueness_cases(n_cases: int = 100) -> int:
    """Products built in different orders / with cancelling factors agree."""
    rng = random.Random(2024)
    checked = 0
    for _ in range(n_cases):
        a = random_form(rng, ("z", "w"))
        b = random_form(rng, ("z", "w"))
        c = random_form(rng, ("z", "w"))
        direct = a * b
        detoured = ((a * c) * b) / c
        assert direct == detoured
        assert a * b == b * a
        assert (direct / a) == b
        checked += 1
    return checked


def residue_shift_covariance_cases(n_cases: int = 100) -> int:
    """residue(f, z, r) == residue(f(z + r), z, 0)."""
    rng = random.Random(77)
    checked = 0
    while checked < n_cases:
        f = random_form(rng, ("z",))
        r = random_rational(rng)
        shifted = f.substitute("z", AE.variable("z", 1, r))
        lhs = residue(f, "z", r)
        rhs = residue(shifted, "z", 0)
        assert sorted(t.render() for t in lhs.terms) == sorted(t.render() for t in rhs.terms)
        checked += 1
    return checked


def residue_linearity_cases(n_cases: int = 100) -> int:
    rng = random.Random(91)
    checked = 0
    while checked < n_cases:
        f = random_form(rng, ("z",))
        c = random_rational(rng, allow_zero=False)
        lhs = residue(f.scale(c), "z", 0)
        rhs = residue(f, "z", 0).scale(c)
        assert sorted(t.render() for t in lhs.terms) == sorted(t.render() for t in rhs.terms)
        checked += 1
    return checked


def symbolic_numeric_residue_cases(n_cases: int = 100, tol: float = 1e-8) -> int:
    """eval of the symbolic residue matches a small-circle contour integral."""
    rng = random.Random(5150)
    q = 2.0
    checked = 0
    while checked < n_cases:
        point = F(rng.randint(-2, 2), rng.randint(1, 2))
        slope = F(rng.choice((1, 2, -1, 3)))
        pole = FF.binomial(AE.make(-point * slope, {"z": slope}), -1)
        f = pole * random_form(rng, ("z",), n_binomials=2)
        if f.pole_order("z", point) < 1:
            continue
        radius = 0.5 * pole_distance_bound(f, "z", point, q)
        if radius <= 1e-3:
            continue
        sym = residue(f, "z", point).eval_numeric(q)
        num = circle_integral(f, q, "z", complex(float(point)), radius, nodes=512)
        assert abs(sym - num) <= tol * max(1.0, abs(num))
        checked += 1
    return checked


def log_grade_cases(n_cases: int = 100) -> int:
    """Grades add under products; a simple-pole residue decrements by one."""
    rng = random.Random(13)
    checked = 0
    while checked < n_cases:
        a = random_form(rng, ("z",))
        b = random_form(rng, ("z",))
        assert (a * b).log_grade == a.log_grade + b.log_grade
        pole = FF.binomial(AE.variable("z"), -1)
        g = pole * FF.q_power(random_rational(rng))
        if g.pole_order("z", F(0)) == 1:
            res = residue(g, "z", 0).single_term()
            assert res.log_grade == g.log_grade - 1
        checked += 1
    return checked


class TestPropertySuites:
    def test_canonical_uniqueness(self):
        assert canonical_uniqueness_cases() >= 100

    def test_residue_shift_covariance(self):
        assert residue_shift_covariance_cases() >= 100

    def test_residue_linearity(self):
        assert residue_linearity_cases() >= 100

    def test_symbolic_numeric_residue(self):
        assert symbolic_numeric_residue_cases() >= 100

    def test_log_grade_bookkeeping(self):
        assert log_grade_cases() >= 100
