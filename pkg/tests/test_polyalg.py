from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcperm.errors import MCPermError
from mcperm.polyalg import (ALPHA, T, Polynomial, UnivariatePolynomial, Var,
                            apply_recurrence_operator, as_rational, binomial, coefficient_in,
                            diagonalize, evaluate_many, evaluate_signs, parse_polynomial,
                            partial_derivative, poly_gcd, restrict_line, substitute, x, y, z)

P = parse_polynomial


def V(v):
    return Polynomial.var(v)


# -- arithmetic ------------------------------------------------------------------


def test_additive_inverse_is_zero():
    assert (V(x(1)) + (-V(x(1)))).is_zero()


def test_like_terms_merge():
    assert str((V(y(2)) + 1) + V(y(2))) == "2*y2 + 1"


def test_binomial_expansion():
    assert str((V(z(1)) + 1) * (V(z(2)) + 1)) == "z1*z2 + z1 + z2 + 1"


def test_multiply_by_zero():
    assert (P("z1 + 3") * 0).is_zero()


def test_difference_of_squares():
    assert (V(z(1)) + V(x(1))) * (V(z(1)) - V(x(1))) == P("z1^2 - x1^2")


def test_rationals_are_normalized():
    p = P("2/4*z1 + 3/3")
    assert str(p) == "1/2*z1 + 1"
    assert as_rational(Fraction(6, 3)) == 2 and type(as_rational(Fraction(6, 3))) is int


# -- calculus and substitution ---------------------------------------------------------


def test_partial_of_product_of_distinct_variables():
    assert partial_derivative(P("z1*z2 + z1"), z(1)) == P("z2 + 1")


def test_partial_in_absent_variable():
    assert partial_derivative(V(z(1)), z(2)).is_zero()


def test_partial_of_descent_top_polynomial():
    # 1 + y2 + 3 y3 + y2 y3 from the six permutations of S_3
    assert partial_derivative(P("1 + y2 + 3*y3 + y2*y3"), y(3)) == P("3 + y2")


def test_substitute_root():
    a = Fraction(7, 3)
    assert substitute(V(z(1)) + a, {z(1): -a}).is_zero()


def test_substitute_polynomial_values():
    p = substitute(P("1 + y2 + 3*y3 + y2*y3"), {y(2): V(z(1)), y(3): V(z(1))})
    assert p == P("1 + 4*z1 + z1^2")


def test_diagonalize_collapses_monomials():
    assert diagonalize(P("z1*z2"), [z(1), z(2)], T) == P("t^2")


def test_restrict_line_examples():
    assert restrict_line(P("z1*z2"), [0, 0], [1, 1]) == UnivariatePolynomial([0, 0, 1])
    assert restrict_line(P("2*z1*z2 + z1 + z2"), [0, 0], [1, 1]) == \
        UnivariatePolynomial([0, 2, 2])
    assert restrict_line(Polynomial.constant(5), [], []) == UnivariatePolynomial([5])


def test_restrict_line_rejects_nonpositive_direction():
    with pytest.raises(MCPermError):
        restrict_line(P("z1*z2"), [0, 0], [1, 0])


def test_coefficient_extraction():
    p = P("x1 + t*y1")
    assert coefficient_in(p, T, 1) == V(y(1))
    assert coefficient_in(P("z1*z2 + z1"), z(1), 5).is_zero()


def test_recurrence_operator():
    assert apply_recurrence_operator(V(x(1)), 1, y(1), [x(1)]) == P("x1 + y1")
    assert apply_recurrence_operator(Polynomial.constant(4), 0, y(1), [x(1)]).is_zero()


# -- text format -----------------------------------------------------------------------


def test_canonical_text_and_names():
    assert str(P("z2 + z1 + 2*z1*z2")) == "2*z1*z2 + z1 + z2"
    assert str(V(T)) == "t" and str(V(ALPHA)) == "alpha"
    assert Var.parse("alpha") == ALPHA and Var.parse("y12") == y(12)


@pytest.mark.parametrize("bad", ["z1 +", "2**z1", "w3", "z", "(z1", "z1^-1", ""])
def test_parse_rejects_malformed(bad):
    with pytest.raises(MCPermError):
        P(bad)


variables = st.sampled_from([x(1), x(2), y(1), y(3), z(1), z(2), T, ALPHA])
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
monomials = st.lists(st.tuples(variables, st.integers(1, 3)), max_size=3)
polynomials = st.lists(st.tuples(rationals, monomials), max_size=6).map(
    lambda terms: sum((Polynomial.constant(c) * _mono(m) for c, m in terms),
                      Polynomial.constant(0)))


def _mono(pairs):
    out = Polynomial.constant(1)
    for v, e in pairs:
        out = out * V(v) ** e
    return out


@given(polynomials)
def test_text_round_trip(p):
    assert P(str(p)) == p


@given(polynomials, polynomials, polynomials)
def test_ring_laws(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p


@given(polynomials, polynomials, variables)
def test_leibniz_rule(p, q, v):
    assert partial_derivative(p * q, v) == partial_derivative(p, v) * q + p * partial_derivative(q, v)


@given(polynomials, st.lists(rationals, min_size=8, max_size=8))
def test_evaluation_is_a_homomorphism(p, vals):
    point = dict(zip([x(1), x(2), y(1), y(3), z(1), z(2), T, ALPHA], vals))
    q = p * p + p
    assert q.evaluate(point) == p.evaluate(point) ** 2 + p.evaluate(point)


# -- batch evaluation ----------------------------------------------------------------------


def test_evaluate_many_matches_pointwise():
    p = P("2*z1*z2 - 3/2*z1 + z2^2 - 7")
    pts = [(Fraction(a, 3), Fraction(b, 5)) for a, b in product(range(-4, 5), range(-3, 4))]
    got = evaluate_many(p, pts, [z(1), z(2)])
    assert got == [p.evaluate({z(1): a, z(2): b}) for a, b in pts]


def test_evaluate_signs_matches_exact_signs():
    rng = np.random.default_rng(5)
    p = P("2*z1*z2*z3 - z1*z2 + 3*z3 - 1/7")
    nums = rng.integers(-50, 51, size=(300, 3))
    dens = rng.integers(1, 17, size=(300, 3))
    signs = evaluate_signs(p, nums, dens, [z(1), z(2), z(3)])
    for row in range(300):
        val = p.evaluate({z(k + 1): Fraction(int(nums[row, k]), int(dens[row, k]))
                          for k in range(3)})
        assert signs[row] == (val > 0) - (val < 0)


# -- univariate ------------------------------------------------------------------------------


def test_univariate_division_and_gcd():
    a = UnivariatePolynomial.from_roots([1, 2, 2])
    b = UnivariatePolynomial.from_roots([2, 5])
    q, r = divmod(a, b)
    assert q * b + r == a
    assert poly_gcd(a, b) == UnivariatePolynomial.from_roots([2])
    # a = t^3 - 5t^2 + 8t - 4
    assert a.derivative() == UnivariatePolynomial([8, -10, 3])


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5),
       st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_gcd_divides_both(ra, rb):
    a, b = UnivariatePolynomial.from_roots(ra), UnivariatePolynomial.from_roots(rb)
    g = poly_gcd(a, b)
    assert (a % g).is_zero() and (b % g).is_zero()
    common = sum(min(ra.count(r), rb.count(r)) for r in set(ra))
    assert g.degree == common


def test_binomial():
    assert [binomial(5, k) for k in range(6)] == [1, 5, 10, 10, 5, 1]
    assert binomial(3, 5) == 0
