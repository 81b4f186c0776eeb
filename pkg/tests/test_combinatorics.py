from collections import Counter
from itertools import permutations
from math import factorial, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcperm import combinatorics as cb
from mcperm.errors import CapExceeded, MCPermError
from mcperm.polyalg import ALPHA, T, Polynomial, UnivariatePolynomial, parse_polynomial, y
from mcperm.stability import real_rooted

P = parse_polynomial


def des(w):
    return sum(w[i] > w[i + 1] for i in range(len(w) - 1))


def exc(w):
    return sum(w[i] > i + 1 for i in range(len(w)))


def perms(n):
    return permutations(range(1, n + 1))


# -- statistics -----------------------------------------------------------------------


def test_stats_of_worked_example():
    s = cb.stats(cb.parse_permutation("341526978"))
    assert s.cyc == 4
    assert cb.cycles((3, 4, 1, 5, 2, 6, 9, 7, 8)) == [(1, 3), (2, 4, 5), (6,), (7, 9, 8)]


@pytest.mark.parametrize("n", range(1, 7))
def test_identity_stats(n):
    s = cb.stats(tuple(range(1, n + 1)))
    assert (s.exc, s.des, s.cyc) == (0, 0, n)


def test_transposition_stats():
    s = cb.stats((2, 1))
    assert (s.exc, s.des, s.descent_tops) == (1, 1, frozenset({2}))


@pytest.mark.parametrize("bad", ["1123", "0,1", "abc", "1,2,4", "", " "])
def test_parse_rejects_non_permutations(bad):
    with pytest.raises(MCPermError):
        cb.parse_permutation(bad)


def test_parse_and_format():
    assert cb.parse_permutation("3,1,2") == (3, 1, 2)
    assert cb.parse_permutation("10,1,2,3,4,5,6,7,8,9")[0] == 10
    assert cb.format_permutation((3, 1, 2)) == "312"
    assert cb.format_permutation((10, 1, 2, 3, 4, 5, 6, 7, 8, 9)) == "10,1,2,3,4,5,6,7,8,9"


# -- maps -------------------------------------------------------------------------------


def test_linear_map_examples():
    assert cb.riordan_linear_map(cb.parse_permutation("341526978")) == \
        cb.parse_permutation("314526987")
    assert cb.riordan_linear_map((1, 2, 3, 4)) == (1, 2, 3, 4)


def test_linear_map_is_a_bijection_transporting_statistics():
    # pointwise, exceedances of sigma itself need not match: 123564 has 2, its word 1 descent
    assert exc((1, 2, 3, 5, 6, 4)) == 2 and des(cb.riordan_linear_map((1, 2, 3, 5, 6, 4))) == 1
    images = set()
    for sigma in perms(6):
        w = cb.riordan_linear_map(sigma)
        images.add(w)
        inverse = tuple(sorted(range(1, 7), key=lambda i: sigma[i - 1]))
        # a descent "i sigma(i)" in the word is a drop of sigma
        assert cb.stats(inverse).exceedance_tops == frozenset(cb.descent_tops(w))
        assert exc(inverse) == des(w)
        # cycles become right-to-left minima (each cycle ends with its minimum)
        assert cb.stats(sigma).cyc == len(cb.right_to_left_minima(w))
    assert len(images) == factorial(6)


def test_cycles_are_not_left_to_right_minima_of_the_linear_word():
    sigma = cb.parse_permutation("341526978")
    w = cb.riordan_linear_map(sigma)
    assert len(cb.left_to_right_minima(w)) == 2 != cb.stats(sigma).cyc


def test_pi_map_examples():
    assert cb.pi_map(cb.parse_permutation("316524")) == cb.parse_permutation("31452")
    assert cb.pi_map((2, 1, 3)) == (2, 1)


def test_pi_map_fibers_have_n_elements():
    counts = Counter(cb.pi_map(s) for s in perms(5))
    assert set(counts.values()) == {5} and len(counts) == factorial(4)


@pytest.mark.parametrize("k", range(1, 6))
def test_pi_fiber_profile_by_row_class(k):
    n = 5
    prof = cb.pi_fiber_profile(n, k)
    for cls, info in prof.items():
        if cls == "D":
            assert info["sizes"] == {n - k: factorial(n - 1)}
        else:
            assert info["sizes"] == {1: factorial(n - 1)}


# -- generating polynomials ------------------------------------------------------------------


def test_small_generating_polynomials():
    assert cb.eulerian_poly_direct(3) == UnivariatePolynomial([1, 4, 1])
    assert cb.descent_top_poly_direct(3) == P("1 + y2 + 3*y3 + y2*y3")
    assert cb.shifted_descent_poly_direct(4, 1) == cb.descent_top_poly_direct(4)


@pytest.mark.parametrize("n", range(1, 8))
def test_exceedances_and_descents_are_equidistributed(n):
    assert cb.eulerian_poly_direct(n, "exc") == cb.eulerian_poly_direct(n, "des")
    want = Counter(des(s) for s in perms(n))
    got = cb.eulerian_poly_direct(n)
    assert {k: c for k, c in enumerate(got.coeffs) if c} == dict(want)


@pytest.mark.parametrize("n,j", [(n, j) for n in range(1, 6) for j in range(1, 4)])
def test_shifted_descent_polynomial_matches_oracle(n, j):
    want = Polynomial()
    for s in perms(n):
        tops = [s[i] for i in range(n - 1) if s[i] > s[i + 1] + j - 1]
        want = want + prod((Polynomial.var(y(a)) for a in tops), start=Polynomial.constant(1))
    assert cb.shifted_descent_poly_direct(n, j) == want


@pytest.mark.parametrize("n", range(1, 6))
def test_minima_descent_polynomial_oracle(n):
    want = Polynomial()
    for s in perms(n):
        w = s
        mins = sum(w[i] < min(w[i + 1:], default=n + 1) for i in range(n))
        tops = [w[i] for i in range(n - 1) if w[i] > w[i + 1]]
        want = want + Polynomial.var(ALPHA) ** mins * prod(
            (Polynomial.var(y(a)) for a in tops), start=Polynomial.constant(1))
    assert cb.lrmin_descent_poly_direct(n) == want


def test_caps():
    with pytest.raises(CapExceeded):
        cb.eulerian_poly_direct(10)
    with pytest.raises(CapExceeded):
        list(cb.multiset_permutations((5, 5)))


# -- multisets ---------------------------------------------------------------------------


def test_multiset_examples():
    assert list(cb.multiset_permutations((2, 1))) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    assert cb.multiset_descent_poly_direct((2, 1)) == P("1 + 2*y2")
    assert cb.multiset_descent_poly_direct((4,)) == P("1")


compositions = st.lists(st.integers(1, 3), min_size=1, max_size=4).filter(lambda v: sum(v) <= 7)


@given(compositions)
def test_multiset_stream_is_sorted_and_complete(v):
    words = list(cb.multiset_permutations(v))
    letters = [i + 1 for i, c in enumerate(v) for _ in range(c)]
    assert words == sorted(set(permutations(letters)))
    assert len(words) == factorial(sum(v)) // prod(factorial(c) for c in v)


@given(compositions)
def test_collapse_is_uniformly_many_to_one(v):
    n = sum(v)
    fibers = Counter(cb.multiset_collapse(s, v) for s in perms(n))
    assert set(fibers.values()) == {prod(factorial(c) for c in v)}


@given(compositions.filter(lambda v: sum(v) <= 6))
def test_multiset_eulerian_is_real_rooted(v):
    p = cb.multiset_descent_poly_direct(v)
    u = p.diagonalize([y(i) for i in range(1, len(v) + 1)], T).to_univariate(T)
    assert real_rooted(u)


# -- descent tops --------------------------------------------------------------------------


def test_top_count_examples():
    tc = cb.top_counts(3)
    assert tc.single[2] == 2
    for n in range(1, 7):
        tc = cb.top_counts(n)
        assert tc.single[1] == 0
        for (i, j), c in tc.pair.items():
            assert c <= min(tc.single[i], tc.single[j])


@pytest.mark.parametrize("n", range(2, 7))
def test_top_counts_match_oracle(n):
    tc = cb.top_counts(n)
    for i in range(1, n + 1):
        assert tc.single[i] == sum(any(s[k] == i and s[k] > s[k + 1] for k in range(n - 1))
                                   for s in perms(n))
