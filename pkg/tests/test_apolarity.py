from fractions import Fraction
from itertools import permutations
from math import comb, factorial, prod

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from mcperm import apolarity as ap
from mcperm.errors import DegreeError, MCPermError
from mcperm.polyalg import UnivariatePolynomial

U = UnivariatePolynomial


def form_oracle(f: U, g: U, n: int):
    """The bilinear form straight from plain coefficients: c_k = C(n,k) a_k."""
    a = [Fraction(f.coeffs[k] if k <= f.degree else 0) / comb(n, k) for k in range(n + 1)]
    b = [Fraction(g.coeffs[k] if k <= g.degree else 0) / comb(n, k) for k in range(n + 1)]
    return sum(comb(n, k) * (-1) ** (n - k) * a[k] * b[n - k] for k in range(n + 1))


def per_oracle(M):
    n = len(M)
    return sum(prod(M[i][s[i]] for i in range(n)) for s in permutations(range(n)))


def test_form_examples():
    t = U([0, 1])
    assert ap.apolarity_form(t, t) == 0
    assert ap.apolarity_form(U([-1, 1]), U([1, 1])) == 2
    with pytest.raises(DegreeError):
        ap.apolarity_form(U([1, 1]), U([1, 0, 1]))


def test_binomial_form_round_trip():
    cs = [3, Fraction(1, 2), -4, 7]
    assert ap.from_binomial_form(ap.to_binomial_form(cs)) == cs
    assert ap.to_binomial_form([1, 2, 1]) == [1, 1, 1]


rooted = st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.fractions(-4, 4, max_denominator=3).filter(bool),
    st.lists(st.fractions(-5, 5, max_denominator=4), min_size=n, max_size=n)))


@given(rooted, st.data())
def test_form_equals_root_difference_permanent(fd, data):
    lead_f, zs = fd
    lead_g = data.draw(st.fractions(-4, 4, max_denominator=3).filter(bool))
    ws = data.draw(st.lists(st.fractions(-5, 5, max_denominator=4),
                            min_size=len(zs), max_size=len(zs)))
    f, g = ap.RootedPolynomial(lead_f, zs), ap.RootedPolynomial(lead_g, ws)
    n = len(zs)
    value = form_oracle(f.expand(), g.expand(), n)
    assert ap.apolarity_form(f, g) == value
    per = per_oracle([[w - z for z in zs] for w in ws])
    assert value == (-1) ** n * lead_f * lead_g * per / factorial(n)
    assert ap.permanent_form(f, g) == value


def test_stated_scaling_of_the_root_identity_does_not_hold():
    # t - 1 and t + 1: the form is 2, per(w - z) = -2, so n! a_n b_n per = -2
    f, g = ap.RootedPolynomial(1, (1,)), ap.RootedPolynomial(1, (-1,))
    assert ap.apolarity_form(f, g) == 2
    assert ap.root_difference_permanent(g.roots, f.roots) == -2


@given(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=1, max_size=6),
       st.fractions(-3, 3, max_denominator=2).filter(bool), st.data())
def test_complement_is_apolar(roots_g, lead, data):
    g = U.from_roots(roots_g, lead)
    n = g.degree
    free = data.draw(st.lists(st.fractions(-9, 9, max_denominator=5),
                              min_size=n - 1, max_size=n - 1))
    f = ap.apolar_complement(g, free)
    assert f.degree == n and f.leading == 1
    assert form_oracle(f, g, n) == 0
    assert ap.is_apolar(f, g)


def test_complement_degree_one_and_errors():
    w = Fraction(3, 2)
    f = ap.apolar_complement(U([-w, 1]), [])
    assert f == U([-w, 1])  # t - w is apolar to itself
    with pytest.raises(MCPermError):
        ap.apolar_complement(U([1, 2, 3]), [1, 2])
    with pytest.raises(DegreeError):
        ap.apolar_complement(U([5]), [])


def test_complement_of_power_has_root_at_zero():
    for n in range(1, 6):
        f = ap.apolar_complement(U([0] * n + [1]), [Fraction(k + 1, 3) for k in range(n - 1)])
        assert f.coeffs[0] == 0


# -- Möbius maps --------------------------------------------------------------------------


def test_identity_map_fixes_polynomials():
    f = U.from_roots([1, Fraction(-2, 3), 4], 5)
    assert ap.mobius_transform(f, ap.MobiusMap(1, 0, 0, 1)) == f


def test_singular_map_and_degree_drop_rejected():
    with pytest.raises(MCPermError):
        ap.MobiusMap(1, 2, 2, 4)
    # phi(t) = 1/t sends the root 0 to infinity
    with pytest.raises(DegreeError):
        ap.mobius_transform(U([0, 1]), ap.MobiusMap(0, 1, 1, 0))


maps = st.tuples(*[st.integers(-4, 4)] * 4).filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0)


@given(st.lists(st.fractions(-5, 5, max_denominator=3), min_size=1, max_size=5), st.data(),
       maps)
def test_mobius_identities(zs, data, m):
    ws = data.draw(st.lists(st.fractions(-5, 5, max_denominator=3),
                            min_size=len(zs), max_size=len(zs)))
    phi = ap.MobiusMap(*m)
    assume(not any(phi.is_pole(r) for r in zs + ws))
    n = len(zs)
    f, g = U.from_roots(zs), U.from_roots(ws)
    fh, gh = ap.mobius_transform(f, phi), ap.mobius_transform(g, phi)
    # roots move by phi
    assert fh.monic() == U.from_roots([phi(r) for r in zs])
    # the form scales by det^n, so apolarity is preserved
    assert form_oracle(fh, gh, n) == phi.det ** n * form_oracle(f, g, n)
    # going back multiplies by det^n
    assert ap.mobius_transform(fh, phi.inverse()) == U([phi.det ** n]) * f
    # prefactor law for the root-difference permanent
    lhs = per_oracle([[phi(w) - phi(z) for z in zs] for w in ws])
    den = prod((m[2] * w + m[3]) * (m[2] * z + m[3]) for w, z in zip(ws, zs))
    assert lhs == Fraction(phi.det) ** n / den * per_oracle([[w - z for z in zs] for w in ws])
    assert ap.mobius_prefactor(phi, ws, zs) == Fraction(phi.det) ** n / den


# -- Grace demonstration ----------------------------------------------------------------------


def test_grace_demo_unit_disk_and_half_plane():
    for region in (ap.Disk(0, 1.0), ap.HalfPlane(0, 1j), ap.Disk(2 - 1j, 0.5)):
        rep = ap.grace_demo(region, degree=4, trials=100, seed=0)
        assert rep.violations == 0 and rep.skipped == 0
        assert rep.worst_distance <= 1e-8


def test_grace_demo_with_all_roots_at_center():
    g = ap.RootedPolynomial(1.0, (0j,) * 4)
    rep = ap.grace_demo(ap.Disk(0, 0.0), trials=20, seed=3, g=g)
    assert rep.violations == 0


def test_grace_refuses_non_apolar_pair():
    g = ap.RootedPolynomial(1, (0,) * 3).expand()
    f = ap.RootedPolynomial(1, (5,) * 3).expand()
    assert ap.apolarity_form(f, g) != 0
    with pytest.raises(MCPermError, match="not apolar"):
        ap.grace_check_pair(f.coeffs, g.coeffs, ap.Disk(0, 1.0))


def test_grace_demo_is_deterministic():
    a = ap.grace_demo(ap.Disk(0, 1.0), trials=30, seed=9).to_dict()
    b = ap.grace_demo(ap.Disk(0, 1.0), trials=30, seed=9).to_dict()
    assert a == b


def test_polished_roots_are_accurate():
    cs = np.poly([1.5, -2, 0.25 + 1j, 0.25 - 1j])[::-1]
    roots, ok = ap.polish_roots(cs)
    assert ok
    assert sorted(roots, key=lambda r: (r.real, r.imag))[0] == pytest.approx(-2)
