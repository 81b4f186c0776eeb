"""Real-rootedness certification and real-stability falsification.

Univariate questions are decided exactly with Sturm sequences over the
rationals.  Multivariate real stability is only ever *tested*: a real
polynomial is stable iff every restriction t -> p(a + t*b) with b > 0 is
real-rooted (or identically zero), so sampling rational lines can refute
stability but never prove it.  Multiaffine polynomials also get the
Rayleigh-difference test f_i*f_j - f*f_ij >= 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .errors import MCPermError, NotRealRootedError
from .polyalg import (Polynomial, UnivariatePolynomial, Var, as_rational, evaluate_many,
                      evaluate_signs, poly_gcd, restrict_line)

DEFAULT_TRIALS = 64
DEFAULT_COEFF_BOUND = 100
DEFAULT_MAX_DENOMINATOR = 16


# -- Sturm machinery -------------------------------------------------------------


def square_free_part(u: UnivariatePolynomial) -> UnivariatePolynomial:
    if u.is_zero():
        raise MCPermError("square-free part of the zero polynomial is undefined")
    if u.degree == 0:
        return u
    return u // poly_gcd(u, u.derivative())


def sturm_chain(u: UnivariatePolynomial) -> list[UnivariatePolynomial]:
    """Sturm chain of the square-free part of ``u``."""
    p = square_free_part(u)
    chain = [p]
    if p.degree == 0:
        return chain
    chain.append(p.derivative())
    while chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    return chain


def _sign(c) -> int:
    return (c > 0) - (c < 0)


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain, t) -> int:
    if t == "+inf":
        return _variations(_sign(q.leading) for q in chain)
    if t == "-inf":
        return _variations(_sign(q.leading) * (-1) ** q.degree for q in chain)
    return _variations(_sign(q(t)) for q in chain)


def count_real_roots(u: UnivariatePolynomial, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``u`` in (lo, hi]; the whole line by default."""
    if u.is_zero():
        raise MCPermError("the zero polynomial has infinitely many roots")
    chain = sturm_chain(u)
    a = "-inf" if lo is None else as_rational(lo)
    b = "+inf" if hi is None else as_rational(hi)
    return _variations_at(chain, a) - _variations_at(chain, b)


def real_rooted(u: UnivariatePolynomial) -> bool:
    """True iff u is zero, constant, or has only real roots.

    Runs an integer Sturm sequence of u itself: its last nonzero member is
    gcd(u, u') up to scale, so u has deg(u) - deg(last) distinct roots, and
    the sign variations at -inf and +inf count the real ones.
    """
    if u.degree <= 0:
        return True
    chain = _integer_sturm(u)
    distinct = u.degree - (len(chain[-1]) - 1)
    return _int_variations(chain, -1) - _int_variations(chain, 1) == distinct


def _primitive(cs: list[int]) -> list[int]:
    g = gcd(*cs)
    return [c // g for c in cs] if g > 1 else cs


def _signed_prem(a: list[int], b: list[int]) -> list[int]:
    """Remainder of a by b times a positive integer (integer coefficients, constant first)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    steps = 0
    while a and len(a) - 1 >= db:
        shift = len(a) - 1 - db
        la = a[-1]
        a = [lb * c for c in a]
        for i, c in enumerate(b):
            a[i + shift] -= la * c
        while a and not a[-1]:
            a.pop()
        steps += 1
    if lb < 0 and steps % 2:
        a = [-c for c in a]
    return a


def _integer_sturm(u: UnivariatePolynomial) -> list[list[int]]:
    den = lcm(*(Fraction(c).denominator for c in u.coeffs))
    p0 = _primitive([int(c * den) for c in u.coeffs])
    p1 = _primitive([k * c for k, c in enumerate(p0)][1:])
    chain = [p0, p1]
    while len(chain[-1]) > 1:
        r = _signed_prem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_primitive([-c for c in r]))
    return chain


def _int_variations(chain: list[list[int]], direction: int) -> int:
    """Sign variations at +inf (direction 1) or -inf (direction -1)."""
    signs = []
    for cs in chain:
        s = 1 if cs[-1] > 0 else -1
        if direction < 0 and (len(cs) - 1) % 2:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(u: UnivariatePolynomial) -> Fraction:
    """Cauchy bound: every root has absolute value below it."""
    lead = abs(Fraction(u.leading))
    return 1 + max((abs(Fraction(c)) / lead for c in u.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(u: UnivariatePolynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint half-open intervals (lo, hi], each holding exactly one distinct real root, in increasing order."""
    if u.is_zero():
        raise MCPermError("cannot isolate roots of the zero polynomial")
    if u.degree == 0:
        return []
    chain = sturm_chain(u)
    B = root_bound(chain[0])
    out = []
    stack = [(-B, B, _variations_at(chain, -B), _variations_at(chain, B))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vmid = _variations_at(chain, mid)
        stack.append((mid, hi, vmid, vhi))
        stack.append((lo, mid, vlo, vmid))
    return sorted(out)


class Interlacing(str, enum.Enum):
    H_PROPER_G = "h-proper-g"
    G_PROPER_H = "g-proper-h"
    BOTH = "both"
    NEITHER = "neither"


def interlace_check(g: UnivariatePolynomial, h: UnivariatePolynomial) -> Interlacing:
    """Proper-position relation between real-rooted g and h.

    ``H_PROPER_G`` means g + t*h is stable in (z, t), ``G_PROPER_H`` means
    h + t*g is.  A common factor is real-rooted, so it is divided out; the
    coprime cofactors must then be square-free with strictly alternating
    roots, and the sign of the Wronskian h'g - hg' picks the direction.
    """
    if g.is_zero() and h.is_zero():
        raise MCPermError("interlace_check needs at least one nonzero polynomial")
    for name, u in (("g", g), ("h", h)):
        if not real_rooted(u):
            raise NotRealRootedError(f"{name} = {u} is not real-rooted")
    if g.is_zero() or h.is_zero():
        return Interlacing.BOTH
    d = poly_gcd(g, h)
    g1, h1 = g // d, h // d
    if g1.degree == 0 and h1.degree == 0:
        return Interlacing.BOTH
    if abs(g1.degree - h1.degree) > 1:
        return Interlacing.NEITHER
    if square_free_part(g1).degree != g1.degree or square_free_part(h1).degree != h1.degree:
        return Interlacing.NEITHER
    labels = []
    for lo, hi in isolate_real_roots(g1 * h1):
        labels.append("g" if g1.degree > 0 and count_real_roots(g1, lo, hi) == 1 else "h")
    if any(a == b for a, b in zip(labels, labels[1:])):
        return Interlacing.NEITHER
    wronskian = h1.derivative() * g1 - h1 * g1.derivative()
    t = 0
    while not wronskian(t):
        t += 1
    return Interlacing.H_PROPER_G if wronskian(t) < 0 else Interlacing.G_PROPER_H


# -- sampling tester -----------------------------------------------------------------


@dataclass
class StabilityVerdict:
    kind: str  # "certified-real-rooted" | "passed-sampling" | "refuted"
    trials: int
    seed: int
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.kind != "refuted"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "trials": self.trials, "seed": self.seed,
                "witness": self.witness}


def _draw_rational(rng, bound: int, max_den: int, positive: bool = False) -> Fraction:
    den = int(rng.integers(1, max_den, endpoint=True))
    if positive:
        num = int(rng.integers(1, bound * den, endpoint=True))
    else:
        num = int(rng.integers(-bound * den, bound * den, endpoint=True))
    return Fraction(num, den)


def sample_line(dim: int, seed: int, trial: int, coeff_bound: int = DEFAULT_COEFF_BOUND,
                max_denominator: int = DEFAULT_MAX_DENOMINATOR):
    """The (base, direction) pair used by trial ``trial``; depends only on (seed, trial)."""
    rng = np.random.default_rng([seed, trial])
    base = [_draw_rational(rng, coeff_bound, max_denominator) for _ in range(dim)]
    direction = [_draw_rational(rng, coeff_bound, max_denominator, positive=True)
                 for _ in range(dim)]
    return base, direction


def _fmt(values) -> list[str]:
    return [str(as_rational(v)) for v in values]


def stability_sample_test(p: Polynomial, trials: int = DEFAULT_TRIALS, seed: int = 0,
                          coeff_bound: int = DEFAULT_COEFF_BOUND,
                          max_denominator: int = DEFAULT_MAX_DENOMINATOR,
                          variables: Sequence[Var] | None = None) -> StabilityVerdict:
    """Try to refute real stability of ``p`` on ``trials`` random rational lines.

    A line refutes when the restriction has a non-real root.  Two further
    refutations come from the top-degree part p_top: for stable p it is
    nonzero of one sign on the positive orthant, and p_top(direction) is the
    t^deg coefficient of every restriction.  So a degree drop, or a sign change
    between two lines, also refutes (this catches mixed-sign linear forms,
    whose restrictions are always real-rooted).

    A polynomial in at most one variable is decided exactly instead.
    """
    if trials < 1:
        raise MCPermError("trials must be positive")
    variables = tuple(variables) if variables is not None else p.variables()
    if len(variables) <= 1:
        u = p.to_univariate(variables[0]) if variables else UnivariatePolynomial(
            [p.constant_value()])
        if real_rooted(u):
            return StabilityVerdict("certified-real-rooted", 0, seed)
        return StabilityVerdict("refuted", 0, seed, {
            "variables": [str(v) for v in variables], "restriction": str(u),
            "reason": "univariate polynomial with non-real roots"})
    deg = p.degree()
    reference = None
    for trial in range(trials):
        base, direction = sample_line(len(variables), seed, trial, coeff_bound, max_denominator)
        u = restrict_line(p, base, direction, variables)
        witness = {
            "trial": trial,
            "variables": [str(v) for v in variables],
            "base": _fmt(base),
            "direction": _fmt(direction),
            "restriction": str(u),
        }
        if u.degree < deg:
            witness["reason"] = "degree drop"
        elif not real_rooted(u):
            witness["reason"] = "non-real root"
        elif reference is None:
            reference = (trial, direction, u.leading > 0)
            continue
        elif (u.leading > 0) != reference[2]:
            witness["reason"] = "leading coefficient changes sign"
            witness["reference_trial"] = reference[0]
            witness["reference_direction"] = _fmt(reference[1])
        else:
            continue
        return StabilityVerdict("refuted", trial + 1, seed, witness)
    return StabilityVerdict("passed-sampling", trials, seed)


def replay_witness(p: Polynomial, witness: dict) -> bool:
    """Re-run a line witness; True when it still refutes stability."""
    variables = [Var.parse(s) for s in witness["variables"]]
    if "base" not in witness:
        u = p.to_univariate(variables[0]) if variables else UnivariatePolynomial(
            [p.constant_value()])
        return not real_rooted(u)
    base = [Fraction(s) for s in witness["base"]]
    u = restrict_line(p, base, [Fraction(s) for s in witness["direction"]], variables)
    if u.degree < p.degree() or not real_rooted(u):
        return True
    if "reference_direction" in witness:
        ref = restrict_line(p, base, [Fraction(s) for s in witness["reference_direction"]],
                            variables)
        return ref.degree < p.degree() or (ref.leading > 0) != (u.leading > 0)
    return False


# -- Rayleigh differences -------------------------------------------------------------


def rayleigh_difference(p: Polynomial, vi: Var, vj: Var) -> Polynomial:
    """p_i * p_j - p * p_ij for a multiaffine p."""
    if not p.is_multiaffine():
        raise MCPermError("rayleigh_check needs a multiaffine polynomial")
    if vi == vj:
        raise MCPermError("rayleigh_check needs two distinct variables")
    pi, pj = p.partial(vi), p.partial(vj)
    return pi * pj - p * pi.partial(vj)


def random_point_arrays(dim: int, count: int, seed, coeff_bound: int = DEFAULT_COEFF_BOUND,
                        max_denominator: int = DEFAULT_MAX_DENOMINATOR):
    """(numerators, denominators) integer arrays of shape (count, dim).

    Each coordinate is num/den with den uniform in 1..max_denominator and
    num uniform in [-coeff_bound*den, coeff_bound*den].
    """
    rng = np.random.default_rng(seed)
    den = rng.integers(1, max_denominator, size=(count, dim), endpoint=True)
    num = rng.integers(-coeff_bound * den, coeff_bound * den, endpoint=True)
    return num, den


def random_points(dim: int, count: int, seed, coeff_bound: int = DEFAULT_COEFF_BOUND,
                  max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> list[list]:
    num, den = random_point_arrays(dim, count, seed, coeff_bound, max_denominator)
    return [[as_rational(Fraction(int(a), int(b))) for a, b in zip(r1, r2)]
            for r1, r2 in zip(num, den)]


@dataclass
class RayleighResult:
    passed: bool
    pair: tuple[str, str]
    points_checked: int
    witness: dict | None = field(default=None)


def rayleigh_check(p: Polynomial, vi: Var, vj: Var, points: Sequence[Sequence],
                   variables: Sequence[Var] | None = None) -> RayleighResult:
    """Evaluate the Rayleigh difference at every point (coordinates in ``variables`` order).

    Fails on the first point where it is negative.
    """
    variables = tuple(variables) if variables is not None else p.variables()
    delta = rayleigh_difference(p, vi, vj)
    values = evaluate_many(delta, points, variables)
    pair = (str(vi), str(vj))
    for k, val in enumerate(values):
        if val < 0:
            return RayleighResult(False, pair, k + 1, {
                "variables": [str(v) for v in variables],
                "point": _fmt(points[k]),
                "value": str(val),
            })
    return RayleighResult(True, pair, len(values))


def rayleigh_all_pairs(p: Polynomial, points_per_pair: int, seed: int,
                       variables: Sequence[Var] | None = None,
                       coeff_bound: int = DEFAULT_COEFF_BOUND,
                       max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> list[RayleighResult]:
    """rayleigh_check on every pair of variables, with fresh random points per pair.

    Only the sign of the Rayleigh difference is needed, so points stay as
    integer arrays until a negative value has to be reported.
    """
    variables = tuple(variables) if variables is not None else p.variables()
    results = []
    for a in range(len(variables)):
        for b in range(a + 1, len(variables)):
            vi, vj = variables[a], variables[b]
            delta = rayleigh_difference(p, vi, vj)
            num, den = random_point_arrays(len(variables), points_per_pair, [seed, a, b],
                                           coeff_bound, max_denominator)
            signs = evaluate_signs(delta, num, den, variables)
            bad = np.flatnonzero(signs < 0)
            if bad.size:
                k = int(bad[0])
                point = [Fraction(int(u), int(w)) for u, w in zip(num[k], den[k])]
                results.append(rayleigh_check(p, vi, vj, [point], variables))
                results[-1].points_checked = k + 1
            else:
                results.append(RayleighResult(True, (str(vi), str(vj)), points_per_pair))
    return results
