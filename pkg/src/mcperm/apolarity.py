"""Apolarity of univariate polynomials, Möbius transforms, and a Grace demo.

Coefficients are read in binomial form: a degree-n polynomial is
f(t) = sum_k C(n, k) a_k t^k, and f, g are apolar when a_n b_n != 0 and

    sum_k C(n, k) (-1)^(n-k) a_k b_(n-k) = 0.

Exact mode works over the rationals.  The Grace demo runs in complex
floating point because root location in a disk is a geometric question.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Sequence

import numpy as np

from .errors import DegreeError, MCPermError
from .permanent import permanent
from .polyalg import UnivariatePolynomial, as_rational


def _coeff_list(f) -> list:
    if isinstance(f, UnivariatePolynomial):
        return list(f.coeffs)
    if isinstance(f, RootedPolynomial):
        return list(f.expand().coeffs)
    cs = list(f)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def to_binomial_form(coeffs: Sequence, n: int | None = None) -> list:
    """Plain coefficients (constant first) -> [a_0, ..., a_n] with c_k = C(n, k) a_k."""
    cs = list(coeffs)
    n = len(cs) - 1 if n is None else n
    if len(cs) > n + 1:
        raise DegreeError(f"polynomial of degree {len(cs) - 1} viewed as degree {n}")
    cs = cs + [0] * (n + 1 - len(cs))
    return [_div(c, comb(n, k)) for k, c in enumerate(cs)]


def from_binomial_form(a: Sequence) -> list:
    n = len(a) - 1
    return [comb(n, k) * c for k, c in enumerate(a)]


def _is_float(c) -> bool:
    return isinstance(c, (complex, float, np.generic))


def _div(c, m: int):
    if _is_float(c):
        return c / m
    return as_rational(Fraction(c) / m)


def _degrees(f, g, n: int | None):
    cf, cg = _coeff_list(f), _coeff_list(g)
    df, dg = len(cf) - 1, len(cg) - 1
    if n is None:
        if df != dg:
            raise DegreeError(f"degree mismatch: {df} vs {dg}")
        n = df
    if n < 0:
        raise DegreeError("zero polynomial has no degree")
    if max(df, dg) > n:
        raise DegreeError(f"degree exceeds n = {n}")
    return to_binomial_form(cf, n), to_binomial_form(cg, n), n


def apolarity_form(f, g, n: int | None = None):
    """The bilinear form sum_k C(n, k) (-1)^(n-k) a_k b_(n-k).

    ``f`` and ``g`` must have the same degree unless ``n`` is given, in which
    case both are read as polynomials of formal degree n.
    """
    a, b, n = _degrees(f, g, n)
    total = sum((comb(n, k) * (-1) ** (n - k) * a[k] * b[n - k] for k in range(n + 1)),
                start=0)
    return total if isinstance(total, (complex, float)) else as_rational(total)


def is_apolar(f, g, n: int | None = None) -> bool:
    a, b, n = _degrees(f, g, n)
    return a[n] != 0 and b[n] != 0 and apolarity_form(f, g, n) == 0


def _complement(b: Sequence, free: Sequence) -> list:
    """Binomial-form coefficients of the monic f apolar to g with a_1..a_(n-1) = free."""
    n = len(b) - 1
    if len(free) != n - 1 and not (n == 0 and not free):
        raise MCPermError(f"expected {max(n - 1, 0)} free parameters, got {len(free)}")
    if b[n] == 0:
        raise DegreeError("leading coefficient of g vanishes")
    if n == 0:
        raise DegreeError("apolar complement needs degree at least 1")
    a = [0] + list(free) + [1]
    rest = sum((comb(n, k) * (-1) ** (n - k) * a[k] * b[n - k] for k in range(1, n + 1)),
               start=0)
    den = (-1) ** n * b[n]
    if _is_float(rest) or _is_float(den):
        a[0] = -rest / den
    else:
        a[0] = as_rational(-Fraction(rest) / Fraction(den))
    return a


def apolar_complement(g, free: Sequence) -> UnivariatePolynomial:
    """The monic f apolar to g whose middle binomial coefficients are ``free``.

    A degree-n g leaves n - 1 free parameters a_1..a_(n-1); a_0 is solved for.
    """
    cg = _coeff_list(g)
    b = to_binomial_form(cg)
    a = _complement(b, [as_rational(c) for c in free])
    return UnivariatePolynomial(from_binomial_form(a))


@dataclass(frozen=True)
class RootedPolynomial:
    """leading * prod (t - root); exact when every root is rational."""

    leading: object
    roots: tuple

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(self.roots))
        if self.leading == 0:
            raise MCPermError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.roots)

    @property
    def exact(self) -> bool:
        return not any(isinstance(r, (complex, float)) for r in (self.leading, *self.roots))

    def expand(self) -> UnivariatePolynomial:
        if not self.exact:
            raise MCPermError("expand() needs rational data; use coefficients() for floats")
        return UnivariatePolynomial.from_roots(self.roots, self.leading)

    def coefficients(self) -> np.ndarray:
        """Complex coefficients, constant first."""
        return self.leading * np.poly(np.array(self.roots, dtype=complex))[::-1]


def root_difference_permanent(w_roots: Sequence, z_roots: Sequence):
    """per(w_i - z_j)."""
    if len(w_roots) != len(z_roots):
        raise DegreeError("root lists must have equal length")
    return permanent([[w - z for z in z_roots] for w in w_roots])


def permanent_form(f: RootedPolynomial, g: RootedPolynomial):
    """The apolarity form of f and g computed from their roots.

    With z the roots of f and w those of g, the form equals
    (-1)^n a_n b_n per(w_i - z_j) / n!, where a_n, b_n are the leading
    coefficients.
    """
    if f.degree != g.degree:
        raise DegreeError("degree mismatch")
    n = f.degree
    value = Fraction((-1) ** n) * f.leading * g.leading * root_difference_permanent(
        g.roots, f.roots) / factorial(n)
    return as_rational(value)


# -- Möbius maps -----------------------------------------------------------------------


@dataclass(frozen=True)
class MobiusMap:
    """t -> (a t + b) / (c t + d)."""

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.det == 0:
            raise MCPermError("Möbius map needs ad - bc != 0")

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def is_pole(self, t) -> bool:
        return self.c * t + self.d == 0

    def __call__(self, t):
        den = self.c * t + self.d
        if den == 0:
            raise MCPermError(f"{t} is a pole of the Möbius map")
        return as_rational(Fraction(self.a * t + self.b) / den)


def mobius_transform(f, phi: MobiusMap, n: int | None = None) -> UnivariatePolynomial:
    """(gamma t + delta)^n f(phi^{-1}(t)) where phi^{-1}(t) = (alpha t + beta)/(gamma t + delta)."""
    cs = _coeff_list(f)
    n = len(cs) - 1 if n is None else n
    if n < 0:
        raise DegreeError("cannot transform the zero polynomial")
    inv = phi.inverse()
    num = UnivariatePolynomial([inv.b, inv.a])
    den = UnivariatePolynomial([inv.d, inv.c])
    total = UnivariatePolynomial()
    for k, c in enumerate(cs):
        if c:
            total = total + (_power(num, k) * _power(den, n - k)) * UnivariatePolynomial([c])
    if total.degree != n:
        raise DegreeError(f"transformed polynomial drops to degree {total.degree} < {n}")
    return total


def _power(u: UnivariatePolynomial, k: int) -> UnivariatePolynomial:
    out = UnivariatePolynomial([1])
    for _ in range(k):
        out = out * u
    return out


def mobius_prefactor(phi: MobiusMap, w_roots: Sequence, z_roots: Sequence):
    """(ad - bc)^n / prod_h (c w_h + d)(c z_h + d)."""
    n = len(w_roots)
    den = prod((phi.c * w + phi.d) * (phi.c * z + phi.d) for w, z in zip(w_roots, z_roots))
    if den == 0:
        raise MCPermError("a root sits at a pole of the Möbius map")
    return as_rational(Fraction(phi.det) ** n / den)


# -- Grace demo ------------------------------------------------------------------------


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def distance(self, t: complex) -> float:
        return max(0.0, abs(t - self.center) - self.radius)

    def sample(self, rng) -> complex:
        r = self.radius * np.sqrt(rng.random())
        return complex(self.center) + r * cmath.exp(2j * np.pi * rng.random())


@dataclass(frozen=True)
class HalfPlane:
    """Points t with Re((t - point) * conj(normal)) >= 0; normal points inward."""

    point: complex
    normal: complex

    def distance(self, t: complex) -> float:
        u = complex(self.normal) / abs(self.normal)
        return max(0.0, -((t - self.point) * u.conjugate()).real)

    def sample(self, rng) -> complex:
        u = complex(self.normal) / abs(self.normal)
        depth = rng.exponential(1.0)
        along = rng.normal()
        return complex(self.point) + u * (depth + 1j * along)


def polish_roots(coeffs: np.ndarray, max_iter: int = 50, rel_tol: float = 1e-12):
    """Companion-matrix roots refined by Newton steps.

    Returns (roots, converged); a root counts as converged once a Newton step
    moves it by less than rel_tol relative to its size.
    """
    c = np.asarray(coeffs, dtype=complex)
    p = np.polynomial.Polynomial(c)
    dp = p.deriv()
    roots = np.roots(c[::-1])
    converged = True
    polished = []
    for r in roots:
        ok = False
        for _ in range(max_iter):
            d = dp(r)
            if d == 0:
                break
            step = p(r) / d
            r = r - step
            if abs(step) <= rel_tol * max(1.0, abs(r)):
                ok = True
                break
        converged &= ok or abs(p(r)) == 0
        polished.append(complex(r))
    return polished, converged


def grace_check_pair(f_coeffs, g_coeffs, region, tol: float = 1e-8,
                     apolar_tol: float = 1e-9) -> float:
    """Distance from the region to the nearest root of f, for apolar f, g.

    Refuses pairs that are not apolar.  Exact input is checked exactly,
    float input up to ``apolar_tol`` relative to the coefficient scale.
    """
    f = list(f_coeffs)
    g = list(g_coeffs)
    if len(f) != len(g):
        raise DegreeError("f and g must have the same degree")
    value = apolarity_form(f, g)
    scale = max(1.0, max(abs(complex(c)) for c in f) * max(abs(complex(c)) for c in g))
    if isinstance(value, (complex, float)):
        apolar = abs(value) <= apolar_tol * scale
    else:
        apolar = value == 0
    if not apolar or f[-1] == 0 or g[-1] == 0:
        raise MCPermError(f"inputs are not apolar (form = {value})")
    roots, converged = polish_roots(np.array([complex(c) for c in f]))
    if not converged:
        raise MCPermError("root finder did not converge")
    return min(region.distance(r) for r in roots)


@dataclass
class GraceReport:
    trials: int
    seed: int
    tol: float
    violations: int = 0
    skipped: int = 0
    worst_distance: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "tol": self.tol,
            "violations": self.violations,
            "skipped": self.skipped,
            "worst_distance": self.worst_distance,
            "failures": self.failures,
        }


def grace_demo(region, degree: int = 4, trials: int = 100, seed: int = 0,
               tol: float = 1e-8, g: RootedPolynomial | None = None) -> GraceReport:
    """Build apolar pairs with every root of g in ``region``; check f has a root there too.

    Without ``g``, each trial draws a fresh g with ``degree`` roots in the
    region.  Free parameters of f are standard complex normals.
    """
    report = GraceReport(trials, seed, tol)
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        gg = g if g is not None else RootedPolynomial(
            1.0, tuple(region.sample(rng) for _ in range(degree)))
        n = gg.degree
        b = to_binomial_form(list(gg.coefficients()))
        free = list(rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1))
        f = from_binomial_form(_complement(b, free))
        try:
            dist = grace_check_pair(f, list(gg.coefficients()), region, tol)
        except MCPermError as exc:
            report.skipped += 1
            report.failures.append({"trial": trial, "reason": str(exc)})
            continue
        report.worst_distance = max(report.worst_distance, dist)
        if dist > tol:
            report.violations += 1
            report.failures.append({"trial": trial, "distance": dist,
                                    "g_roots": [str(r) for r in gg.roots]})
    return report
