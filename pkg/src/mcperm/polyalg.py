"""Exact sparse multivariate polynomials over the rationals.

Coefficients are Python ``int`` or ``fractions.Fraction``; a coefficient whose
denominator is 1 is always stored as an ``int`` so integer-valued work stays
on the fast path.  Polynomials are immutable.

Canonical text form: terms in graded-lex order (higher degree first, ties
broken by the exponent of the earliest variable), variables ordered
namespace-major (x, y, z, t, alpha) then by index, e.g.
``2*z1*z2 + z1 + z2`` or ``-3/4*x1^2*y2 + 1``.
"""

from __future__ import annotations

import re
from enum import IntEnum
from fractions import Fraction
from math import comb, lcm
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

import numpy as np

from .errors import DimensionError, MCPermError


class Namespace(IntEnum):
    X = 0  # row variables
    Y = 1  # column variables
    Z = 2  # generic / column variables of J Z + A
    T = 3  # auxiliary
    ALPHA = 4


_PREFIX = {
    Namespace.X: "x",
    Namespace.Y: "y",
    Namespace.Z: "z",
    Namespace.T: "t",
    Namespace.ALPHA: "alpha",
}
_BY_PREFIX = {v: k for k, v in _PREFIX.items()}


class Var(NamedTuple):
    ns: Namespace
    index: int

    def __str__(self) -> str:
        prefix = _PREFIX[self.ns]
        if self.ns in (Namespace.T, Namespace.ALPHA) and self.index == 0:
            return prefix
        return f"{prefix}{self.index}"

    def __repr__(self) -> str:
        return f"Var({self})"

    @classmethod
    def parse(cls, name: str) -> "Var":
        m = re.fullmatch(r"(alpha|x|y|z|t)(\d*)", name.strip())
        if m is None:
            raise MCPermError(f"not a variable name: {name!r}")
        prefix, digits = m.groups()
        ns = _BY_PREFIX[prefix]
        if not digits:
            if ns in (Namespace.X, Namespace.Y, Namespace.Z):
                raise MCPermError(f"variable {name!r} needs an index")
            return cls(ns, 0)
        return cls(ns, int(digits))


def x(i: int) -> Var:
    return Var(Namespace.X, i)


def y(j: int) -> Var:
    return Var(Namespace.Y, j)


def z(j: int) -> Var:
    return Var(Namespace.Z, j)


def aux(i: int = 0) -> Var:
    return Var(Namespace.T, i)


T = Var(Namespace.T, 0)
ALPHA = Var(Namespace.ALPHA, 0)

# A monomial is a tuple of (Var, exponent) pairs sorted by Var, exponents > 0.
Monomial = tuple
ONE: Monomial = ()

Scalar = Union[int, Fraction]


def as_rational(c) -> Scalar:
    """Coerce ``c`` to an exact rational (int when integral)."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return as_rational(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return as_rational(Fraction(c.strip()))
    raise TypeError(f"expected an exact rational, got {type(c).__name__}: {c!r}")


def _clean(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_key(m: Monomial):
    return (-_mono_degree(m), tuple((v, -e) for v, e in m))


def _format_rational(c: Scalar) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _format_monomial(m: Monomial) -> str:
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)


class Polynomial:
    """Sparse polynomial: a map from monomials to nonzero rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = as_rational(c)
                if c:
                    m = tuple(sorted((v, e) for v, e in m if e))
                    if any(e < 0 for _, e in m):
                        raise MCPermError("negative exponent in monomial")
                    clean[m] = clean.get(m, 0) + c
            clean = {m: _clean(c) for m, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        c = as_rational(c)
        return cls._raw({ONE: c} if c else {})

    @classmethod
    def var(cls, v: Var) -> "Polynomial":
        return cls._raw({((v, 1),): 1})

    @classmethod
    def coerce(cls, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, Var):
            return cls.var(value)
        return cls.constant(value)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Scalar]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE in self._terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise MCPermError(f"polynomial is not constant: {self}")
        return self._terms.get(ONE, 0)

    def variables(self) -> tuple[Var, ...]:
        return tuple(sorted({v for m in self._terms for v, _ in m}))

    def degree(self, v: Var | None = None) -> int:
        """Total degree, or degree in ``v``; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if v is None:
            return max(_mono_degree(m) for m in self._terms)
        return max(dict(m).get(v, 0) for m in self._terms)

    def is_multiaffine(self) -> bool:
        return all(e <= 1 for m in self._terms for _, e in m)

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self._terms.items(), key=lambda item: _mono_key(item[0]))

    # -- ring operations --------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.coerce(other)
            except TypeError:
                return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _clean(s)
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            if isinstance(other, Var):
                other = Polynomial.var(other)
            else:
                try:
                    c = as_rational(other)
                except TypeError:
                    return NotImplemented
                if not c:
                    return Polynomial._raw({})
                return Polynomial._raw({m: _clean(a * c) for m, a in self._terms.items()})
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._raw({m: _clean(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise MCPermError("polynomial powers must be nonnegative integers")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution ----------------------------------------

    def partial(self, v: Var) -> "Polynomial":
        out = {}
        for m, c in self._terms.items():
            for pos, (w, e) in enumerate(m):
                if w == v:
                    if e == 1:
                        nm = m[:pos] + m[pos + 1:]
                    else:
                        nm = m[:pos] + ((w, e - 1),) + m[pos + 1:]
                    out[nm] = c * e
                    break
        return Polynomial._raw(out)

    def substitute(self, bindings: Mapping[Var, object]) -> "Polynomial":
        """Simultaneously replace variables by rationals or polynomials."""
        scalars = {}
        polys = {}
        for v, img in bindings.items():
            if isinstance(img, (Polynomial, Var)):
                img = Polynomial.coerce(img)
                if img.is_constant():
                    scalars[v] = img.constant_value()
                else:
                    polys[v] = img
            else:
                scalars[v] = as_rational(img)
        out: dict = {}
        power_cache: dict = {}
        poly_terms: list = []
        for m, c in self._terms.items():
            free = []
            bound = []
            for v, e in m:
                if v in scalars:
                    c = c * scalars[v] ** e
                elif v in polys:
                    bound.append((v, e))
                else:
                    free.append((v, e))
            if not c:
                continue
            if bound:
                poly_terms.append((tuple(free), c, tuple(bound)))
            else:
                key = tuple(free)
                out[key] = out.get(key, 0) + c
        result = Polynomial._raw({mm: _clean(cc) for mm, cc in out.items() if cc})
        for free, c, bound in poly_terms:
            term = Polynomial._raw({free: c})
            for v, e in bound:
                key = (v, e)
                if key not in power_cache:
                    power_cache[key] = polys[v] ** e
                term = term * power_cache[key]
            result = result + term
        return result

    def rename(self, mapping: Mapping[Var, Var]) -> "Polynomial":
        """Rename variables; variables mapped to a common target merge."""
        out: dict = {}
        for m, c in self._terms.items():
            d: dict = {}
            for v, e in m:
                w = mapping.get(v, v)
                d[w] = d.get(w, 0) + e
            nm = tuple(sorted(d.items()))
            out[nm] = out.get(nm, 0) + c
        return Polynomial._raw({m: _clean(c) for m, c in out.items() if c})

    def diagonalize(self, variables: Iterable[Var], target: Var) -> "Polynomial":
        return self.rename({v: target for v in variables})

    def coefficient_in(self, v: Var, power: int) -> "Polynomial":
        out = {}
        for m, c in self._terms.items():
            d = dict(m)
            if d.get(v, 0) == power:
                d.pop(v, None)
                out[tuple(sorted(d.items()))] = c
        return Polynomial._raw(out)

    def evaluate(self, point: Mapping[Var, object]) -> Scalar:
        """Exact value at a rational point (every variable must be bound)."""
        total = 0
        for m, c in self._terms.items():
            for v, e in m:
                try:
                    c = c * as_rational(point[v]) ** e
                except KeyError:
                    raise MCPermError(f"no value given for {v}") from None
            total += c
        return _clean(total)

    def to_univariate(self, v: Var) -> "UnivariatePolynomial":
        coeffs: dict[int, Scalar] = {}
        for m, c in self._terms.items():
            if m and (len(m) > 1 or m[0][0] != v):
                raise MCPermError(f"{self} is not univariate in {v}")
            e = m[0][1] if m else 0
            coeffs[e] = c
        if not coeffs:
            return UnivariatePolynomial(())
        return UnivariatePolynomial([coeffs.get(k, 0) for k in range(max(coeffs) + 1)])

    def restrict_line(self, base, direction, variables: Sequence[Var] | None = None
                      ) -> "UnivariatePolynomial":
        return restrict_line(self, base, direction, variables)

    # -- text ----------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            neg = c < 0
            a = -c if neg else c
            if not m:
                body = _format_rational(a)
            elif a == 1:
                body = _format_monomial(m)
            else:
                body = f"{_format_rational(a)}*{_format_monomial(m)}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse_polynomial(text)


class UnivariatePolynomial:
    """Dense univariate polynomial, coefficients constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Scalar, ...] = tuple(cs)

    @classmethod
    def _raw(cls, cs: list) -> "UnivariatePolynomial":
        while cs and not cs[-1]:
            cs.pop()
        u = cls.__new__(cls)
        u.coeffs = tuple(_clean(c) for c in cs)
        return u

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> "UnivariatePolynomial":
        cs = [as_rational(leading)]
        for r in roots:
            r = as_rational(r)
            new = [0] * (len(cs) + 1)
            for i, c in enumerate(cs):
                new[i + 1] += c
                new[i] -= r * c
            cs = new
        return cls._raw(cs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, UnivariatePolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "UnivariatePolynomial") -> "UnivariatePolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UnivariatePolynomial._raw(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other: "UnivariatePolynomial") -> "UnivariatePolynomial":
        return self + (-other)

    def __mul__(self, other) -> "UnivariatePolynomial":
        if not isinstance(other, UnivariatePolynomial):
            c = as_rational(other)
            return UnivariatePolynomial._raw([a * c for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UnivariatePolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UnivariatePolynomial._raw(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "UnivariatePolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        d = other.degree
        lead = Fraction(other.leading)
        quot = [Fraction(0)] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1 - d, -1, -1):
            q = rem[k + d] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return UnivariatePolynomial._raw(quot), UnivariatePolynomial._raw(rem[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UnivariatePolynomial":
        if self.is_zero():
            return self
        lead = Fraction(self.leading)
        return UnivariatePolynomial._raw([c / lead for c in self.coeffs])

    def to_polynomial(self, v: Var = T) -> Polynomial:
        return Polynomial({((v, k),) if k else ONE: c for k, c in enumerate(self.coeffs)})

    def __str__(self) -> str:
        return str(self.to_polynomial(T))

    def __repr__(self) -> str:
        return f"UnivariatePolynomial({str(self)!r})"


def poly_gcd(a: UnivariatePolynomial, b: UnivariatePolynomial) -> UnivariatePolynomial:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# -- module-level operations -------------------------------------------------


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return Polynomial.coerce(p) + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return Polynomial.coerce(p) * q


def partial_derivative(p: Polynomial, v: Var) -> Polynomial:
    return p.partial(v)


def substitute(p: Polynomial, bindings: Mapping[Var, object]) -> Polynomial:
    return p.substitute(bindings)


def diagonalize(p: Polynomial, variables: Iterable[Var], target: Var) -> Polynomial:
    return p.diagonalize(variables, target)


def coefficient_in(p: Polynomial, v: Var, power: int) -> Polynomial:
    return p.coefficient_in(v, power)


def apply_recurrence_operator(p: Polynomial, c, multiplier: Var,
                              diff_vars: Iterable[Var]) -> Polynomial:
    """Return ``c*p + multiplier * sum(dp/dv for v in diff_vars)``."""
    diff_vars = list(diff_vars)
    if multiplier in diff_vars:
        raise MCPermError(f"multiplier {multiplier} must not be differentiated")
    total = Polynomial()
    for v in diff_vars:
        total = total + p.partial(v)
    return p * c + total * Polynomial.var(multiplier)


def _int_poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def restrict_line(p: Polynomial, base, direction,
                  variables: Sequence[Var] | None = None) -> UnivariatePolynomial:
    """The univariate polynomial ``t -> p(base + t*direction)``.

    ``variables`` fixes the coordinate order; it defaults to ``p.variables()``.
    Every direction entry must be strictly positive.
    """
    variables = tuple(variables) if variables is not None else p.variables()
    base = [as_rational(c) for c in base]
    direction = [as_rational(c) for c in direction]
    if len(base) != len(variables) or len(direction) != len(variables):
        raise DimensionError(
            f"line has dimension {len(base)}/{len(direction)}, "
            f"polynomial needs {len(variables)}")
    if any(c <= 0 for c in direction):
        raise MCPermError("direction entries must be strictly positive")
    missing = set(p.variables()) - set(variables)
    if missing:
        raise DimensionError(f"no coordinate for {sorted(missing)}")
    if p.is_zero():
        return UnivariatePolynomial(())
    # Clear denominators: coordinate v is (A_v + t*B_v)/D with integers A, B, D.
    D = lcm(*(Fraction(c).denominator for c in base + direction)) if variables else 1
    L = lcm(*(Fraction(c).denominator for c in p._terms.values()))
    deg = p.degree()
    lines = {v: [int(a * D), int(b * D)] for v, a, b in zip(variables, base, direction)}
    powers: dict = {}
    acc = [0] * (deg + 1)
    for m, c in p._terms.items():
        term = [int(c * L) * D ** (deg - _mono_degree(m))]
        for v, e in m:
            key = (v, e)
            if key not in powers:
                pw = [1]
                for _ in range(e):
                    pw = _int_poly_mul(pw, lines[v])
                powers[key] = pw
            term = _int_poly_mul(term, powers[key])
        for k, c2 in enumerate(term):
            acc[k] += c2
    scale = L * D ** deg
    return UnivariatePolynomial._raw([Fraction(c, scale) for c in acc])


def _evaluate_scaled(p: Polynomial, nums: np.ndarray, D: np.ndarray, variables: Sequence[Var]):
    """Integer values L * D^deg * p(nums / D), one per row of ``nums``.

    ``nums`` is an object array of integer numerators over the per-row common
    denominator ``D``; L clears the coefficient denominators.  Returns
    (values, L, deg).
    """
    pos = {v: i for i, v in enumerate(variables)}
    missing = set(p.variables()) - set(pos)
    if missing:
        raise DimensionError(f"no coordinate for {sorted(missing)}")
    count = nums.shape[0]
    if p.is_zero():
        return np.zeros(count, dtype=object), 1, 0
    deg = p.degree()
    L = lcm(*(Fraction(c).denominator for c in p._terms.values()))
    dpow = [np.ones(count, dtype=object)]
    for _ in range(deg):
        dpow.append(dpow[-1] * D)
    cache: dict = {}
    total = np.zeros(count, dtype=object)
    for m, c in p._terms.items():
        acc = dpow[deg - _mono_degree(m)] * int(c * L)
        for v, e in m:
            key = (v, e)
            if key not in cache:
                cache[key] = nums[:, pos[v]] ** e
            acc = acc * cache[key]
        total = total + acc
    return total, L, deg


def evaluate_many(p: Polynomial, points: Iterable[Sequence], variables: Sequence[Var] | None = None
                  ) -> list[Scalar]:
    """Exact values of ``p`` at many rational points (coordinates in ``variables`` order).

    Works in integers with a per-point common denominator and vectorizes over
    points with object arrays, which is far cheaper than Fraction arithmetic.
    """
    variables = tuple(variables) if variables is not None else p.variables()
    pts = [[Fraction(as_rational(c)) for c in pt] for pt in points]
    if not pts:
        return []
    for pt in pts:
        if len(pt) != len(variables):
            raise DimensionError(f"point has {len(pt)} coordinates, expected {len(variables)}")
    dens = [lcm(*(c.denominator for c in pt)) if pt else 1 for pt in pts]
    nums = np.empty((len(pts), len(variables)), dtype=object)
    for r, (pt, d) in enumerate(zip(pts, dens)):
        for i, c in enumerate(pt):
            nums[r, i] = c.numerator * (d // c.denominator)
    total, L, deg = _evaluate_scaled(p, nums, np.array(dens, dtype=object), variables)
    return [_clean(Fraction(int(t), int(L * d ** deg))) for t, d in zip(total, dens)]


def evaluate_signs(p: Polynomial, numerators, denominators, variables: Sequence[Var]
                   ) -> np.ndarray:
    """Signs of ``p`` at points given as integer arrays: coordinate (r, i) is num[r, i] / den[r, i].

    Denominators must be positive.  Only integer arithmetic is used.
    """
    num = np.asarray(numerators, dtype=np.int64)
    den = np.asarray(denominators, dtype=np.int64)
    if num.shape != den.shape or num.ndim != 2 or num.shape[1] != len(variables):
        raise DimensionError("numerator/denominator arrays must be (points, len(variables))")
    if (den <= 0).any():
        raise MCPermError("denominators must be positive")
    D = np.lcm.reduce(den, axis=1) if num.shape[1] else np.ones(num.shape[0], dtype=np.int64)
    nums = (num * (D[:, None] // den)).astype(object)
    total, _, _ = _evaluate_scaled(p, nums, D.astype(object), variables)
    return np.array([(t > 0) - (t < 0) for t in total], dtype=np.int64)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(alpha\d*|[xyz]\d+|t\d*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("var", name))
        else:
            if sym not in "+-*/^()":
                raise MCPermError(f"unexpected character {sym!r} in {text!r}")
            tokens.append(("sym", sym))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, sym=None):
        tok = self.peek()
        if tok[0] is None or (sym is not None and tok[1] != sym):
            raise MCPermError(f"parse error in {self.text!r} near token {self.i}")
        self.i += 1
        return tok

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.peek()[1] == "*":
            self.take()
            result = result * self.unary()
        return result

    def unary(self) -> Polynomial:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise MCPermError(f"exponent must be an integer in {self.text!r}")
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            if self.peek()[1] == "/":
                self.take()
                k2, den = self.take()
                if k2 != "num":
                    raise MCPermError(f"bad rational literal in {self.text!r}")
                return Polynomial.constant(Fraction(int(val), int(den)))
            return Polynomial.constant(int(val))
        if kind == "var":
            return Polynomial.var(Var.parse(val))
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise MCPermError(f"unexpected {val!r} in {self.text!r}")


def parse_polynomial(text: str) -> Polynomial:
    """Parse the canonical text grammar (also accepts parentheses)."""
    parser = _Parser(text)
    if not parser.tokens:
        raise MCPermError("empty polynomial text")
    result = parser.expr()
    if parser.i != len(parser.tokens):
        raise MCPermError(f"trailing input in {text!r}")
    return result


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
