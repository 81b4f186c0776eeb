"""Permanent engines.

* ``permanent_ryser``: inclusion-exclusion over column subsets, visited in
  Gray-code order so each step updates the row sums by a single column.
* ``permanent_subset_dp``: dynamic program over (rows processed, used
  columns); the default for polynomial entries.
* ``permanent_enumerate``: the defining sum over all permutations.

All engines are exact and work on rationals or Polynomials.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import prod
from typing import Sequence

from .errors import CapExceeded, DimensionError
from .matrices import MonotoneColumnMatrix, build_JZ_plus_A
from .polyalg import ALPHA, Polynomial, Var, as_rational

ENUMERATION_CAP = 10
SYMBOLIC_CAP = 8


def _rows(M) -> list[list]:
    entries = getattr(M, "entries", M)
    rows = [list(r) for r in entries]
    if not rows or not rows[0]:
        raise DimensionError("matrix must be nonempty")
    if any(len(r) != len(rows[0]) for r in rows):
        raise DimensionError("ragged matrix")
    return rows


def _is_symbolic(rows) -> bool:
    return any(isinstance(c, (Polynomial, Var)) for r in rows for c in r)


def _normalize(rows):
    """Return (rows, symbolic); constant polynomial entries are treated as numbers."""
    if _is_symbolic(rows):
        return [[Polynomial.coerce(c) for c in r] for r in rows], True
    return [[as_rational(c) for c in r] for r in rows], False


def _finish(value, symbolic):
    if symbolic:
        return Polynomial.coerce(value)
    return as_rational(value)


def _square(rows) -> int:
    n = len(rows)
    if len(rows[0]) != n:
        raise DimensionError(f"permanent needs a square matrix, got {n}x{len(rows[0])}")
    return n


def permanent_enumerate(M, cap: int = ENUMERATION_CAP):
    rows, symbolic = _normalize(_rows(M))
    n = _square(rows)
    if n > cap:
        raise CapExceeded(f"enumeration of S_{n} exceeds cap {cap}")
    total = 0
    for sigma in permutations(range(n)):
        total = total + prod((rows[i][sigma[i]] for i in range(n)), start=1)
    return _finish(total, symbolic)


def permanent_ryser(M):
    rows, symbolic = _normalize(_rows(M))
    n = _square(rows)
    sums = [0] * n
    total = 0
    gray = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        gray ^= 1 << j
        if gray >> j & 1:
            sums = [s + r[j] for s, r in zip(sums, rows)]
        else:
            sums = [s - r[j] for s, r in zip(sums, rows)]
        term = prod(sums, start=1)
        if (bin(gray).count("1") - n) % 2:
            total = total - term
        else:
            total = total + term
    return _finish(total, symbolic)


def permanent_subset_dp(M):
    rows, symbolic = _normalize(_rows(M))
    n = _square(rows)
    dp = {0: 1}
    for row in rows:
        new: dict = {}
        nonzero = [(j, c) for j, c in enumerate(row) if c]
        for mask, val in dp.items():
            for j, c in nonzero:
                bit = 1 << j
                if mask & bit:
                    continue
                term = val * c
                key = mask | bit
                new[key] = new[key] + term if key in new else term
        dp = new
    return _finish(dp.get((1 << n) - 1, 0), symbolic)


_ENGINES = {
    "enumerate": permanent_enumerate,
    "subset-dp": permanent_subset_dp,
    "inclusion-exclusion": permanent_ryser,
    "ryser": permanent_ryser,
}


def permanent(M, engine: str = "auto"):
    """Exact permanent; ``auto`` uses Ryser for numbers and the subset DP for polynomials."""
    if engine == "auto":
        rows = _rows(M)
        engine = "subset-dp" if _is_symbolic(rows) else "inclusion-exclusion"
    try:
        fn = _ENGINES[engine]
    except KeyError:
        raise ValueError(f"unknown engine {engine!r}") from None
    return fn(M)


def permanent_numeric(M, engine: str = "inclusion-exclusion"):
    rows = _rows(M)
    if _is_symbolic(rows):
        raise TypeError("permanent_numeric needs rational entries")
    return permanent(rows, engine)


def permanent_symbolic(M, engine: str = "subset-dp", cap: int = SYMBOLIC_CAP) -> Polynomial:
    rows = _rows(M)
    if len(rows) > cap:
        raise CapExceeded(f"symbolic permanent of size {len(rows)} exceeds cap {cap}")
    return Polynomial.coerce(permanent(rows, engine))


def k_permanents(M, kmax: int | None = None) -> list:
    """[per_0(M), per_1(M), ..., per_kmax(M)] for a rectangular matrix.

    One pass of a DP in which each row is either skipped or matched to an
    unused column; masks with k bits accumulate the k-permanent.
    """
    rows, symbolic = _normalize(_rows(M))
    m, n = len(rows), len(rows[0])
    top = min(m, n) if kmax is None else kmax
    if not 0 <= top <= min(m, n):
        raise DimensionError(f"k must lie in [0, {min(m, n)}]")
    dp = {0: 1}
    for row in rows:
        new = dict(dp)
        nonzero = [(j, c) for j, c in enumerate(row) if c]
        for mask, val in dp.items():
            if bin(mask).count("1") >= top:
                continue
            for j, c in nonzero:
                bit = 1 << j
                if mask & bit:
                    continue
                term = val * c
                key = mask | bit
                new[key] = new[key] + term if key in new else term
        dp = new
    out = [0] * (top + 1)
    for mask, val in dp.items():
        k = bin(mask).count("1")
        out[k] = out[k] + val
    return [_finish(v, symbolic) for v in out]


def k_permanent_enumerate(M, k: int):
    """per_k by the defining triple sum over row sets, column sets and bijections."""
    rows, symbolic = _normalize(_rows(M))
    m, n = len(rows), len(rows[0])
    if not 0 <= k <= min(m, n):
        raise DimensionError(f"k must lie in [0, {min(m, n)}]")
    total = 0
    for R in combinations(range(m), k):
        for C in combinations(range(n), k):
            for beta in permutations(C):
                total = total + prod((rows[i][c] for i, c in zip(R, beta)), start=1)
    return _finish(total, symbolic)


def k_permanent(M, k: int, engine: str = "auto"):
    if engine == "enumerate":
        return k_permanent_enumerate(M, k)
    rows = _rows(M)
    if not 0 <= k <= min(len(rows), len(rows[0])):
        raise DimensionError(f"k must lie in [0, {min(len(rows), len(rows[0]))}]")
    return k_permanents(rows, k)[k]


def cycle_count(sigma: Sequence[int]) -> int:
    """Number of cycles of a 0-based permutation word."""
    seen = [False] * len(sigma)
    cycles = 0
    for start in range(len(sigma)):
        if not seen[start]:
            cycles += 1
            i = start
            while not seen[i]:
                seen[i] = True
                i = sigma[i]
    return cycles


def alpha_permanent(M, alpha=ALPHA, cap: int = ENUMERATION_CAP):
    """sum over sigma of alpha^cyc(sigma) * prod_i M[i][sigma(i)], by enumeration.

    ``alpha`` may be a variable (symbolic result) or a rational.
    """
    rows, symbolic = _normalize(_rows(M))
    n = _square(rows)
    if n > cap:
        raise CapExceeded(f"alpha-permanent enumeration of S_{n} exceeds cap {cap}")
    by_cycles: dict[int, object] = {}
    for sigma in permutations(range(n)):
        term = prod((rows[i][sigma[i]] for i in range(n)), start=1)
        if not term:
            continue
        c = cycle_count(sigma)
        by_cycles[c] = by_cycles[c] + term if c in by_cycles else term
    if isinstance(alpha, Var):
        a = Polynomial.var(alpha)
        total = Polynomial()
        for c, coeff in by_cycles.items():
            total = total + a ** c * coeff
        return total
    a = as_rational(alpha)
    total = sum((a ** c * coeff for c, coeff in by_cycles.items()), start=0)
    return _finish(total, symbolic)


def mcp_polynomial(A) -> Polynomial:
    """per(z_j + a_ij) for a square monotone column matrix."""
    if not isinstance(A, MonotoneColumnMatrix):
        A = A.to_monotone() if hasattr(A, "to_monotone") else MonotoneColumnMatrix(A)
    if A.rows != A.cols:
        raise DimensionError("mcp_polynomial needs a square matrix")
    return permanent_symbolic(build_JZ_plus_A(A))


def k_sub_mcp_polynomial(A, k: int) -> Polynomial:
    """per_k(z_j + a_ij) for a rectangular monotone column matrix."""
    if not isinstance(A, MonotoneColumnMatrix):
        A = A.to_monotone() if hasattr(A, "to_monotone") else MonotoneColumnMatrix(A)
    return Polynomial.coerce(k_permanent(build_JZ_plus_A(A), k))
