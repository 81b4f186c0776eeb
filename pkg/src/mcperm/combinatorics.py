"""Permutation statistics, the cycle-to-linear map, and enumeration oracles.

Permutations are 1-based words: ``(3, 1, 2)`` sends 1 to 3, 2 to 1 and 3 to 2.
Every ``*_direct`` generating polynomial is computed by brute-force
enumeration so that it can serve as an oracle for the permanent formulas.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from math import factorial, prod
from typing import Iterator, Sequence

from .errors import CapExceeded, MCPermError
from .polyalg import ALPHA, Polynomial, UnivariatePolynomial, Var, y

FACTORIAL_CAP = 9


def _check_cap(n: int, cap: int) -> None:
    if n < 0:
        raise MCPermError("n must be nonnegative")
    if n > cap:
        raise CapExceeded(f"enumerating S_{n} exceeds cap {cap}")


def validate_permutation(word: Sequence[int]) -> tuple[int, ...]:
    w = tuple(int(c) for c in word)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise MCPermError(f"{word!r} is not a permutation of 1..{len(w)}")
    return w


def parse_permutation(text: str) -> tuple[int, ...]:
    """'341526978' (one digit per letter) or '3,4,1,...' for n >= 10."""
    text = text.strip()
    if not text:
        raise MCPermError("empty permutation")
    if "," in text or " " in text:
        parts = [p for p in text.replace(",", " ").split()]
    else:
        parts = list(text)
    try:
        return validate_permutation(int(p) for p in parts)
    except ValueError:
        raise MCPermError(f"cannot parse permutation {text!r}") from None


def format_permutation(word: Sequence[int]) -> str:
    if all(c < 10 for c in word):
        return "".join(str(c) for c in word)
    return ",".join(str(c) for c in word)


def cycles(sigma: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of sigma, each starting at its smallest element, ordered by that element."""
    sigma = validate_permutation(sigma)
    seen = set()
    out = []
    for start in range(1, len(sigma) + 1):
        if start in seen:
            continue
        cyc = []
        i = start
        while i not in seen:
            seen.add(i)
            cyc.append(i)
            i = sigma[i - 1]
        out.append(tuple(cyc))
    return out


def descents(word: Sequence[int]) -> list[int]:
    """Positions i (1-based) with word[i] > word[i+1]."""
    return [i + 1 for i in range(len(word) - 1) if word[i] > word[i + 1]]


def descent_tops(word: Sequence[int]) -> list[int]:
    return [word[i] for i in range(len(word) - 1) if word[i] > word[i + 1]]


def left_to_right_minima(word: Sequence[int]) -> list[int]:
    out = []
    for c in word:
        if not out or c < out[-1]:
            out.append(c)
    return out


def right_to_left_minima(word: Sequence[int]) -> list[int]:
    return left_to_right_minima(word[::-1])[::-1]


@dataclass(frozen=True)
class PermStats:
    exc: int
    des: int
    cyc: int
    descent_tops: frozenset
    exceedance_tops: frozenset
    lr_minima: int
    rl_minima: int

    def to_dict(self) -> dict:
        return {
            "exc": self.exc,
            "des": self.des,
            "cyc": self.cyc,
            "descent_tops": sorted(self.descent_tops),
            "exceedance_tops": sorted(self.exceedance_tops),
            "lr_minima": self.lr_minima,
            "rl_minima": self.rl_minima,
        }


def stats(sigma: Sequence[int]) -> PermStats:
    sigma = validate_permutation(sigma)
    exc_tops = frozenset(v for i, v in enumerate(sigma, 1) if v > i)
    tops = frozenset(descent_tops(sigma))
    return PermStats(
        exc=len(exc_tops),
        des=len(tops),
        cyc=len(cycles(sigma)),
        descent_tops=tops,
        exceedance_tops=exc_tops,
        lr_minima=len(left_to_right_minima(sigma)),
        rl_minima=len(right_to_left_minima(sigma)),
    )


def riordan_linear_map(sigma: Sequence[int]) -> tuple[int, ...]:
    """Write each cycle with its smallest element last, order cycles by that element, concatenate.

    Inside a cycle each letter is followed by its image, and every cycle
    boundary is an ascent.  So a descent top of the word is a letter i with
    sigma(i) < i, i.e. an exceedance value of sigma^{-1}, and the cycles
    become the right-to-left minima of the word.
    """
    out: list[int] = []
    for cyc in cycles(sigma):
        out.extend(cyc[1:] + cyc[:1])
    return tuple(out)


def pi_map(sigma: Sequence[int]) -> tuple[int, ...]:
    """Replace the largest letter by the last letter, or drop it when it is last."""
    sigma = validate_permutation(sigma)
    n = len(sigma)
    if n < 2:
        raise MCPermError("pi_map needs n >= 2")
    if sigma[-1] == n:
        return sigma[:-1]
    i = sigma.index(n)
    w = list(sigma[:-1])
    w[i] = sigma[-1]
    return tuple(w)


def pi_fiber_profile(n: int, k: int, cap: int = FACTORIAL_CAP) -> dict:
    """Fiber sizes of pi_map on the classes of S_n split by the row holding n.

    Class ``"D"`` holds sigma with sigma^{-1}(n) <= n - k, class ``i`` (for
    n - k < i <= n) those with sigma^{-1}(n) = i.  Returns
    ``{class: Counter(fiber size -> number of images)}`` together with the
    number of images hit, under key ``"images"``.
    """
    _check_cap(n, cap)
    if not 1 <= k <= n:
        raise MCPermError("need 1 <= k <= n")
    fibers: dict = {}
    for sigma in permutations(range(1, n + 1)):
        row = sigma.index(n) + 1
        cls = "D" if row <= n - k else row
        fibers.setdefault(cls, Counter())[pi_map(sigma)] += 1
    return {
        cls: {"sizes": Counter(c.values()), "images": len(c)}
        for cls, c in fibers.items()
    }


# -- generating polynomials by enumeration ----------------------------------------


def _product_poly(counter: Counter, var_of) -> Polynomial:
    """Sum over counter keys (sorted tuples of indices) of count * prod var_of(index)."""
    total = Polynomial()
    for key, count in counter.items():
        total = total + count * prod((Polynomial.var(var_of(i)) for i in key),
                                     start=Polynomial.constant(1))
    return total


def eulerian_poly_direct(n: int, statistic: str = "des",
                         cap: int = FACTORIAL_CAP) -> UnivariatePolynomial:
    """sum over S_n of t^stat, with stat 'des' or 'exc'."""
    _check_cap(n, cap)
    if statistic not in ("des", "exc"):
        raise MCPermError(f"unknown statistic {statistic!r}")
    counts = Counter()
    for sigma in permutations(range(1, n + 1)):
        if statistic == "des":
            counts[sum(1 for a, b in zip(sigma, sigma[1:]) if a > b)] += 1
        else:
            counts[sum(1 for i, v in enumerate(sigma, 1) if v > i)] += 1
    return UnivariatePolynomial([counts[d] for d in range(max(counts) + 1)])


def descent_top_poly_direct(n: int, cap: int = FACTORIAL_CAP) -> Polynomial:
    """sum over S_n of the product of y_v over descent tops v."""
    return shifted_descent_poly_direct(n, 1, cap)


def exceedance_top_poly_direct(n: int, cap: int = FACTORIAL_CAP) -> Polynomial:
    """sum over S_n of the product of y_sigma(i) over exceedances sigma(i) > i."""
    _check_cap(n, cap)
    counts = Counter()
    for sigma in permutations(range(1, n + 1)):
        counts[tuple(sorted(v for i, v in enumerate(sigma, 1) if v > i))] += 1
    return _product_poly(counts, y)


def shifted_descent_poly_direct(n: int, j: int, cap: int = FACTORIAL_CAP) -> Polynomial:
    """sum over S_n of the product of y_sigma(i) over positions with sigma(i) > sigma(i+1) + j - 1."""
    _check_cap(n, cap)
    if j < 1:
        raise MCPermError("shift j must be positive")
    counts = Counter()
    for sigma in permutations(range(1, n + 1)):
        counts[tuple(sorted(a for a, b in zip(sigma, sigma[1:]) if a > b + j - 1))] += 1
    return _product_poly(counts, y)


def lrmin_descent_poly_direct(n: int, alpha: Var = ALPHA, minima: str = "right-to-left",
                              cap: int = FACTORIAL_CAP) -> Polynomial:
    """sum over S_n of alpha^(number of minima) times the descent-top monomial.

    ``minima`` picks right-to-left minima (the image of cycles under
    ``riordan_linear_map``, the default) or left-to-right minima.
    """
    _check_cap(n, cap)
    if minima == "right-to-left":
        count_minima = right_to_left_minima
    elif minima == "left-to-right":
        count_minima = left_to_right_minima
    else:
        raise MCPermError(f"unknown minima kind {minima!r}")
    counts = Counter()
    for sigma in permutations(range(1, n + 1)):
        counts[(len(count_minima(sigma)), tuple(sorted(descent_tops(sigma))))] += 1
    a = Polynomial.var(alpha)
    total = Polynomial()
    for (m, tops), c in counts.items():
        total = total + c * a ** m * prod((Polynomial.var(y(v)) for v in tops),
                                          start=Polynomial.constant(1))
    return total


# -- multisets ---------------------------------------------------------------------


def _composition(v: Sequence[int]) -> tuple[int, ...]:
    v = tuple(int(c) for c in v)
    if not v or any(c < 1 for c in v):
        raise MCPermError("composition parts must be positive")
    return v


def multiset_permutations(v: Sequence[int], cap: int = FACTORIAL_CAP) -> Iterator[tuple[int, ...]]:
    """All rearrangements of 1^v1 2^v2 ... t^vt in lexicographic order."""
    v = _composition(v)
    _check_cap(sum(v), cap)
    w = [i + 1 for i, c in enumerate(v) for _ in range(c)]
    while True:
        yield tuple(w)
        i = len(w) - 2
        while i >= 0 and w[i] >= w[i + 1]:
            i -= 1
        if i < 0:
            return
        j = len(w) - 1
        while w[j] <= w[i]:
            j -= 1
        w[i], w[j] = w[j], w[i]
        w[i + 1:] = reversed(w[i + 1:])


def multiset_collapse(word: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """Replace letters 1..v1 by 1, the next v2 letters by 2, and so on."""
    v = _composition(v)
    block = []
    for i, c in enumerate(v):
        block.extend([i + 1] * c)
    if len(word) != len(block):
        raise MCPermError("word length does not match the composition")
    return tuple(block[c - 1] for c in word)


def multiset_descent_poly_direct(v: Sequence[int], cap: int = FACTORIAL_CAP) -> Polynomial:
    """sum over rearrangements of N(v) of the product of y_a over descent tops a."""
    counts = Counter()
    for w in multiset_permutations(v, cap):
        counts[tuple(sorted(descent_tops(w)))] += 1
    return _product_poly(counts, y)


# -- descent-top counts --------------------------------------------------------------


@dataclass(frozen=True)
class TopCounts:
    n: int
    single: dict
    pair: dict

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "single": {str(i): c for i, c in sorted(self.single.items())},
            "pair": {f"{i},{j}": c for (i, j), c in sorted(self.pair.items())},
        }


def top_counts(n: int, cap: int = FACTORIAL_CAP) -> TopCounts:
    """Top(i; n) for 1 <= i <= n and Top(i, j; n) for 1 <= i < j <= n."""
    _check_cap(n, cap)
    single = Counter({i: 0 for i in range(1, n + 1)})
    pair = Counter({(i, j): 0 for i in range(1, n + 1) for j in range(i + 1, n + 1)})
    for sigma in permutations(range(1, n + 1)):
        tops = sorted(descent_tops(sigma))
        single.update(tops)
        for a in range(len(tops)):
            for b in range(a + 1, len(tops)):
                pair[(tops[a], tops[b])] += 1
    return TopCounts(n, dict(single), dict(pair))


def count_permutations(n: int) -> int:
    return factorial(n)
