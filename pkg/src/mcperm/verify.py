"""Verification harness: exact identity checks and stability probes with JSON reports.

A suite expands into a list of *case specs* ``(kind, case_id, inputs)``.
Every spec is plain data, so a case can run in a worker process, be
serialized into a report, and be replayed standalone with ``run_case``.
Results come back in spec order, so reports do not depend on ``jobs``.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial, prod

import numpy as np

from . import apolarity as ap
from . import combinatorics as cb
from .errors import MCPermError
from .matrices import (FerrersMatrix, MonotoneColumnMatrix, SymbolicMatrix, all_ferrers,
                       build_B, build_JZ_plus_A, build_y_form, columns_to_ones, eulerian_matrix,
                       ferrers_dual, multiset_eulerian_matrix, pad_cols, pad_rows,
                       random_monotone_matrix, shifted_eulerian_matrix, truncate)
from .permanent import (alpha_permanent, cycle_count, k_permanent, k_permanents,
                        mcp_polynomial, permanent, permanent_enumerate, permanent_ryser,
                        permanent_subset_dp, permanent_symbolic)
from .polyalg import (ALPHA, T, Namespace, Polynomial, Var, apply_recurrence_operator,
                      as_rational, x, y, z)
from .stability import rayleigh_all_pairs, real_rooted, stability_sample_test

SCHEMA_VERSION = 1
THEOREM = "theorem-backed"
PROBE = "conjecture-probe"


# -- reports ------------------------------------------------------------------------


@dataclass
class SuiteReport:
    suite: str
    label: str
    seed: int | None
    trials: int | None
    universe: int
    cases_run: int = 0
    cases_passed: int = 0
    failures: list = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_time: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "label": self.label,
            "seed": self.seed,
            "trials": self.trials,
            "parameters": self.parameters,
            "universe": self.universe,
            "cases_run": self.cases_run,
            "cases_passed": self.cases_passed,
            "failures": self.failures,
        }
        if include_time and self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, include_time: bool = False) -> str:
        return json.dumps(self.to_dict(include_time), indent=2, sort_keys=True)


def exit_code(reports) -> int:
    """0 all pass, 2 a theorem-backed failure, 3 only conjecture-probe refutations."""
    if any(r.failures and r.label == THEOREM for r in reports):
        return 2
    if any(r.failures for r in reports):
        return 3
    return 0


# -- serialization helpers -------------------------------------------------------------


def _q(c) -> str:
    return str(as_rational(c))


def ferrers_inputs(A: FerrersMatrix) -> dict:
    return {"rows": A.rows, "heights": list(A.heights)}


def _ferrers(inputs: dict) -> FerrersMatrix:
    return FerrersMatrix(inputs["rows"], tuple(inputs["heights"]))


def matrix_inputs(A) -> dict:
    return {"entries": [[_q(c) for c in row] for row in A.entries]}


def _monotone(inputs: dict) -> MonotoneColumnMatrix:
    return MonotoneColumnMatrix([[Fraction(c) for c in row] for row in inputs["entries"]])


def _hs(A: FerrersMatrix) -> str:
    return f"{A.rows}x{A.cols}/h=" + ",".join(str(h) for h in A.heights)


def _ok(passed: bool, expected, got, **extra) -> dict:
    out = {"passed": bool(passed), "expected": expected, "got": got}
    out.update(extra)
    return out


def _case_seed(seed: int, *path: int) -> int:
    return int(np.random.SeedSequence([seed, *path]).generate_state(1, np.uint64)[0])


def _zs(n: int) -> list[Var]:
    return [z(j) for j in range(1, n + 1)]


# -- single-case checks ---------------------------------------------------------------


def _recurrence_rhs(A: FerrersMatrix, alpha: bool):
    """Right-hand side of the recurrence, after dualizing when a_nn = 1."""
    n = A.rows
    row_ns, col_ns = Namespace.X, Namespace.Y
    if A.heights[-1] == n:
        # per(B(A; x; y)) = per(B(A^v; y; x)), and A^v has a zero in its corner
        A = ferrers_dual(A)
        row_ns, col_ns = Namespace.Y, Namespace.X
    k = n - A.heights[-1]
    inner = build_B(truncate(A), row_ns, col_ns)
    if alpha:
        P = alpha_permanent(inner)
        c = Polynomial.var(ALPHA) + (k - 1)
    else:
        P = permanent_symbolic(inner)
        c = k
    r_n, c_n = Var(row_ns, n), Var(col_ns, n)
    diff = [Var(row_ns, i) for i in range(1, n - k + 1)] + [Var(col_ns, j) for j in range(1, n)]
    return Polynomial.var(r_n) * apply_recurrence_operator(P, c, c_n, diff), k


def check_recurrence(A: FerrersMatrix, alpha: bool = False) -> dict:
    """per(B(A)) (or its alpha version) against the first-order recurrence in A's truncation."""
    if A.rows != A.cols:
        raise MCPermError("the recurrence needs a square Ferrers matrix")
    B = build_B(A)
    lhs = alpha_permanent(B) if alpha else permanent_symbolic(B)
    if A.rows == 1:
        expected = Polynomial.var(B.entries[0][0].variables()[0])
        if alpha:
            expected = expected * Polynomial.var(ALPHA)
        return _ok(lhs == expected, str(expected), str(lhs), base_case=True)
    rhs, k = _recurrence_rhs(A, alpha)
    return _ok(lhs == rhs, str(rhs), str(lhs), terms=len(lhs), k=k)


def _monomial(entries) -> Polynomial:
    return prod((Polynomial.coerce(e) for e in entries), start=Polynomial.constant(1))


def check_term_classes(A: FerrersMatrix) -> dict:
    """Term-by-term bookkeeping behind the recurrence, for A with a_nn = 0.

    Terms with n in a row i > n - k map bijectively onto the terms of the
    truncation with T_sigma = x_n T_pi; the remaining terms map (n-k)-to-one
    with v_sigma T_sigma = x_n y_n T_pi.  Cycle counts drop by one exactly
    when sigma(n) = n.
    """
    n = A.rows
    if A.heights[-1] == n:
        raise MCPermError("term classes need a zero in the last column")
    k = n - A.heights[-1]
    B = build_B(A).entries
    Bo = build_B(truncate(A)).entries
    allowed = {x(i) for i in range(1, n - k + 1)} | {y(j) for j in range(1, n)}
    xn, xy = Polynomial.var(x(n)), Polynomial.var(x(n)) * Polynomial.var(y(n))
    fibers: dict = {}
    bad = []
    for sigma in permutations(range(1, n + 1)):
        pi = cb.pi_map(sigma)
        i_s = sigma.index(n) + 1
        T_s = _monomial(B[i - 1][sigma[i - 1] - 1] for i in range(1, n + 1))
        T_p = _monomial(Bo[i - 1][pi[i - 1] - 1] for i in range(1, n))
        cyc_s, cyc_p = cycle_count([c - 1 for c in sigma]), cycle_count([c - 1 for c in pi])
        if i_s > n - k:
            cls = i_s
            ok = T_s == xn * T_p
        else:
            cls = "D"
            v = Bo[i_s - 1][sigma[-1] - 1]
            ok = v.variables()[0] in allowed and Polynomial.coerce(v) * T_s == xy * T_p
        ok &= cyc_s == cyc_p + (1 if i_s == n else 0)
        if not ok:
            bad.append(cb.format_permutation(sigma))
        fibers.setdefault(cls, {}).setdefault(pi, 0)
        fibers[cls][pi] += 1
    full = factorial(n - 1)
    for cls, fib in fibers.items():
        size = n - k if cls == "D" else 1
        if len(fib) != full or set(fib.values()) != {size}:
            bad.append(f"fiber-{cls}")
    return _ok(not bad, "all terms consistent", bad or "all terms consistent")


def check_duality(A: FerrersMatrix, k: int, alpha: bool = False) -> dict:
    """per_k(B(A^v; x; y)) = per_k(B(A; y; x)), or the alpha version for square A."""
    dual = build_B(ferrers_dual(A), Namespace.X, Namespace.Y)
    swapped = build_B(A, Namespace.Y, Namespace.X)
    if alpha:
        lhs, rhs = alpha_permanent(dual), alpha_permanent(swapped)
    else:
        lhs, rhs = k_permanent(dual, k), k_permanent(swapped, k)
    return _ok(lhs == rhs, str(rhs), str(lhs))


def z_to_y_form(A: FerrersMatrix) -> Polynomial:
    """z_1...z_n per(a_ij y_j + 1 - a_ij) at y_j = (z_j + 1)/z_j, computed in Q[z, u]/(z_j u_j - 1)."""
    n = A.cols
    q = permanent_symbolic(build_y_form(A))
    us = [Var(Namespace.T, j) for j in range(1, n + 1)]
    sub = q.substitute({y(j): (Polynomial.var(z(j)) + 1) * Polynomial.var(us[j - 1])
                        for j in range(1, n + 1)})
    sub = sub * prod((Polynomial.var(v) for v in _zs(n)), start=Polynomial.constant(1))
    out: dict = {}
    for m, c in sub.terms.items():
        d = dict(m)
        for j in range(1, n + 1):
            e_u = d.pop(us[j - 1], 0)
            e_z = d.get(z(j), 0)
            if e_u > e_z:
                raise MCPermError("a negative power of z survived the substitution")
            if e_z - e_u:
                d[z(j)] = e_z - e_u
            else:
                d.pop(z(j), None)
        key = tuple(sorted(d.items()))
        out[key] = out.get(key, 0) + c
    return Polynomial(out)


def check_z_to_y(A: FerrersMatrix) -> dict:
    lhs = mcp_polynomial(A)
    rhs = z_to_y_form(A)
    return _ok(lhs == rhs, str(lhs), str(rhs))


def check_mmcpc(A, seed: int, trials: int, points: int,
                univariate: bool = True, multivariate: bool = True) -> dict:
    """Real-rootedness of the diagonal, line sampling, and Rayleigh differences of per(z_j + a_ij)."""
    p = mcp_polynomial(A)
    n = A.rows
    zs = _zs(n)
    problems = {}
    if univariate:
        diag = p.diagonalize(zs, T).to_univariate(T)
        if not real_rooted(diag):
            problems["diagonal"] = str(diag)
    if multivariate:
        verdict = stability_sample_test(p, trials=trials, seed=seed, variables=zs)
        if not verdict.passed:
            problems["sampling"] = verdict.witness
        for res in rayleigh_all_pairs(p, points, seed, variables=zs):
            if not res.passed:
                problems[f"rayleigh {res.pair[0]},{res.pair[1]}"] = res.witness
                break
    return _ok(not problems, "stable", problems or "stable", polynomial=str(p))


def check_padding_B(A: FerrersMatrix) -> dict:
    """per(B(A padded to n x n)) = (n-m)! x_n ... x_(m+1) per_m(B(A)), and the t-expansion."""
    m, n = A.shape
    if m > n:
        raise MCPermError("the row-padding identity needs m <= n")
    B = build_B(A)
    ks = k_permanents(B)
    lhs = permanent_symbolic(build_B(pad_rows(A, n - m)))
    rhs = factorial(n - m) * prod((Polynomial.var(x(i)) for i in range(m + 1, n + 1)),
                                  start=Polynomial.constant(1)) * ks[m]
    t = Polynomial.var(T)
    shifted = B.map(lambda e: e + t)
    lhs_t = k_permanent(shifted, m)
    rhs_t = sum((ks[k] * comb(n - k, m - k) * factorial(m - k) * t ** (m - k)
                 for k in range(m + 1)), start=Polynomial())
    ok = lhs == rhs and lhs_t == rhs_t
    return _ok(ok, [str(rhs), str(rhs_t)], [str(lhs), str(lhs_t)])


def check_padding_JZ(A: MonotoneColumnMatrix) -> dict:
    """per(J_m Z_m + A') = (m-n)! z_m ... z_(n+1) per_n(J Z + A), and the t-expansion."""
    m, n = A.shape
    if m < n:
        raise MCPermError("the column-padding identity needs m >= n")
    M = build_JZ_plus_A(A)
    ks = k_permanents(M)
    lhs = permanent_symbolic(build_JZ_plus_A(pad_cols(A, m - n)))
    rhs = factorial(m - n) * prod((Polynomial.var(z(j)) for j in range(n + 1, m + 1)),
                                  start=Polynomial.constant(1)) * ks[n]
    t = Polynomial.var(T)
    lhs_t = k_permanent(M.map(lambda e: e + t), n)
    rhs_t = sum((ks[k] * comb(m - k, n - k) * factorial(n - k) * t ** (n - k)
                 for k in range(n + 1)), start=Polynomial())
    ok = lhs == rhs and lhs_t == rhs_t
    return _ok(ok, [str(rhs), str(rhs_t)], [str(lhs), str(lhs_t)])


def check_k_stability(M: SymbolicMatrix, k: int, seed: int, trials: int, variables,
                      points: int = 0) -> dict:
    p = Polynomial.coerce(k_permanent(M, k))
    verdict = stability_sample_test(p, trials=trials, seed=seed, variables=variables)
    problems = {}
    if not verdict.passed:
        problems["sampling"] = verdict.witness
    if points and p.is_multiaffine() and len(variables) > 1:
        for res in rayleigh_all_pairs(p, points, seed, variables=variables):
            if not res.passed:
                problems[f"rayleigh {res.pair[0]},{res.pair[1]}"] = res.witness
                break
    return _ok(not problems, "stable", problems or "stable", polynomial=str(p))


def _y_fusion(v) -> dict:
    mapping = {}
    col = 1
    for block, part in enumerate(v, 1):
        for _ in range(part):
            mapping[y(col)] = y(block)
            col += 1
    return mapping


def multiset_permanent_side(v) -> Polynomial:
    """(1 / prod v_i!) per(B(E(v); 1; Y(v)))."""
    P = permanent_symbolic(build_y_form(multiset_eulerian_matrix(v))).rename(_y_fusion(v))
    return P * Fraction(1, prod(factorial(c) for c in v))


def check_multiset(v) -> dict:
    lhs = multiset_permanent_side(v)
    rhs = cb.multiset_descent_poly_direct(v)
    n = sum(v)
    diag = rhs.diagonalize([y(i) for i in range(1, len(v) + 1)], T).to_univariate(T)
    counts: dict = {}
    for sigma in permutations(range(1, n + 1)):
        w = cb.multiset_collapse(cb.riordan_linear_map(sigma), v)
        counts[w] = counts.get(w, 0) + 1
    words = list(cb.multiset_permutations(v))
    fiber_ok = (sorted(counts) == words
                and set(counts.values()) == {prod(factorial(c) for c in v)})
    ok = lhs == rhs and real_rooted(diag) and fiber_ok
    return _ok(ok, str(rhs), str(lhs), diagonal=str(diag), fibers_uniform=fiber_ok)


def check_eulerian(n: int) -> dict:
    P = permanent_symbolic(build_y_form(eulerian_matrix(n)))
    problems = []
    if P != cb.descent_top_poly_direct(n):
        problems.append("descent-top form")
    if P != cb.exceedance_top_poly_direct(n):
        problems.append("exceedance-top form")
    diag = P.diagonalize([y(j) for j in range(1, n + 1)], T).to_univariate(T)
    des = cb.eulerian_poly_direct(n, "des")
    if diag != des or des != cb.eulerian_poly_direct(n, "exc"):
        problems.append("eulerian equidistribution")
    if not real_rooted(diag):
        problems.append("real roots")
    if alpha_permanent(build_y_form(eulerian_matrix(n))) != cb.lrmin_descent_poly_direct(n):
        problems.append("cycle-weighted form")
    for j in range(2, n + 1):
        if permanent_symbolic(build_y_form(shifted_eulerian_matrix(n, j))) != \
                cb.shifted_descent_poly_direct(n, j):
            problems.append(f"shift {j}")
    return _ok(not problems, str(cb.descent_top_poly_direct(n)), problems or str(P),
               eulerian=str(diag))


def check_top_inequality(n: int) -> dict:
    tc = cb.top_counts(n)
    f = cb.descent_top_poly_direct(n)
    ones = {y(j): 1 for j in range(1, n + 1)}
    problems = []
    for i in range(2, n + 1):
        if f.partial(y(i)).evaluate(ones) != tc.single[i]:
            problems.append(f"Top({i}) mismatch")
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            if f.partial(y(i)).partial(y(j)).evaluate(ones) != tc.pair[(i, j)]:
                problems.append(f"Top({i},{j}) mismatch")
            if tc.single[i] * tc.single[j] < factorial(n) * tc.pair[(i, j)]:
                problems.append(f"inequality fails at {i},{j}")
    return _ok(not problems, "all pairs satisfy the inequality", problems or tc.to_dict())


def column_measure(A: MonotoneColumnMatrix) -> dict:
    """mu(S) = per(A_S) for every column set S (frozensets of 1-based indices)."""
    n = A.cols
    return {frozenset(S): permanent(columns_to_ones(A, S).entries)
            for r in range(n + 1) for S in combinations(range(1, n + 1), r)}


def check_pair_inequality(A: MonotoneColumnMatrix) -> dict:
    mu = column_measure(A)
    n = A.cols
    count = 0
    for S, val in mu.items():
        rest = [i for i in range(1, n + 1) if i not in S]
        for i, j in combinations(rest, 2):
            count += 1
            lhs = mu[S | {i}] * mu[S | {j}]
            rhs = mu[S | {i, j}] * val
            if lhs < rhs:
                return _ok(False, "lhs >= rhs", {"S": sorted(S), "i": i, "j": j,
                                                   "lhs": _q(lhs), "rhs": _q(rhs)})
    return _ok(True, "lhs >= rhs", f"{count} inequalities hold")


def check_log_submodular(A: MonotoneColumnMatrix) -> dict:
    mu = column_measure(A)
    count = 0
    for S in mu:
        for T_ in mu:
            count += 1
            if mu[S] * mu[T_] < mu[S | T_] * mu[S & T_]:
                return _ok(False, "mu(S)mu(T) >= mu(S|T)mu(S&T)",
                           {"S": sorted(S), "T": sorted(T_)})
    return _ok(True, "mu(S)mu(T) >= mu(S|T)mu(S&T)", f"{count} pairs hold")


def check_column_sum_bound(A: MonotoneColumnMatrix) -> dict:
    n = A.cols
    per = permanent(A.entries)
    sums = [sum(row[j] for row in A.entries) for j in range(n)]
    bound = Fraction(prod(sums) * factorial(n), n ** n)
    return _ok(per <= bound, f"<= {_q(bound)}", _q(per))


def check_negative_association(A: MonotoneColumnMatrix) -> dict:
    """Threshold indicators 1[|S & U| >= u], 1[|S & V| >= v] for disjoint U, V."""
    mu = column_measure(A)
    n = A.cols
    total = sum(mu.values())
    cols = range(1, n + 1)
    count = 0
    for ru in range(1, n):
        for U in combinations(cols, ru):
            rest = [c for c in cols if c not in U]
            for rv in range(1, len(rest) + 1):
                for V in combinations(rest, rv):
                    U_, V_ = set(U), set(V)
                    for u in range(1, ru + 1):
                        for v in range(1, rv + 1):
                            count += 1
                            f = {S: len(S & U_) >= u for S in mu}
                            g = {S: len(S & V_) >= v for S in mu}
                            i_fg = sum(w for S, w in mu.items() if f[S] and g[S])
                            i_f = sum(w for S, w in mu.items() if f[S])
                            i_g = sum(w for S, w in mu.items() if g[S])
                            if i_fg * total > i_f * i_g:
                                return _ok(False, "int fg * int 1 <= int f * int g",
                                           {"U": list(U), "V": list(V), "u": u, "v": v})
    return _ok(True, "int fg * int 1 <= int f * int g", f"{count} instances hold")


def _random_rooted(rng, n: int) -> ap.RootedPolynomial:
    lead = Fraction(int(rng.choice([-1, 1])) * int(rng.integers(1, 6)), int(rng.integers(1, 4)))
    roots = tuple(as_rational(Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))))
                  for _ in range(n))
    return ap.RootedPolynomial(as_rational(lead), roots)


def apolarity_pair(seed: int, index: int):
    rng = np.random.default_rng([seed, index])
    n = 1 + index % 5
    f, g = _random_rooted(rng, n), _random_rooted(rng, n)
    while True:
        a, b, c, d = (int(v) for v in rng.integers(-5, 6, size=4))
        if a * d - b * c and not any(c * r + d == 0 for r in f.roots + g.roots):
            return f, g, ap.MobiusMap(a, b, c, d)


def check_apolarity_pair(seed: int, index: int) -> dict:
    f, g, phi = apolarity_pair(seed, index)
    n = f.degree
    problems = []
    form = ap.apolarity_form(f, g)
    if form != ap.permanent_form(f, g):
        problems.append("form vs root permanent")
    fh, gh = ap.mobius_transform(f, phi), ap.mobius_transform(g, phi)
    if fh.monic() != ap.RootedPolynomial(1, tuple(phi(r) for r in f.roots)).expand():
        problems.append("transformed roots")
    if ap.apolarity_form(fh, gh) != phi.det ** n * form:
        problems.append("form scaling")
    if (ap.apolarity_form(fh, gh) == 0) != (form == 0):
        problems.append("apolarity not preserved")
    back = ap.mobius_transform(fh, phi.inverse())
    if back != ap.UnivariatePolynomial([phi.det ** n]) * f.expand():
        problems.append("inverse round trip")
    lhs = ap.root_difference_permanent([phi(w) for w in g.roots], [phi(v) for v in f.roots])
    rhs = ap.mobius_prefactor(phi, g.roots, f.roots) * ap.root_difference_permanent(
        g.roots, f.roots)
    if lhs != rhs:
        problems.append("permanent prefactor")
    inputs = {"f": str(f.expand()), "g": str(g.expand()),
              "map": [_q(phi.a), _q(phi.b), _q(phi.c), _q(phi.d)]}
    return _ok(not problems, "all identities exact", problems or _q(form), pair=inputs)


def check_grace(region: str, trials: int, seed: int, degree: int = 4) -> dict:
    reg = ap.Disk(0, 1) if region == "unit-disk" else ap.HalfPlane(0, 1j)
    rep = ap.grace_demo(reg, degree=degree, trials=trials, seed=seed)
    ok = rep.violations == 0 and rep.skipped == 0
    return _ok(ok, "no violations", {"violations": rep.violations, "skipped": rep.skipped,
                                     "failures": rep.failures})


def _random_symbolic(rng, n: int) -> list[list[Polynomial]]:
    pool = [x(1), x(2), y(1), y(2), z(1)]
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            kind = int(rng.integers(0, 4))
            c = int(rng.integers(-3, 4))
            if kind == 0:
                row.append(Polynomial.constant(c))
            elif kind == 1:
                row.append(Polynomial.var(pool[int(rng.integers(0, len(pool)))]))
            else:
                a, b = (pool[int(i)] for i in rng.integers(0, len(pool), size=2))
                row.append(Polynomial.var(a) * c + Polynomial.var(b))
        rows.append(row)
    return rows


def check_engines(kind: str, seed: int, index: int) -> dict:
    rng = np.random.default_rng([seed, index])
    if kind == "symbolic":
        n = 1 + index % 6
        M = _random_symbolic(rng, n)
        a, b = permanent_subset_dp(M), permanent_enumerate(M)
        return _ok(a == b, str(b), str(a), n=n)
    n = 1 + index % 8
    M = [[as_rational(Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 4))))
          for _ in range(n)] for _ in range(n)]
    a, b = permanent_ryser(M), permanent_enumerate(M)
    return _ok(a == b, _q(b), _q(a), n=n, matrix=[[_q(c) for c in r] for r in M])


# -- case dispatch ------------------------------------------------------------------------


def _run_recurrence(inp):
    return check_recurrence(_ferrers(inp))


def _run_alpha_recurrence(inp):
    return check_recurrence(_ferrers(inp), alpha=True)


def _run_terms(inp):
    A = _ferrers(inp)
    if A.heights[-1] == A.rows:
        A = ferrers_dual(A)
    return check_term_classes(A)


def _run_duality(inp):
    return check_duality(_ferrers(inp), inp["k"], inp.get("alpha", False))


def _run_z_to_y(inp):
    return check_z_to_y(_ferrers(inp))


def _run_mmcpc(inp):
    A = _ferrers(inp).to_monotone() if "heights" in inp else _monotone(inp)
    return check_mmcpc(A, inp["seed"], inp["trials"], inp["points"],
                       inp.get("univariate", True), inp.get("multivariate", True))


def _run_padding_B(inp):
    return check_padding_B(_ferrers(inp))


def _run_padding_JZ(inp):
    return check_padding_JZ(_monotone(inp))


def _run_k_stability(inp):
    if "heights" in inp:
        A = _ferrers(inp)
        M = build_B(A)
        variables = [x(i) for i in range(1, A.rows + 1)] + [y(j) for j in range(1, A.cols + 1)]
    else:
        A = _monotone(inp)
        M = build_JZ_plus_A(A)
        variables = _zs(A.cols)
    return check_k_stability(M, inp["k"], inp["seed"], inp["trials"], variables,
                             inp.get("points", 0))


_CASES = {
    "recurrence": _run_recurrence,
    "alpha-recurrence": _run_alpha_recurrence,
    "term-classes": _run_terms,
    "duality": _run_duality,
    "z-to-y": _run_z_to_y,
    "mmcpc": _run_mmcpc,
    "padding-B": _run_padding_B,
    "padding-JZ": _run_padding_JZ,
    "k-stability": _run_k_stability,
    "eulerian": lambda inp: check_eulerian(inp["n"]),
    "multiset": lambda inp: check_multiset(tuple(inp["v"])),
    "top-inequality": lambda inp: check_top_inequality(inp["n"]),
    "pair-inequality": lambda inp: check_pair_inequality(_monotone(inp)),
    "log-submodular": lambda inp: check_log_submodular(_monotone(inp)),
    "column-sum": lambda inp: check_column_sum_bound(_monotone(inp)),
    "negative-association": lambda inp: check_negative_association(_monotone(inp)),
    "apolarity-pair": lambda inp: check_apolarity_pair(inp["seed"], inp["index"]),
    "grace": lambda inp: check_grace(inp["region"], inp["trials"], inp["seed"],
                                     inp.get("degree", 4)),
    "engines": lambda inp: check_engines(inp["kind"], inp["seed"], inp["index"]),
}


def run_case(spec) -> dict:
    """Run one ``(kind, case_id, inputs)`` spec; errors count as failures."""
    kind, case_id, inputs = spec
    try:
        result = _CASES[kind](inputs)
    except MCPermError as exc:
        result = _ok(False, "no error", f"{type(exc).__name__}: {exc}")
    result["case_id"] = case_id
    result["kind"] = kind
    result["inputs"] = inputs
    return result


def run_cases(specs, jobs: int = 1) -> list[dict]:
    if jobs <= 1 or len(specs) <= 1:
        return [run_case(s) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_case, specs, chunksize=max(1, len(specs) // (4 * jobs))))


def _report(suite: str, label: str, specs, jobs: int, seed=None, trials=None,
            parameters=None) -> SuiteReport:
    start = time.perf_counter()
    results = run_cases(specs, jobs)
    rep = SuiteReport(suite, label, seed, trials, universe=len(specs),
                      parameters=parameters or {})
    rep.cases_run = len(results)
    for r in results:
        if r["passed"]:
            rep.cases_passed += 1
        else:
            rep.failures.append({"case_id": r["case_id"], "kind": r["kind"],
                                 "inputs": r["inputs"], "expected": r["expected"],
                                 "got": r["got"]})
    rep.wall_time = time.perf_counter() - start
    return rep


# -- corpora --------------------------------------------------------------------------------


def ferrers_corpus(m: int, n: int) -> list[FerrersMatrix]:
    shapes = list(all_ferrers(m, n))
    if len(shapes) != comb(m + n, n):
        raise AssertionError("Ferrers enumeration disagrees with C(m+n, n)")
    return shapes


def random_corpus(count: int, shape, seed: int, value_range=(-9, 9), tag: int = 0):
    """``count`` monotone matrices; ``shape(i)`` gives the size of matrix i."""
    out = []
    for i in range(count):
        m, n = shape(i)
        out.append(random_monotone_matrix(m, n, value_range, seed=[seed, tag, i]))
    return out


def compositions(total_max: int):
    for total in range(1, total_max + 1):
        for cuts in range(total):
            for c in combinations(range(1, total), cuts):
                bounds = (0,) + c + (total,)
                yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def _matrix_spec(kind: str, prefix: str, i: int, A, **extra):
    inputs = matrix_inputs(A)
    inputs.update(extra)
    return (kind, f"{prefix}/{i:04d}", inputs)


# -- suites ----------------------------------------------------------------------------------


def suite_recurrence(n: int = 5, jobs: int = 1, matrix: FerrersMatrix | None = None,
                     **_) -> SuiteReport:
    shapes = [matrix] if matrix is not None else ferrers_corpus(n, n)
    specs = [("recurrence", f"recurrence/{_hs(A)}", ferrers_inputs(A)) for A in shapes]
    return _report("recurrence", THEOREM, specs, jobs, parameters={"n": n if matrix is None
                                                                    else matrix.rows})


def suite_term_classes(n: int = 5, jobs: int = 1, matrix: FerrersMatrix | None = None,
                       **_) -> SuiteReport:
    shapes = [matrix] if matrix is not None else ferrers_corpus(n, n)
    specs = [("term-classes", f"terms/{_hs(A)}", ferrers_inputs(A)) for A in shapes
             if A.rows >= 2]
    return _report("term-classes", THEOREM, specs, jobs, parameters={"n": n})


def suite_alpha_recurrence(n: int = 4, jobs: int = 1, matrix: FerrersMatrix | None = None,
                           **_) -> SuiteReport:
    shapes = [matrix] if matrix is not None else ferrers_corpus(n, n)
    specs = [("alpha-recurrence", f"alpha-recurrence/{_hs(A)}", ferrers_inputs(A))
             for A in shapes]
    return _report("alpha-recurrence", THEOREM, specs, jobs, parameters={"n": n})


def suite_duality(n: int = 4, jobs: int = 1, matrix: FerrersMatrix | None = None,
                  alpha_n: int = 3, **_) -> SuiteReport:
    specs = []
    if matrix is not None:
        shapes = [matrix]
    else:
        shapes = [A for m in range(1, n + 1) for c in range(1, n + 1)
                  for A in ferrers_corpus(m, c)]
    for A in shapes:
        for k in range(min(A.shape) + 1):
            inp = ferrers_inputs(A)
            inp["k"] = k
            specs.append(("duality", f"duality/{_hs(A)}/k={k}", inp))
    alpha_shapes = [matrix] if matrix is not None and matrix.rows == matrix.cols else (
        [] if matrix is not None else [A for m in range(1, alpha_n + 1)
                                       for A in ferrers_corpus(m, m)])
    for A in alpha_shapes:
        inp = ferrers_inputs(A)
        inp.update(k=A.rows, alpha=True)
        specs.append(("duality", f"duality-alpha/{_hs(A)}", inp))
    return _report("duality", THEOREM, specs, jobs, parameters={"n": n, "alpha_n": alpha_n})


def suite_z_to_y(n: int = 4, jobs: int = 1, matrix: FerrersMatrix | None = None,
                 **_) -> SuiteReport:
    shapes = [matrix] if matrix is not None else ferrers_corpus(n, n)
    specs = [("z-to-y", f"z-to-y/{_hs(A)}", ferrers_inputs(A)) for A in shapes]
    return _report("z-to-y", THEOREM, specs, jobs, parameters={"n": n})


def suite_mmcpc(n: int = 5, seed: int = 0, trials: int = 64, points: int = 1000,
                random_count: int = 100, jobs: int = 1, matrix=None,
                univariate: bool = True, multivariate: bool = True, **_) -> SuiteReport:
    """Ferrers n x n shapes plus random integer monotone matrices with entries in [-9, 9]."""
    specs = []
    extra = {"trials": trials, "points": points, "univariate": univariate,
             "multivariate": multivariate}
    if matrix is not None:
        A = matrix.to_monotone() if isinstance(matrix, FerrersMatrix) else matrix
        specs.append(_matrix_spec("mmcpc", "mmcpc/input", 0, A,
                                  seed=_case_seed(seed, 0), **extra))
    else:
        for i, A in enumerate(ferrers_corpus(n, n)):
            inp = ferrers_inputs(A)
            inp.update(seed=_case_seed(seed, 0, i), **extra)
            specs.append(("mmcpc", f"mmcpc/ferrers/{_hs(A)}", inp))
        for i, A in enumerate(random_corpus(random_count, lambda i: (n, n), seed, tag=1)):
            specs.append(_matrix_spec("mmcpc", "mmcpc/random", i, A,
                                      seed=_case_seed(seed, 1, i), **extra))
    return _report("mmcpc", THEOREM, specs, jobs, seed=seed, trials=trials,
                   parameters={"n": n, "points": points, "random_count": random_count,
                               "univariate": univariate, "multivariate": multivariate})


def suite_k_identities(n: int = 4, seed: int = 0, trials: int = 64, random_count: int = 30,
                       jobs: int = 1, matrix=None, **_) -> SuiteReport:
    """Padding identities and k-permanent stability where a theorem covers it."""
    specs = []
    if matrix is not None:
        ferrers = [matrix] if isinstance(matrix, FerrersMatrix) else []
        monos = [] if isinstance(matrix, FerrersMatrix) else [matrix]
    else:
        ferrers = [A for m in range(1, n + 1) for c in range(m, n + 1)
                   for A in ferrers_corpus(m, c)]
        shapes = [(m, c) for m in range(1, n + 1) for c in range(1, m + 1)]
        monos = random_corpus(random_count, lambda i: shapes[i % len(shapes)], seed, tag=2)
    for i, A in enumerate(ferrers):
        if A.rows <= A.cols:
            specs.append(("padding-B", f"padding-B/{_hs(A)}", ferrers_inputs(A)))
        for k in range(min(A.shape) + 1):
            inp = ferrers_inputs(A)
            inp.update(k=k, seed=_case_seed(seed, 3, i, k), trials=trials)
            specs.append(("k-stability", f"k-stability/B/{_hs(A)}/k={k}", inp))
    for i, A in enumerate(monos):
        if A.rows >= A.cols:
            specs.append(_matrix_spec("padding-JZ", "padding-JZ", i, A))
            for k in range(A.cols + 1):
                specs.append(_matrix_spec("k-stability", f"k-stability/JZ/k={k}", i, A, k=k,
                                          seed=_case_seed(seed, 4, i, k), trials=trials))
    return _report("k-identities", THEOREM, specs, jobs, seed=seed, trials=trials,
                   parameters={"n": n, "random_count": random_count})


def suite_conjecture_probe(n: int = 5, seed: int = 0, trials: int = 64, points: int = 200,
                           random_count: int = 60, jobs: int = 1, matrix=None,
                           **_) -> SuiteReport:
    """per_k(J Z + A) for m x n monotone A with m < n: no theorem covers these."""
    if matrix is not None:
        monos = [matrix.to_monotone() if isinstance(matrix, FerrersMatrix) else matrix]
    else:
        shapes = [(m, c) for c in range(2, n + 1) for m in range(1, c)]
        monos = random_corpus(random_count, lambda i: shapes[i % len(shapes)], seed, tag=5)
    specs = []
    for i, A in enumerate(monos):
        for k in range(1, min(A.shape) + 1):
            specs.append(_matrix_spec("k-stability", f"probe/{A.rows}x{A.cols}/k={k}", i, A,
                                      k=k, seed=_case_seed(seed, 5, i, k), trials=trials,
                                      points=points))
    return _report("conjecture-probe", PROBE, specs, jobs, seed=seed, trials=trials,
                   parameters={"n": n, "points": points, "random_count": random_count})


def suite_eulerian(n: int = 7, jobs: int = 1, **_) -> SuiteReport:
    specs = [("eulerian", f"eulerian/n={m}", {"n": m}) for m in range(1, n + 1)]
    return _report("eulerian", THEOREM, specs, jobs, parameters={"n": n})


def suite_multiset_eulerian(n: int = 6, v=None, jobs: int = 1, **_) -> SuiteReport:
    vs = [tuple(v)] if v is not None else list(compositions(n))
    specs = [("multiset", "multiset/v=" + ",".join(map(str, c)), {"v": list(c)}) for c in vs]
    return _report("multiset-eulerian", THEOREM, specs, jobs, parameters={"n": n})


def suite_top_inequality(n: int = 7, jobs: int = 1, **_) -> SuiteReport:
    specs = [("top-inequality", f"top/n={m}", {"n": m}) for m in range(2, n + 1)]
    return _report("top-inequality", THEOREM, specs, jobs, parameters={"n": n})


def suite_inequalities(seed: int = 0, jobs: int = 1, matrix=None, pair_count: int = 200,
                       pair_n: int = 5, lattice_n: int = 4, bound_count: int = 1000,
                       bound_n: int = 6, **_) -> SuiteReport:
    """Column-replacement inequalities on random nonnegative monotone matrices (entries 0..9)."""
    nonneg = (0, 9)
    specs = []
    if matrix is not None:
        A = matrix.to_monotone() if isinstance(matrix, FerrersMatrix) else matrix
        kinds = ["pair-inequality", "column-sum"]
        if A.is_nonnegative():
            kinds += ["log-submodular", "negative-association"]
        for kind in kinds:
            specs.append(_matrix_spec(kind, kind, 0, A))
    else:
        pairs = random_corpus(pair_count, lambda i: (2 + i % (pair_n - 1),) * 2, seed,
                              nonneg, tag=6)
        for i, A in enumerate(pairs):
            specs.append(_matrix_spec("pair-inequality", "pair-inequality", i, A))
        small = [A for A in pairs if A.rows <= lattice_n]
        for i, A in enumerate(small):
            specs.append(_matrix_spec("log-submodular", "log-submodular", i, A))
            specs.append(_matrix_spec("negative-association", "negative-association", i, A))
        bounds = random_corpus(bound_count, lambda i: (1 + i % bound_n,) * 2, seed,
                               nonneg, tag=7)
        for i, A in enumerate(bounds):
            specs.append(_matrix_spec("column-sum", "column-sum", i, A))
    return _report("inequalities", THEOREM, specs, jobs, seed=seed,
                   parameters={"pair_count": pair_count, "pair_n": pair_n,
                               "lattice_n": lattice_n, "bound_count": bound_count,
                               "bound_n": bound_n})


def suite_apolarity(seed: int = 0, trials: int = 100, jobs: int = 1, corpus: int = 200,
                    **_) -> SuiteReport:
    specs = [("apolarity-pair", f"apolarity/{i:04d}", {"seed": seed, "index": i})
             for i in range(corpus)]
    for region in ("unit-disk", "upper-half-plane"):
        specs.append(("grace", f"grace/{region}",
                      {"region": region, "trials": trials, "seed": seed}))
    return _report("apolarity", THEOREM, specs, jobs, seed=seed, trials=trials,
                   parameters={"corpus": corpus})


def suite_engines(seed: int = 0, jobs: int = 1, count: int = 100, **_) -> SuiteReport:
    specs = [("engines", f"engines/{kind}/{i:04d}", {"kind": kind, "seed": seed, "index": i})
             for kind in ("symbolic", "numeric") for i in range(count)]
    return _report("engines", THEOREM, specs, jobs, seed=seed, parameters={"count": count})


SUITES = {
    "recurrence": suite_recurrence,
    "term-classes": suite_term_classes,
    "alpha-recurrence": suite_alpha_recurrence,
    "duality": suite_duality,
    "z-to-y": suite_z_to_y,
    "mmcpc": suite_mmcpc,
    "k-identities": suite_k_identities,
    "conjecture-probe": suite_conjecture_probe,
    "eulerian": suite_eulerian,
    "multiset-eulerian": suite_multiset_eulerian,
    "top-inequality": suite_top_inequality,
    "inequalities": suite_inequalities,
    "apolarity": suite_apolarity,
    "engines": suite_engines,
}

RANDOMIZED = ("mmcpc", "k-identities", "conjecture-probe", "inequalities", "apolarity",
              "engines")


def run_suite(name: str, **params) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise MCPermError(f"unknown suite {name!r}") from None
    params = {k: v for k, v in params.items() if v is not None}
    return fn(**params)


def run_all(seed: int = 0, jobs: int = 1, trials: int | None = None) -> list[SuiteReport]:
    """Every suite at its default desk-scale parameters."""
    reports = []
    for name in SUITES:
        reports.append(run_suite(name, seed=seed, jobs=jobs, trials=trials))
    return reports


def combined_json(reports, include_time: bool = False) -> str:
    return json.dumps({"schema": SCHEMA_VERSION,
                       "suites": [r.to_dict(include_time) for r in reports]},
                      indent=2, sort_keys=True)


# -- single-input entry points -------------------------------------------------------


def verify_recurrence(A: FerrersMatrix) -> SuiteReport:
    return suite_recurrence(matrix=A)


def verify_alpha_recurrence(A: FerrersMatrix) -> SuiteReport:
    return suite_alpha_recurrence(matrix=A)


def verify_duality(A: FerrersMatrix) -> SuiteReport:
    return suite_duality(matrix=A)


def verify_z_to_y(A: FerrersMatrix) -> SuiteReport:
    return suite_z_to_y(matrix=A)


def verify_mmcpc(A, trials: int = 64, seed: int = 0, points: int = 1000) -> SuiteReport:
    return suite_mmcpc(matrix=A, trials=trials, seed=seed, points=points)


def verify_k_identities(A, trials: int = 64, seed: int = 0) -> SuiteReport:
    return suite_k_identities(matrix=A, trials=trials, seed=seed)


def verify_eulerian(n: int) -> SuiteReport:
    return suite_eulerian(n=n)


def verify_multiset_eulerian(v) -> SuiteReport:
    return suite_multiset_eulerian(v=v)


def verify_top_inequality(n: int) -> SuiteReport:
    return suite_top_inequality(n=n)


def verify_inequalities(A) -> SuiteReport:
    return suite_inequalities(matrix=A)


def verify_apolarity(seed: int = 0, trials: int = 100) -> SuiteReport:
    return suite_apolarity(seed=seed, trials=trials)
