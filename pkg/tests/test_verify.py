import json
from math import comb

import pytest

from mcperm import verify as vf
from mcperm.matrices import (FerrersMatrix, MonotoneColumnMatrix, build_B, eulerian_matrix,
                             ferrers_dual, ones_matrix)
from mcperm.permanent import alpha_permanent, permanent_symbolic
from mcperm.polyalg import ALPHA, Namespace, parse_polynomial

EXAMPLE = FerrersMatrix(5, (0, 1, 3, 4, 4))


def test_recurrence_examples():
    rep = vf.verify_recurrence(EXAMPLE)
    assert rep.passed and rep.cases_run == 1
    assert vf.check_recurrence(FerrersMatrix(1, (0,)))["passed"]
    assert vf.check_recurrence(FerrersMatrix(3, (3, 3, 3)))["passed"]  # corner one: dualized


def test_term_classes_on_example():
    assert vf.check_term_classes(EXAMPLE)["passed"]


def test_alpha_recurrence_examples():
    assert vf.verify_alpha_recurrence(EXAMPLE).passed
    A = FerrersMatrix(2, (0, 1))
    assert alpha_permanent(build_B(A)) == parse_polynomial("alpha^2*x1*x2 + alpha*x2*y2")
    assert vf.check_recurrence(A, alpha=True)["passed"]
    assert alpha_permanent(build_B(EXAMPLE)).substitute({ALPHA: 1}) == \
        permanent_symbolic(build_B(EXAMPLE))


def test_duality_examples():
    assert vf.verify_duality(EXAMPLE).passed
    E = eulerian_matrix(3)
    assert ferrers_dual(E) != E
    lhs = permanent_symbolic(build_B(ferrers_dual(E)))
    rhs = permanent_symbolic(build_B(E, Namespace.Y, Namespace.X))
    assert lhs == rhs


def test_z_to_y_examples():
    for heights in [(0,), (1,)]:
        assert vf.check_z_to_y(FerrersMatrix(1, heights))["passed"]
    assert vf.verify_z_to_y(EXAMPLE).passed


def test_mmcpc_examples():
    zero = MonotoneColumnMatrix([[0] * 3] * 3)
    res = vf.check_mmcpc(zero, seed=0, trials=16, points=50)
    assert res["passed"] and res["polynomial"] == "6*z1*z2*z3"
    assert vf.verify_mmcpc(EXAMPLE, trials=64, points=200).passed


def test_k_identity_examples():
    assert vf.verify_k_identities(FerrersMatrix(2, (0, 1, 2))).passed
    tall = MonotoneColumnMatrix([[3, 2], [1, 1], [0, -1]])
    rep = vf.verify_k_identities(tall, trials=50)
    assert rep.passed and rep.cases_run == 4  # padding plus k = 0, 1, 2


def test_eulerian_examples():
    res = vf.check_eulerian(3)
    assert res["passed"]
    assert res["expected"] == "y2*y3 + y2 + 3*y3 + 1" and res["eulerian"] == "t^2 + 4*t + 1"
    assert vf.multiset_permanent_side((2, 1)) == parse_polynomial("1 + 2*y2")
    assert vf.verify_multiset_eulerian((2, 1)).passed
    assert vf.verify_top_inequality(5).passed


def test_inequality_examples():
    for n in range(1, 5):
        J = MonotoneColumnMatrix(ones_matrix(n))
        assert vf.check_column_sum_bound(J)["passed"]
        assert vf.verify_inequalities(J).passed
        assert vf.verify_inequalities(MonotoneColumnMatrix([[0] * n] * n)).passed


def test_apolarity_smoke():
    assert vf.check_apolarity_pair(0, 0)["passed"]  # index 0 has degree 1
    assert vf.apolarity_pair(0, 0)[0].degree == 1


# -- reports ---------------------------------------------------------------------------------


def test_corpus_counts():
    for m in range(1, 5):
        for n in range(1, 5):
            assert len(vf.ferrers_corpus(m, n)) == comb(m + n, n)
    assert vf.suite_recurrence(n=4).universe == 70


def test_report_serialization_is_deterministic():
    rep = vf.suite_eulerian(n=4)
    assert rep.to_json() == vf.suite_eulerian(n=4).to_json()
    data = json.loads(rep.to_json())
    assert data["schema"] == 1 and "wall_time" not in data
    assert "wall_time" in json.loads(rep.to_json(include_time=True))
    assert data["cases_run"] == data["cases_passed"] == 4 and data["failures"] == []


def test_every_case_in_the_universe_runs():
    for rep in (vf.run_suite("recurrence", n=3), vf.run_suite("duality", n=3),
                vf.suite_inequalities(pair_count=10, bound_count=10)):
        assert rep.universe == rep.cases_run == rep.cases_passed


def test_errors_become_replayable_failures():
    spec = ("recurrence", "broken", {"rows": 3, "heights": [2, 1, 0]})
    res = vf.run_case(spec)
    assert not res["passed"] and "MCPermError" in res["got"]
    again = vf.run_case((res["kind"], res["case_id"], res["inputs"]))
    assert again == res


def test_exit_codes():
    ok = vf.SuiteReport("a", vf.THEOREM, 0, 1, 1, 1, 1)
    bad = vf.SuiteReport("b", vf.THEOREM, 0, 1, 1, 1, 0, failures=[{"case_id": "x"}])
    probe = vf.SuiteReport("c", vf.PROBE, 0, 1, 1, 1, 0, failures=[{"case_id": "y"}])
    assert vf.exit_code([ok]) == 0
    assert vf.exit_code([ok, probe]) == 3
    assert vf.exit_code([probe, bad]) == 2


def test_parallel_run_matches_sequential():
    a = vf.suite_engines(seed=4, count=6, jobs=1).to_json()
    b = vf.suite_engines(seed=4, count=6, jobs=3).to_json()
    assert a == b


def test_probe_suite_is_labelled():
    rep = vf.suite_conjecture_probe(n=3, random_count=4, trials=8, points=20)
    assert rep.label == vf.PROBE and rep.passed


@pytest.mark.parametrize("name", sorted(vf.SUITES))
def test_every_suite_is_registered_with_a_name(name):
    assert callable(vf.SUITES[name])
    assert set(vf.RANDOMIZED) <= set(vf.SUITES)
