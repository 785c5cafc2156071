import math

import pytest

from sakaguchi_kit import bounds, extremal
from sakaguchi_kit.coeffsolver import ClassKind, solve_coeffs
from sakaguchi_kit.errors import BoundViolation, HypothesisFailed
from sakaguchi_kit.extremal import Direction, SearchConfig, check_a3, extremize_t31, maximize_a5
from sakaguchi_kit.phicatalog import CATALOG, PhiSpec, phi_coeffs, phi_series

STAR, CONVEX = ClassKind.STAR, ClassKind.CONVEX
FULL = SearchConfig(budget=20_000, seed=7)
SMALL = SearchConfig(budget=1500, seed=3)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(budget=2, restarts=3)
    with pytest.raises(ValueError):
        SearchConfig(restarts=0)


def test_determinism():
    spec = PhiSpec("rl")
    a = maximize_a5(CONVEX, spec, SMALL)
    b = maximize_a5(CONVEX, spec, SMALL)
    assert a.to_dict() == b.to_dict()


def test_witness_reevaluates_to_objective():
    spec = PhiSpec.janowski(0, -0.5)
    res = extremize_t31(STAR, spec, Direction.MIN, SMALL)
    a = solve_coeffs(STAR, phi_series(spec, 3), res.witness, 3)
    assert abs(bounds.t31(a[2], a[3]) - res.objective) <= 1e-12


def test_budget_is_respected_and_history_per_restart():
    res = maximize_a5(STAR, PhiSpec("sg"), SMALL)
    assert res.evaluations == SMALL.budget
    assert len(res.history) == SMALL.restarts


@pytest.mark.parametrize("kind", list(ClassKind))
def test_doubling_budget_never_lowers_max(kind):
    spec = PhiSpec("exp")
    prev = -math.inf
    for budget in (500, 1000, 2000, 4000):
        cfg = SearchConfig(budget=budget, seed=5)
        cur = maximize_a5(kind, spec, cfg, enforce=False).objective
        assert cur >= prev
        prev = cur
    prev = math.inf
    for budget in (500, 1000, 2000):
        cur = extremize_t31(kind, spec, Direction.MIN, SearchConfig(budget=budget, seed=5), enforce=False).objective
        assert cur <= prev
        prev = cur


def test_a5_sqrt1p_star():
    res = maximize_a5(STAR, PhiSpec("sqrt1p"), FULL)
    assert 0.1249 <= res.objective <= 0.125 + 1e-9
    assert res.witness_label == "kernel_k4"


def test_a5_exp_convex():
    res = maximize_a5(CONVEX, PhiSpec("exp"), FULL)
    assert 0.0499 <= res.objective <= 0.05 + 1e-9


def test_a5_janowski_degenerate_reports_without_assertion():
    spec = PhiSpec.janowski(1, -1)
    assert not bounds.check_conditions(phi_coeffs(spec)).a5_conditions_hold
    res = maximize_a5(STAR, spec, SMALL)
    assert res.objective >= 1 - 1e-9


def test_t31_min_sqrt1p_star():
    res = extremize_t31(STAR, PhiSpec("sqrt1p"), Direction.MIN, FULL)
    assert abs(res.objective - 221 / 256) <= 1e-9
    assert res.witness_label == "kernel_k1"


def test_t31_max_alpha_quarter():
    res = extremize_t31(STAR, PhiSpec.alpha(0.25), Direction.MAX, SMALL)
    assert res.objective == 1 and res.witness_label == "identity"


def test_t31_min_sg_star():
    res = extremize_t31(STAR, PhiSpec("sg"), Direction.MIN, SMALL)
    assert abs(res.objective - 7 / 8) <= 1e-9


def test_check_a3():
    spec = PhiSpec.alpha(0.5)
    assert 0.499 <= check_a3(STAR, spec, SMALL).objective <= 0.5 + 1e-9
    assert check_a3(CONVEX, spec, SMALL).objective <= 1 / 6 + 1e-9
    with pytest.raises(HypothesisFailed):
        check_a3(STAR, PhiSpec("sqrt1p"), SMALL)


def test_violation_dump(monkeypatch):
    monkeypatch.setattr(extremal.bounds, "a5_sharp_bound", lambda kind, b1, conditions=None: b1 / 5)
    with pytest.raises(BoundViolation) as info:
        maximize_a5(STAR, PhiSpec("sqrt1p"), SMALL)
    dump = info.value.dump
    assert dump["class"] == "sqrt1p" and dump["quantity"] == "a5"
    assert dump["found"] > dump["bound"] == 0.1
    assert dump["witness"]["label"] == "kernel_k4"


@pytest.mark.parametrize("spec", CATALOG, ids=lambda s: s.label)
@pytest.mark.parametrize("kind", list(ClassKind))
def test_soundness_over_catalog(spec, kind):
    cfg = SearchConfig(budget=3000, seed=11)
    maximize_a5(kind, spec, cfg)
    extremize_t31(kind, spec, Direction.MIN, cfg)
    extremize_t31(kind, spec, Direction.MAX, cfg)
