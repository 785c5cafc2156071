"""Numeric extremal search over the Sakaguchi-type classes.

Candidates are Caratheodory functions with finite atomic Herglotz measures
(the extreme points of P), plus deterministic seeds at the kernels
``(1 + z^k)/(1 - z^k)`` and at ``p = 1``.  Every objective is computed through
:func:`coeffsolver.solve_coeffs`, never through the closed forms, so a search
doubles as an audit of them.

Work is organised in rounds.  Round ``j`` of restart ``r`` draws its random
numbers from ``default_rng([seed, r, j])`` and does not depend on the budget,
so a larger budget evaluates a superset of the candidates of a smaller one
(given the same number of restarts).  Best-so-far values are therefore
monotone in the budget.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import bounds
from .caratheodory import AtomicMeasure, CaraFn, atom_p, constant_one, kernel
from .coeffsolver import ClassKind, solve_coeffs
from .errors import BoundViolation, HypothesisFailed
from .phicatalog import PhiSpec, phi_coeffs, phi_series

BOUND_SLACK = 1e-9
UPPER_SLACK = 1e-12
REEVAL_TOL = 1e-12


class Direction(enum.Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class SearchConfig:
    budget: int = 20_000
    restarts: int = 4
    seed: int = 0
    atom_count_max: int = 6
    refine_iters: int = 40
    samples_per_round: int = 256

    def __post_init__(self):
        if not self.budget >= self.restarts >= 1:
            raise ValueError("need budget >= restarts >= 1")
        if self.atom_count_max < 1 or self.samples_per_round < 1:
            raise ValueError("atom_count_max and samples_per_round must be positive")


@dataclass
class SearchResult:
    objective: float
    witness: CaraFn
    history: list[float] = field(default_factory=list)
    evaluations: int = 0
    seed_values: dict[str, float] = field(default_factory=dict)
    witness_label: str = "random"

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "witness": {"label": self.witness_label, **self.witness.describe()},
            "history": [h if math.isfinite(h) else None for h in self.history],
            "evaluations": self.evaluations,
        }


class _Objective:
    """Scalar functional of the class member built from ``p``."""

    def __init__(self, kind: ClassKind, spec: PhiSpec, quantity: str):
        self.kind = kind
        self.quantity = quantity
        self.order = 5 if quantity == "a5" else 3
        self.phi = phi_series(spec, self.order)

    def __call__(self, p: CaraFn) -> float:
        a = solve_coeffs(self.kind, self.phi, p, self.order)
        if self.quantity == "a5":
            return abs(a[5])
        if self.quantity == "a3":
            return abs(a[3])
        return float(bounds.t31(a[2], a[3]))


class _Tracker:
    def __init__(self, objective: _Objective, sign: float):
        self.objective = objective
        self.sign = sign
        self.count = 0
        self.best_score = -math.inf
        self.best_fn: CaraFn | None = None
        self.best_label = ""
        self.local_best = -math.inf

    def score(self, fn: CaraFn, label: str = "random") -> float:
        self.count += 1
        s = self.sign * self.objective(fn)
        self.local_best = max(self.local_best, s)
        if s > self.best_score:
            self.best_score, self.best_fn, self.best_label = s, fn, label
        return s


def _measure_fn(w: np.ndarray, t: np.ndarray, order: int) -> CaraFn:
    return atom_p(AtomicMeasure(tuple(float(x) for x in w), tuple(float(x) for x in t)), order, check=False)


def _random_measure(rng: np.random.Generator, max_atoms: int) -> tuple[np.ndarray, np.ndarray]:
    k = int(rng.integers(1, max_atoms + 1))
    w = rng.dirichlet(np.ones(k))
    return w / w.sum(), rng.uniform(0.0, 2 * np.pi, size=k)


def _project(w: np.ndarray) -> np.ndarray | None:
    w = np.clip(w, 0.0, None)
    s = w.sum()
    return None if s <= 0 else w / s


class _Exhausted(Exception):
    pass


def _refine(track: _Tracker, w, t, score, iters: int, budget_left: Callable[[], int]):
    """Cyclic coordinate search on weights and angles with step halving."""
    order = track.objective.order
    hw, ht = 0.125, math.pi / 8
    for _ in range(iters):
        improved = False
        for i in range(len(w) * 2):
            for direction in (1.0, -1.0):
                if budget_left() <= 0:
                    raise _Exhausted
                w2, t2 = w.copy(), t.copy()
                if i < len(w):
                    if len(w) == 1:
                        continue
                    w2[i] += direction * hw
                    w2 = _project(w2)
                    if w2 is None:
                        continue
                else:
                    t2[i - len(w)] += direction * ht
                s = track.score(_measure_fn(w2, t2, order))
                if s > score:
                    w, t, score, improved = w2, t2, s, True
                    break
        if not improved:
            hw, ht = hw / 2, ht / 2
    return w, t, score


def _run_restart(track: _Tracker, cfg: SearchConfig, restart: int, quota: int) -> float:
    start = track.count
    track.local_best = -math.inf
    order = track.objective.order

    def left() -> int:
        return quota - (track.count - start)

    round_idx = 0
    try:
        while left() > 0:
            rng = np.random.default_rng([cfg.seed, restart, round_idx])
            round_best = (-math.inf, None, None)
            for _ in range(cfg.samples_per_round):
                if left() <= 0:
                    raise _Exhausted
                w, t = _random_measure(rng, cfg.atom_count_max)
                s = track.score(_measure_fn(w, t, order))
                if s > round_best[0]:
                    round_best = (s, w, t)
            _refine(track, round_best[1], round_best[2], round_best[0], cfg.refine_iters, left)
            round_idx += 1
    except _Exhausted:
        pass
    return track.local_best


def _seeds(order: int, include_identity: bool) -> list[tuple[str, CaraFn]]:
    out = [("identity", constant_one(order))] if include_identity else []
    return out + [(f"kernel_k{k}", kernel(k, order)) for k in (1, 2, 3, 4)]


def _search(objective: _Objective, direction: Direction, cfg: SearchConfig, include_identity: bool) -> SearchResult:
    sign = 1.0 if direction is Direction.MAX else -1.0
    track = _Tracker(objective, sign)
    seed_values = {}
    for label, fn in _seeds(objective.order, include_identity):
        seed_values[label] = sign * track.score(fn, label)
    remaining = max(cfg.budget - track.count, 0)
    history = []
    for r in range(cfg.restarts):
        quota = remaining // cfg.restarts + (1 if r < remaining % cfg.restarts else 0)
        history.append(sign * _run_restart(track, cfg, r, quota))
    best = sign * track.best_score
    check = objective(track.best_fn)
    if abs(check - best) > REEVAL_TOL:
        raise ArithmeticError(f"witness re-evaluation gives {check!r}, search reported {best!r}")
    return SearchResult(best, track.best_fn, history, track.count, seed_values, track.best_label)


def _violation(message: str, kind: ClassKind, spec: PhiSpec, quantity: str, bound: float, result: SearchResult):
    raise BoundViolation(
        message,
        {
            "class": spec.label,
            "kind": kind.value,
            "quantity": quantity,
            "bound": bound,
            "found": result.objective,
            "witness": result.to_dict()["witness"],
        },
    )


def maximize_a5(kind: ClassKind, spec: PhiSpec, cfg: SearchConfig = SearchConfig(), enforce: bool = True) -> SearchResult:
    """Largest ``|a_5|`` found; checked against the sharp bound when C1-C4 hold."""
    res = _search(_Objective(kind, spec, "a5"), Direction.MAX, cfg, include_identity=False)
    b = phi_coeffs(spec)
    if enforce and bounds.check_conditions(b).a5_conditions_hold:
        bound = bounds.a5_sharp_bound(kind, b[0])
        if res.objective > bound + BOUND_SLACK:
            _violation(f"|a5| = {res.objective!r} exceeds {bound!r}", kind, spec, "a5", bound, res)
    return res


def extremize_t31(
    kind: ClassKind, spec: PhiSpec, direction: Direction, cfg: SearchConfig = SearchConfig(), enforce: bool = True
) -> SearchResult:
    res = _search(_Objective(kind, spec, "t31"), direction, cfg, include_identity=True)
    if not enforce:
        return res
    b = phi_coeffs(spec)
    if direction is Direction.MIN:
        low = bounds.t31_lower(kind, b)
        if low.value is not None and res.objective < low.value - BOUND_SLACK:
            _violation(f"T31 = {res.objective!r} below {low.value!r}", kind, spec, "t31_lower", low.value, res)
    else:
        up = bounds.t31_upper(kind, b)
        if up.value is not None and res.objective > up.value + UPPER_SLACK:
            _violation(f"T31 = {res.objective!r} above {up.value!r}", kind, spec, "t31_upper", up.value, res)
    return res


def check_a3(kind: ClassKind, spec: PhiSpec, cfg: SearchConfig = SearchConfig(), enforce: bool = True) -> SearchResult:
    b = phi_coeffs(spec)
    bound = bounds.a3_bound(kind, b)  # raises HypothesisFailed
    res = _search(_Objective(kind, spec, "a3"), Direction.MAX, cfg, include_identity=False)
    if enforce and res.objective > bound + BOUND_SLACK:
        _violation(f"|a3| = {res.objective!r} exceeds {bound!r}", kind, spec, "a3", bound, res)
    return res


__all__ = [
    "BoundViolation",
    "Direction",
    "HypothesisFailed",
    "SearchConfig",
    "SearchResult",
    "check_a3",
    "extremize_t31",
    "maximize_a5",
]
