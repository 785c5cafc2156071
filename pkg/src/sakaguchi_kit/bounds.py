"""Bounds, hypotheses and proof witnesses for |a_5| and T_{3,1}.

Formulas are written with plain arithmetic so that they evaluate exactly on
:class:`fractions.Fraction` inputs as well as on floats; the Toeplitz lower
bounds use that to return exact rationals when ``B1, B2`` are dyadic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.linalg import toeplitz

from .coeffsolver import ClassKind, CoeffVector, closed_form_low
from .errors import (
    ConditionsNotMet,
    DenominatorVanishes,
    HypothesisFailed,
    InsufficientCoefficients,
)

MARGIN = 1e-10
DENOM_TOL = 1e-14
SIGMA_SNAP = 1e-12
SIGMA_DEGENERATE = 1e-12
GAMMA_TOL = 1e-10
DYADIC_MAX_DEN = 2**20


# --------------------------------------------------------------------------
# conditions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    name: str
    lhs: float
    rhs: float
    holds: bool
    relation: str
    marginal: bool = False
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs if math.isfinite(self.lhs) else None,
            "rhs": self.rhs,
            "relation": self.relation,
            "holds": self.holds,
            "marginal": self.marginal,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class ConditionReport:
    conditions: tuple[Condition, ...]

    def __getitem__(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def a5_conditions_hold(self) -> bool:
        return all(self[n].holds for n in ("C1", "C2", "C3", "C4"))

    def to_dict(self) -> dict:
        return {c.name: c.to_dict() for c in self.conditions}


def _less(name: str, lhs, rhs, relation: str = "<") -> Condition:
    lhs, rhs = float(lhs), float(rhs)
    ops = {"<": lhs < rhs, "<=": lhs <= rhs, ">": lhs > rhs, ">=": lhs >= rhs}
    return Condition(name, lhs, rhs, ops[relation], relation, abs(lhs - rhs) < MARGIN)


def _interval(name: str, value) -> Condition:
    """``0 < value < 1``; reported with ``lhs = value`` and ``rhs = 1``."""
    v = float(value)
    return Condition(name, v, 1.0, 0 < v < 1, "0<lhs<rhs", min(abs(v), abs(v - 1)) < MARGIN)


def c1_sides(b1, b2):
    return abs(b1**3 - 2 * b1 * b2 + 2 * b2**2), abs(2 * b1**2 - b1**3 - 2 * b1 * b2)


def c2_sides(b1, b2, b3):
    return abs(b1**3 - b1**2 * b2 + 3 * b2**2 - 3 * b1 * b3), 3 * abs(b1**3 - b1**2 + b2**2)


def c3_sides(b1, b2, b3, b4):
    lhs = (
        b1**7
        - b1**6 * (8 * b2 + 3)
        - 6 * b1**4 * (b2 * (3 * b2 + 2 * b3 + 2) - 6 * b3 + 9 * b4)
        + b1**5 * (7 * b2 * (b2 + 4) - 24 * b3 + 18 * b4)
        + 6 * b1**3 * (b2**3 - 2 * b2**2 + 8 * b2 * b3 - 3 * b3**2 + 6 * (b2 + 1) * b4)
        - 6 * b1 * b2 * (3 * b2**3 - 6 * b3**2 + b2**2 * (4 * b3 - 6) + 6 * b2 * (b4 - 2 * b3))
        + 18 * b2**2 * (-2 * b3**2 + b2 * ((b2 - 2) * b2 + 2 * b4))
        + b1**2 * b2 * (b2 * (b2 * (5 * b2 + 6) - 24 * b3 + 18 * b4) - 36 * (2 * b3 + b4))
    )
    rhs = (
        2
        * ((b1 - 2) * b1 + 2 * b2)
        * (b1 * (2 * b1 + b2 - 3) + 3 * b3)
        * (4 * b1**3 + 6 * b2**2 - b1**2 * (b2 + 3) - 3 * b1 * b3)
    )
    return abs(lhs), abs(rhs)


def c4_value(b1, b2):
    den = 2 * (b1 - b2)
    if abs(den) <= DENOM_TOL:
        raise DenominatorVanishes("C4 denominator 2(B1 - B2) vanishes")
    return (2 * b1 - b1**2 - 2 * b2) / den


def check_conditions(b: Sequence[float]) -> ConditionReport:
    """All four coefficient conditions plus the three theorem hypotheses."""
    b1, b2, b3, b4 = (float(x) for x in b[:4])
    if not b1 > 0:
        raise ValueError("B1 must be positive")
    conds = [
        _less("C1", *c1_sides(b1, b2)),
        _less("C2", *c2_sides(b1, b2, b3)),
        _less("C3", *c3_sides(b1, b2, b3, b4)),
    ]
    try:
        conds.append(_interval("C4", c4_value(b1, b2)))
    except DenominatorVanishes as exc:
        conds.append(Condition("C4", math.nan, 1.0, False, "0<lhs<rhs", False, f"DenominatorVanishes: {exc}"))
    conds += [
        _less("H_a3", b1, abs(b2), "<="),
        _less("H_T5", b1**2, 2 * b2, ">"),
        _less("H_T6", 3 * b1**2, 8 * b2, ">="),
    ]
    return ConditionReport(tuple(conds))


def janowski_conditions(a: float, b: float) -> ConditionReport:
    """The four conditions written directly in terms of ``(A, B)``."""
    if not (-1 < b < a <= 1):
        if b == -1:
            raise DenominatorVanishes("B = -1 makes the C4 denominator 2B + 2 vanish")
        raise ValueError("need -1 < B < A <= 1")
    d = a - b
    c1 = (abs(d**2 * (a + b + 2 * b * b)), abs((a - 3 * b - 2) * d**2))
    c2 = (abs(d**3 * (b + 1)), 3 * abs(d**2 * (a - 1 + (b - 1) * b)))
    c3 = (
        abs(
            d**5
            * (b + 1)
            * (a * a * (7 * b + 1) + b * (b * (38 + (12 - 17 * b) * b) + 15) + a * (b * (b * (5 * b - 31) - 27) - 3))
        ),
        2 * abs(d**4 * (a - 3 * b - 2) * (a * (b - 2) - 4 * b * b + 2 * b + 3) * (a * (b + 4) + 2 * b * (b - 2) - 3)),
    )
    c4 = (3 * b - a + 2) / (2 * b + 2)
    return ConditionReport(
        (_less("C1", *c1), _less("C2", *c2), _less("C3", *c3), _interval("C4", c4))
    )


# --------------------------------------------------------------------------
# proof witnesses and the A_4 functional
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ProofWitness:
    eps: tuple[float, float, float]
    tau: float
    nu: tuple[float, float, float]
    gamma: tuple[float, float, float, float]
    gamma_closed: tuple[float, float, float, float]

    @property
    def kappa(self) -> tuple[float, float, float, float]:
        t = self.tau
        return (2 * t, 2 * t * t, 2 * t, 2.0)


def witness_eps(b1, b2, b3, b4):
    e1 = (b1**3 - 2 * b1 * b2 + 2 * b2**2) / (2 * b1**2 - b1**3 - 2 * b1 * b2)
    e2 = (b1**3 - b1**2 * b2 + 3 * b2**2 - 3 * b1 * b3) / (3 * (-(b1**2) + b1**3 + b2**2))
    num3 = (
        b1**7
        - b1**6 * (8 * b2 + 3)
        - 6 * b1**4 * (b2 * (3 * b2 + 2 * b3 + 2) - 6 * b3 + 9 * b4)
        + b1**5 * (7 * b2 * (b2 + 4) - 24 * b3 + 18 * b4)
        + 6 * b1**3 * (b2**3 - 2 * b2**2 + 8 * b2 * b3 - 3 * b3**2 + 6 * (b2 + 1) * b4)
        - 6 * b1 * b2 * (3 * b2**3 - 6 * b3**2 + b2**2 * (4 * b3 - 6) - 6 * b2 * (2 * b3 - b4))
        + 18 * b2**2 * (-2 * b3**2 + b2 * ((b2 - 2) * b2 + 2 * b4))
        + b1**2 * b2 * (-36 * (2 * b3 + b4) + b2 * (b2 * (6 + 5 * b2) - 24 * b3 + 18 * b4))
    )
    den3 = (
        2
        * ((b1 - 2) * b1 + 2 * b2)
        * (b1 * (2 * b1 + b2 - 3) + 3 * b3)
        * (4 * b1**3 + 6 * b2**2 - b1**2 * (3 + b2) - 3 * b1 * b3)
    )
    return e1, e2, num3 / den3


def nu_from_eps(e1: float, e2: float, e3: float) -> tuple[float, float, float]:
    """Cho coefficients specialised to real parameters."""
    s1 = 1 - e1 * e1
    nu1 = 2 * e1
    nu2 = 2 * e1**2 + 2 * s1 * e2
    nu3 = 2 * e1**3 + 4 * s1 * e1 * e2 - 2 * s1 * e1 * e2**2 + 2 * s1 * (1 - e2 * e2) * e3
    return nu1, nu2, nu3


def gamma_from_nu(nu: Sequence[float]) -> tuple[float, float, float, float]:
    """``gamma_n = 2^-n (1 + 1/2 sum_v binom(n, v) nu_v)`` for n = 0..3."""
    out = [1.0]
    for n in (1, 2, 3):
        s = sum(math.comb(n, v) * nu[v - 1] for v in range(1, n + 1))
        out.append((1 + s / 2) / 2**n)
    return tuple(out)  # type: ignore[return-value]


def gamma_closed(b1, b2, b3, b4) -> tuple[float, float, float, float]:
    q = b1**2 - 2 * b1 + 2 * b2
    g1 = -((b1 - b2) ** 2) / (b1 * q)
    g2 = -((b1 - b2) ** 2) * (b1**2 + 6 * b2 - b1 * (3 + b2) - 3 * b3) / (3 * b1 * q**2)
    g3 = -((b1 - b2) ** 2) * (b1**2 + 6 * b2 + b2**2 - 2 * b1 * (1 + b2) - 6 * b3 + 2 * b4) / (4 * b1 * q**2)
    return (1.0, g1, g2, g3)


def proof_witnesses(b: Sequence[float], strict: bool = True) -> ProofWitness:
    """Parameters of the auxiliary functions ``h`` and ``q`` used for the |a_5| bound."""
    b1, b2, b3, b4 = (float(x) for x in b[:4])
    if strict:
        rep = check_conditions(b)
        if not rep.a5_conditions_hold:
            failed = [c.name for c in rep.conditions[:4] if not c.holds]
            raise ConditionsNotMet(f"conditions {failed} fail for B = {b[:4]}")
    eps = witness_eps(b1, b2, b3, b4)
    tau = math.sqrt((2 * b1 - b1**2 - 2 * b2) / (2 * (b1 - b2)))
    nu = nu_from_eps(*eps)
    gam = gamma_from_nu(nu)
    closed = gamma_closed(b1, b2, b3, b4)
    if strict and max(abs(x - y) for x, y in zip(gam, closed)) > GAMMA_TOL:
        raise ArithmeticError(f"gamma mismatch: generated {gam}, closed form {closed}")
    return ProofWitness(eps, tau, nu, gam, closed)


def a4_functional(kappa: Sequence[complex], gamma: Sequence[float], p: Sequence[complex]) -> complex:
    k1, k2, k3, k4 = kappa[:4]
    g0, g1, g2, g3 = gamma[:4]
    p1, p2, p3, p4 = p[:4]
    return (
        g0 * k4 * p4 / 2
        - g1 * k2**2 * p2**2 / 4
        - g1 * k1 * k3 * p1 * p3 / 2
        + 3 * g2 * k1**2 * k2 * p1**2 * p2 / 8
        - g3 * k1**4 * p1**4 / 16
    )


def a4_from_definition(gamma: Sequence[float], h: Sequence[complex]) -> complex:
    """Fourth coefficient of ``sum_n (-1)^(n+1) gamma_(n-1) H^n`` for ``H = sum h_n z^n``."""
    from .powerseries import Series

    H = Series.of([0, *h[:4]], 4)
    acc = Series.constant(0, 4)
    power = Series.constant(1, 4)
    for n in range(1, 5):
        power = power * H
        acc = acc + ((-1) ** (n + 1) * gamma[n - 1]) * power
    return acc.coeffs[4]


# --------------------------------------------------------------------------
# coefficient bounds
# --------------------------------------------------------------------------


def a5_sharp_bound(kind: ClassKind, b1: float, conditions: ConditionReport | None = None) -> float:
    """``B1/4`` (starlike) or ``B1/20`` (convex); validates conditions when given."""
    if conditions is not None and not conditions.a5_conditions_hold:
        raise ConditionsNotMet("C1-C4 do not all hold")
    return b1 / 4 if kind is ClassKind.STAR else b1 / 20


def a3_bound(kind: ClassKind, b: Sequence[float]) -> float:
    b1, b2 = b[0], b[1]
    if not b1 <= abs(b2):
        raise HypothesisFailed(f"B1 <= |B2| fails: {b1} > {abs(b2)}")
    return abs(b2) / 2 if kind is ClassKind.STAR else abs(b2) / 6


# --------------------------------------------------------------------------
# Hermitian-Toeplitz determinants
# --------------------------------------------------------------------------


def toeplitz_det(a: CoeffVector | Sequence[complex], m: int, n: int = 1) -> float:
    """Determinant of the m x m Hermitian Toeplitz matrix with first row ``a_n .. a_{n+m-1}``."""
    coeffs = a.a if isinstance(a, CoeffVector) else tuple(a)
    if n < 1 or n + m - 1 > len(coeffs):
        raise InsufficientCoefficients(f"need a_{n}..a_{n + m - 1}, have a_1..a_{len(coeffs)}")
    row = np.array(coeffs[n - 1 : n + m - 1], dtype=complex)
    if abs(row[0].imag) > 1e-12:
        raise ValueError("diagonal entry a_n must be real for a Hermitian matrix")
    row[0] = row[0].real
    det = np.linalg.det(toeplitz(row.conj(), row))
    scale = max(1.0, float(np.max(np.abs(row))) ** m)
    if abs(det.imag) > 1e-12 * scale:
        raise ArithmeticError(f"determinant has imaginary part {det.imag!r}")
    return float(det.real)


def t31(a2, a3):
    """``1 - 2|a2|^2 + 2 Re(a2^2 conj(a3)) - |a3|^2``; exact on Fractions."""
    sq2 = (a2 * a2.conjugate()).real
    sq3 = (a3 * a3.conjugate()).real
    cross = (a2 * a2 * a3.conjugate()).real
    return 1 - 2 * sq2 + 2 * cross - sq3


class Case(enum.Enum):
    SIGMA_OUTSIDE = "SigmaOutside"
    SIGMA_EQUALS_FOUR = "SigmaEqualsFour"
    SIGMA_INTERIOR = "SigmaInterior"
    HYPOTHESIS_FAILED = "HypothesisFailed"


@dataclass(frozen=True)
class BoundResult:
    value: float | None
    case: Case
    sigma: float | None = None
    sharp: bool = False
    witness: str | None = None
    exact: Fraction | None = None
    note: str | None = None
    candidates: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.case is Case.HYPOTHESIS_FAILED) != (self.value is None):
            raise ValueError("value is absent exactly when the hypothesis failed")

    @property
    def rational(self) -> str | None:
        return None if self.exact is None else f"{self.exact.numerator}/{self.exact.denominator}"

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "rational": self.rational,
            "case": self.case.value,
            "sigma": self.sigma,
            "sharp": self.sharp,
            "witness": self.witness,
            "note": self.note,
        }


WITNESS_K = {"f2": 1, "f3": 2, "g2": 1, "g3": 2, "identity": 0}


def _exactify(b1, b2):
    """Fractions for dyadic inputs with modest denominators, else the floats themselves."""
    try:
        f1, f2 = Fraction(b1), Fraction(b2)
    except (TypeError, ValueError):
        return b1, b2, False
    if f1.denominator <= DYADIC_MAX_DEN and f2.denominator <= DYADIC_MAX_DEN:
        return f1, f2, True
    return float(b1), float(b2), False


def _classify(sigma) -> Case:
    if abs(sigma - 4) <= SIGMA_SNAP:
        return Case.SIGMA_EQUALS_FOUR
    if 0 < sigma < 4:
        return Case.SIGMA_INTERIOR
    return Case.SIGMA_OUTSIDE


def _finish(value, case, sigma, sharp, witness, exact_mode, note=None, candidates=None) -> BoundResult:
    return BoundResult(
        value=float(value),
        case=case,
        sigma=None if sigma is None else float(sigma),
        sharp=sharp,
        witness=witness,
        exact=Fraction(value) if exact_mode else None,
        note=note,
        candidates={k: float(v) for k, v in (candidates or {}).items()},
    )


def t31_upper(kind: ClassKind, b: Sequence[float]) -> BoundResult:
    b1, b2 = b[0], b[1]
    if not b1 <= abs(b2):
        return BoundResult(None, Case.HYPOTHESIS_FAILED, note=f"B1 <= |B2| fails ({b1} > {abs(b2)})")
    return BoundResult(1.0, Case.SIGMA_OUTSIDE, None, True, "identity", Fraction(1), note="attained by f(z) = z")


def star_I(b1, b2, x):
    """Lower envelope of T_{3,1} over |zeta| <= 1 for ``x = p_1^2``."""
    return (b1**3 + b1**2 * (b2 - 1) - 2 * b1 * b2 - b2**2) * x * x / 64 + b1 * (2 * b2 - b1**2) * x / 16 - b1**2 / 4 + 1


def t31_lower_star(b: Sequence[float]) -> BoundResult:
    b1, b2, exact = _exactify(b[0], b[1])
    if not b1**2 > 2 * b2:
        return BoundResult(None, Case.HYPOTHESIS_FAILED, note=f"B1^2 > 2 B2 fails ({float(b1**2)} <= {float(2 * b2)})")
    f3 = 1 - b1**2 / 4
    f2 = 1 - b1**2 / 2 + b1**2 * b2 / 4 - b2**2 / 4
    cands = {"f2": f2, "f3": f3}
    den = (b1**2 - b1 - b2) * (b1 + b2)
    if abs(den) <= SIGMA_DEGENERATE:
        i0, i4 = star_I(b1, b2, 0), star_I(b1, b2, 4)
        w = "f3" if i0 < i4 else "f2"
        return _finish(min(i0, i4), Case.SIGMA_OUTSIDE, None, True, w, exact,
                       "sigma_1 undefined (degenerate quadratic); min of I(0), I(4)", cands)
    sigma = 2 * b1 * (b1**2 - 2 * b2) / den
    case = _classify(sigma)
    if case is Case.SIGMA_OUTSIDE:
        w = "f3" if f3 < f2 else "f2"
        return _finish(min(f2, f3), case, sigma, True, w, exact, candidates=cands)
    if case is Case.SIGMA_EQUALS_FOUR:
        return _finish(f2, case, sigma, True, "f2", exact, candidates=cands)
    val = 1 - b1**3 * (b1**3 + 4 * b1**2 - 4 * b1 - 8 * b2) / (16 * (b1**3 + b1**2 * (b2 - 1) - 2 * b1 * b2 - b2**2))
    return _finish(val, case, sigma, False, None, exact, candidates=cands)


def convex_I(b1, b2, x):
    """The quadratic in ``x = p_1^2`` as printed for the convex class."""
    d = 3 * b1**3 - 8 * b1 * b2 + 3 * b1**2 * b2 - 4 * b2**2
    return d * x * x / 2304 - b1 * (17 * b1 + 3 * b1**2 - 8 * b2) * x / 576 - b1**2 / 144 + 1


def convex_I_rederived(b1, b2, x):
    """``G(x, 1)`` expanded from the convex ``F(p_1, |zeta|, Re zeta)`` without simplification."""
    return (
        (b1**2 * b2 / 768 - b2**2 / 576) * x * x
        - b1**2 * (4 - x) ** 2 / 576
        - (3 * b1**3 - 8 * b1 * b2) * x * (4 - x) / 2304
        - b1**2 * x / 32
        + 1
    )


def t31_lower_convex(b: Sequence[float]) -> BoundResult:
    b1, b2, exact = _exactify(b[0], b[1])
    if not 3 * b1**2 >= 8 * b2:
        return BoundResult(None, Case.HYPOTHESIS_FAILED, note=f"3 B1^2 >= 8 B2 fails ({float(3 * b1**2)} < {float(8 * b2)})")
    g3 = 1 - b1**2 / 144
    g2 = 1 + (3 * b1**2 * (b2 - 6) - 4 * b2**2) / 144
    cands = {"g2": g2, "g3": g3}
    # Printed g3 value; f = g3 actually has T31 = 1 - B1^2/36, so g3 is never claimed sharp.
    g3_note = "printed g3 value 1 - B1^2/144 is not attained by g3 (T31(g3) = 1 - B1^2/36)"
    den = 3 * b1**3 - 8 * b1 * b2 + 3 * b1**2 * b2 - 4 * b2**2
    if abs(den) <= SIGMA_DEGENERATE:
        i0, i4 = convex_I(b1, b2, 0), convex_I(b1, b2, 4)
        if i0 < i4:
            return _finish(i0, Case.SIGMA_OUTSIDE, None, False, "g3", exact, g3_note, cands)
        return _finish(i4, Case.SIGMA_OUTSIDE, None, True, "g2", exact,
                       "sigma_2 undefined (degenerate quadratic); min of I(0), I(4)", cands)
    sigma = 2 * (17 * b1**2 + 3 * b1**3 - 8 * b1 * b2) / den
    case = _classify(sigma)
    if case is Case.SIGMA_OUTSIDE:
        if g3 < g2:
            return _finish(g3, case, sigma, False, "g3", exact, g3_note, cands)
        return _finish(g2, case, sigma, True, "g2", exact, candidates=cands)
    if case is Case.SIGMA_EQUALS_FOUR:
        return _finish(g2, case, sigma, True, "g2", exact, candidates=cands)
    val = 1 - b1**2 * (9 * b1**4 + 114 * b1**3 + 289 * b1**2 - 304 * b1 * b2 - 36 * b1**2 * b2 + 48 * b2**2) / (
        576 * den
    )
    return _finish(val, case, sigma, False, None, exact, candidates=cands)


def t31_lower_convex_rederived(b: Sequence[float], grid: int = 4001) -> float:
    """Minimum over ``x in [0, 4]`` of the re-expanded convex envelope (audit only)."""
    b1, b2 = float(b[0]), float(b[1])
    xs = np.linspace(0.0, 4.0, grid)
    vals = convex_I_rederived(b1, b2, xs)
    # the quadratic's vertex, if it lies inside, is the exact minimiser
    a2 = b1**2 * b2 / 768 - b2**2 / 576 - b1**2 / 576 + (3 * b1**3 - 8 * b1 * b2) / 2304
    best = float(vals.min())
    if a2 > 0:
        a1 = 8 * b1**2 / 576 - 4 * (3 * b1**3 - 8 * b1 * b2) / 2304 - b1**2 / 32
        xv = -a1 / (2 * a2)
        if 0 <= xv <= 4:
            best = min(best, float(convex_I_rederived(b1, b2, xv)))
    return best


def t31_lower(kind: ClassKind, b: Sequence[float]) -> BoundResult:
    return t31_lower_star(b) if kind is ClassKind.STAR else t31_lower_convex(b)


def witness_t31(kind: ClassKind, b: Sequence[float], witness: str):
    """T_{3,1} of a named extremal function, from the low-order closed forms."""
    k = WITNESS_K[witness]
    if k == 0:
        return t31(0j, 0j)
    p1, p2 = (2.0, 2.0) if k == 1 else (0.0, 2.0)
    a2, a3 = closed_form_low(kind, b, complex(p1), complex(p2))
    return t31(a2, a3)
