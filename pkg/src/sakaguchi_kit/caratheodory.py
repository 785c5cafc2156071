"""Members of the Caratheodory class P and their Schwarz functions.

Constructors return a :class:`CaraFn` holding the truncated expansion
``1 + p_1 z + ... + p_N z^N`` together with a generator able to rebuild the
expansion at any order.  Membership in P is certified numerically: the real
part is sampled on a polar grid using a high-order expansion (the tail beyond
order ``CHECK_ORDER`` is below 1e-10 at radius 0.95), and every coefficient is
checked against the classical bound ``|p_n| <= 2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import BadMeasure, MembershipCheckFailed, ParamOutOfDisk, PoleAtInput, TauOutOfRange
from .powerseries import DEFAULT_ORDER, Series, divide, evaluate_many

GRID_RADII = (0.5, 0.9, 0.95)
GRID_ANGLES = 64
GRID_TOL = -1e-6
COEFF_SLACK = 1e-9
CHECK_ORDER = 600
MEASURE_TOL = 1e-12


@dataclass(frozen=True)
class ChoParams:
    xi1: complex
    xi2: complex
    xi3: complex

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.xi1, self.xi2, self.xi3)


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite Herglotz measure: ``weights[k]`` sits at angle ``angles[k]``."""

    weights: tuple[float, ...]
    angles: tuple[float, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.angles) or not self.weights:
            raise BadMeasure("weights and angles must be non-empty and of equal length")
        if any(w < 0 for w in self.weights):
            raise BadMeasure("negative weight")
        if abs(sum(self.weights) - 1.0) > MEASURE_TOL:
            raise BadMeasure(f"weights sum to {sum(self.weights)!r}, expected 1")

    @classmethod
    def of(cls, atoms: Sequence[tuple[float, float]]) -> "AtomicMeasure":
        """From ``(weight, angle)`` pairs."""
        return cls(tuple(float(w) for w, _ in atoms), tuple(float(t) for _, t in atoms))

    @classmethod
    def roots_of_unity(cls, k: int, phase: float = 0.0) -> "AtomicMeasure":
        """Equal weights at the k-th roots of unity: the function ``(1+z^k)/(1-z^k)``."""
        return cls(tuple([1.0 / k] * k), tuple(phase + 2 * math.pi * j / k for j in range(k)))

    def moments(self, order: int) -> np.ndarray:
        """``p_n = 2 sum_k w_k e^{i n t_k}`` for n = 0..order, with ``p_0 = 1``."""
        n = np.arange(order + 1)[:, None]
        w = np.asarray(self.weights)
        t = np.asarray(self.angles)
        out = 2.0 * (np.exp(1j * n * t) @ w)
        out[0] = 1.0
        return out


@dataclass(frozen=True)
class CaraFn:
    """A Caratheodory function: where it came from and its expansion."""

    source: str  # "cho" | "atoms" | "tau" | "explicit" | "hadamard"
    params: object
    series: Series
    expand: Callable[[int], Series] = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return self.series.order

    def coeff(self, n: int) -> complex:
        return self.series.coeffs[n]

    def describe(self) -> dict:
        """JSON-friendly description of the source."""
        p = self.params
        if isinstance(p, ChoParams):
            body = {k: [v.real, v.imag] for k, v in zip(("xi1", "xi2", "xi3"), map(complex, p.as_tuple()))}
        elif isinstance(p, AtomicMeasure):
            body = {"weights": list(p.weights), "angles": list(p.angles)}
        elif self.source == "tau":
            body = {"tau": p}
        else:
            body = {"coeffs": [[c.real, c.imag] for c in self.series.coeffs]}
        return {"source": self.source, **body}


def mobius(c: complex, w: complex) -> complex:
    """Disk automorphism ``(w - c)/(1 - conj(c) w)``."""
    den = 1 - c.conjugate() * w
    if abs(den) < 1e-300:
        raise PoleAtInput(f"1 - conj(c)*w vanishes for c={c!r}, w={w!r}")
    return (w - c) / den


def mobius_series(c: complex, w: Series) -> Series:
    """The automorphism applied to a series argument."""
    c = complex(c)
    return divide(w - c, 1 - c.conjugate() * w)


def _check_cho(params: ChoParams) -> None:
    xi1, xi2, xi3 = map(complex, params.as_tuple())
    if abs(xi1) >= 1 or abs(xi2) >= 1:
        raise ParamOutOfDisk("xi1 and xi2 must lie in the open unit disk")
    if abs(xi3) > 1 + 1e-15:
        raise ParamOutOfDisk("xi3 must lie in the closed unit disk")


def cho_omega(params: ChoParams, order: int = DEFAULT_ORDER) -> Series:
    """Schwarz function ``z*Psi(-xi1; z*Psi(-xi2; xi3*z))``."""
    _check_cho(params)
    xi1, xi2, xi3 = map(complex, params.as_tuple())
    z = Series.identity(order)
    inner = z * mobius_series(-xi2, xi3 * z)
    return z * mobius_series(-xi1, inner)


def _cayley(omega: Series) -> Series:
    """``(1 + omega)/(1 - omega)``."""
    return divide(1 + omega, 1 - omega)


def _cho_polys(params: ChoParams) -> tuple[Series, Series]:
    """Exact numerator/denominator cubics of ``omega`` as polynomials in z."""
    xi1, xi2, xi3 = map(complex, params.as_tuple())
    # inner = z*(xi3 z + xi2)/(1 + conj(xi2) xi3 z) =: U/V
    U = Series.of([0, xi2, xi3], 3)
    V = Series.of([1, xi2.conjugate() * xi3], 3)
    # omega = z*(U + xi1 V)/(V + conj(xi1) U)
    num = Series.identity(3) * (U + xi1 * V)
    den = V + xi1.conjugate() * U
    return num, den


def _cho_expand(params: ChoParams) -> Callable[[int], Series]:
    num, den = _cho_polys(params)
    top, bot = den + num, den - num

    def expand(order: int) -> Series:
        pad = max(order, 3)
        return divide(Series.of(top.coeffs, pad), Series.of(bot.coeffs, pad)).truncate(order)

    return expand


def cho_p(params: ChoParams, order: int = DEFAULT_ORDER, check: bool = True) -> CaraFn:
    omega = cho_omega(params, order)
    fn = CaraFn("cho", params, _cayley(omega), _cho_expand(params))
    if check:
        check_membership(fn)
    return fn


def atom_p(measure: AtomicMeasure, order: int = DEFAULT_ORDER, check: bool = True) -> CaraFn:
    """``sum_k w_k (1 + e^{i t_k} z)/(1 - e^{i t_k} z)``."""

    def expand(n: int) -> Series:
        return Series(tuple(complex(c) for c in measure.moments(n)))

    fn = CaraFn("atoms", measure, expand(order), expand)
    if check:
        check_membership(fn)
    return fn


def kernel(k: int = 1, order: int = DEFAULT_ORDER) -> CaraFn:
    """``(1 + z^k)/(1 - z^k)`` with its coefficients entered exactly."""

    def expand(n: int) -> Series:
        return Series(tuple(1 + 0j if j == 0 else (2 + 0j if j % k == 0 else 0j) for j in range(n + 1)))

    return CaraFn("atoms", AtomicMeasure.roots_of_unity(k), expand(order), expand)


def constant_one(order: int = DEFAULT_ORDER) -> CaraFn:
    """The function ``p = 1`` (Schwarz function 0, i.e. ``f(z) = z``)."""
    return explicit(Series.constant(1, order), check=False)


def tau_q(tau: float, order: int = DEFAULT_ORDER, check: bool = True) -> CaraFn:
    """``(1 + 2 tau z + 2 tau^2 z^2 + 2 tau z^3 + z^4)/(1 - z^4)``."""
    if not 0 < tau < 1:
        raise TauOutOfRange(f"tau={tau!r} not in (0, 1)")
    period = (2 * tau, 2 * tau * tau, 2 * tau, 2.0)

    def expand(n: int) -> Series:
        return Series(tuple(1 + 0j if j == 0 else complex(period[(j - 1) % 4]) for j in range(n + 1)))

    fn = CaraFn("tau", float(tau), expand(order), expand)
    if check:
        check_membership(fn)
    return fn


def tau_measure(tau: float) -> AtomicMeasure:
    """Atomic representation of :func:`tau_q`: it lives on the fourth roots of unity."""
    w = ((1 + tau) ** 2 / 4, (1 - tau * tau) / 4, (1 - tau) ** 2 / 4, (1 - tau * tau) / 4)
    return AtomicMeasure(w, tuple(j * math.pi / 2 for j in range(4)))


def explicit(series: Series, check: bool = True) -> CaraFn:
    def expand(n: int) -> Series:
        return series if n >= series.order else series.truncate(n)

    fn = CaraFn("explicit", None, series, expand)
    if check:
        check_membership(fn)
    return fn


def halved_hadamard(p: CaraFn, q: CaraFn, check: bool = True) -> CaraFn:
    """``1 + sum p_n q_n / 2 z^n``; stays in P when both factors do."""
    if check:
        check_membership(p)
        check_membership(q)

    def expand(n: int) -> Series:
        a, b = p.expand(n), q.expand(n)
        m = min(a.order, b.order)
        return Series((1 + 0j,) + tuple(a.coeffs[j] * b.coeffs[j] / 2 for j in range(1, m + 1)))

    order = min(p.order, q.order)
    fn = CaraFn("hadamard", (p.describe(), q.describe()), expand(order), expand)
    if check:
        check_membership(fn)
    return fn


def schwarz_of(p: CaraFn | Series) -> Series:
    """Inverse Cayley transform ``(p - 1)/(p + 1)``."""
    s = p.series if isinstance(p, CaraFn) else p
    return divide(s - 1, s + 1)


def grid_points() -> np.ndarray:
    theta = 2 * np.pi * np.arange(GRID_ANGLES) / GRID_ANGLES
    return np.concatenate([r * np.exp(1j * theta) for r in GRID_RADII])


def membership_report(fn: CaraFn) -> dict:
    """Evaluate both necessary conditions without raising."""
    s = fn.series
    max_coeff = max((abs(c) for c in s.coeffs[1:]), default=0.0)
    high = fn.expand(CHECK_ORDER)
    min_re = float(np.min(evaluate_many(high, grid_points()).real))
    return {
        "constant_term": s.coeffs[0],
        "max_abs_coeff": max_coeff,
        "min_real_part": min_re,
        "ok": abs(s.coeffs[0] - 1) <= 1e-12 and max_coeff <= 2 + COEFF_SLACK and min_re > GRID_TOL,
    }


def check_membership(fn: CaraFn) -> None:
    rep = membership_report(fn)
    if not rep["ok"]:
        raise MembershipCheckFailed(
            f"{fn.source} function fails P check: |p_n| max {rep['max_abs_coeff']:.3g}, "
            f"min Re {rep['min_real_part']:.3g}, p_0 {rep['constant_term']!r}"
        )


def cho_coefficients(xi1: complex, xi2: complex, xi3: complex) -> tuple[complex, complex, complex]:
    """``p_1, p_2, p_3`` in terms of the three disk parameters (closed form)."""
    s1 = 1 - abs(xi1) ** 2
    s2 = 1 - abs(xi2) ** 2
    p1 = 2 * xi1
    p2 = 2 * xi1**2 + 2 * s1 * xi2
    p3 = 2 * xi1**3 + 4 * s1 * xi1 * xi2 - 2 * s1 * xi1.conjugate() * xi2**2 + 2 * s1 * s2 * xi3
    return p1, p2, p3


def cho_rational(params: ChoParams, order: int = DEFAULT_ORDER) -> Series:
    """Expansion of the displayed rational form of the Cho function."""
    a, b, c = map(complex, params.as_tuple())
    ac, bc = a.conjugate(), b.conjugate()
    num = Series.of([1, bc * c + ac * b + a, ac * c + a * bc * c + b, c], order)
    den = Series.of([1, bc * c + ac * b - a, ac * c - a * bc * c - b, -c], order)
    return divide(num, den)


def random_measure(rng: np.random.Generator, max_atoms: int = 6) -> AtomicMeasure:
    k = int(rng.integers(1, max_atoms + 1))
    w = rng.dirichlet(np.ones(k))
    t = rng.uniform(0, 2 * np.pi, size=k)
    return AtomicMeasure(tuple(float(x) for x in w / w.sum()), tuple(float(x) for x in t))


def unit_disk_point(rng: np.random.Generator, radius: float = 1.0) -> complex:
    r = radius * math.sqrt(rng.uniform())
    return cmath.rect(r, rng.uniform(0, 2 * math.pi))
