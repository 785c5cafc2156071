"""Taylor coefficients of functions in the Sakaguchi-type classes.

Given ``phi`` and a Caratheodory function ``p`` (equivalently the Schwarz
function ``w = (p - 1)/(p + 1)``), put ``C = phi(w) = 1 + c_1 z + ...``.

Starlike w.r.t. symmetric points (``STAR``)::

    2 z f'(z) / (f(z) - f(-z)) = C(z)
    =>  n a_n = sum_{m odd, m <= n} a_m c_{n-m}

Convex w.r.t. symmetric points (``CONVEX``)::

    (2 z f'(z))' / (f(z) - f(-z))' = C(z)
    =>  n^2 a_n = sum_{m odd, m <= n} m a_m c_{n-m}

For odd ``n`` the ``m = n`` term (``c_0 = 1``) is moved to the left.  The
factor 2 in the starlike quotient makes it equal 1 at the origin.

:func:`solve_coeffs` is the order-by-order oracle; the ``closed_form_*``
functions are the explicit low-order formulas it is checked against.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .caratheodory import CaraFn, kernel, schwarz_of
from .errors import DegenerateDivisor
from .powerseries import Series, antisymmetrize, compose, differentiate, divide, multiply


class ClassKind(enum.Enum):
    STAR = "star"
    CONVEX = "convex"

    @classmethod
    def parse(cls, text: str) -> "ClassKind":
        return cls(text.strip().lower())


@dataclass(frozen=True)
class CoeffVector:
    """``a = (a_1, ..., a_N)`` with ``a_1 = 1``; ``vec[n]`` is ``a_n``."""

    a: tuple[complex, ...]

    def __post_init__(self):
        if not self.a or self.a[0] != 1:
            raise ValueError("a_1 must equal 1")

    def __getitem__(self, n: int) -> complex:
        if n < 1:
            raise IndexError("coefficients are indexed from 1")
        return self.a[n - 1]

    @property
    def order(self) -> int:
        return len(self.a)

    def as_series(self) -> Series:
        """``f(z) = z + a_2 z^2 + ...``."""
        return Series((0j,) + self.a)


@dataclass(frozen=True)
class Upsilons:
    u1: float
    u2: float
    u3: float
    u4: float


def subordinate(phi: Series, p: CaraFn | Series) -> Series:
    """``phi(w(z))`` with ``w = (p - 1)/(p + 1)``."""
    return compose(phi, schwarz_of(p))


def solve_from_composite(kind: ClassKind, c: Sequence[complex], order: int) -> CoeffVector:
    """Run the coefficient recursion for a given composite ``C = 1 + c_1 z + ...``."""
    a = [0j, 1 + 0j]  # a[0] unused, a[1] = 1
    convex = kind is ClassKind.CONVEX
    for n in range(2, order + 1):
        s = 0j
        for m in range(1, n, 2):
            s += (m * a[m] if convex else a[m]) * c[n - m]
        if convex:
            div = n * n - (n if n % 2 else 0)
        else:
            div = n - (1 if n % 2 else 0)
        if div == 0:
            raise DegenerateDivisor(f"zero divisor at n={n}")
        a.append(s / div)
    return CoeffVector(tuple(a[1:]))


def solve_coeffs(kind: ClassKind, phi: Series, p: CaraFn | Series, order: int = 5) -> CoeffVector:
    """``a_1..a_order`` of the class member determined by ``phi`` and ``p``."""
    s = p.series if isinstance(p, CaraFn) else p
    n = min(order, phi.order, s.order)
    if n < order:
        raise ValueError(f"inputs only carry order {n}, {order} requested")
    c = subordinate(phi.truncate(order), s.truncate(order)).coeffs
    return solve_from_composite(kind, c, order)


def class_quotient(kind: ClassKind, f: Series) -> Series:
    """The defining quotient for ``f`` (used to check solver output independently)."""
    odd = antisymmetrize(f)
    if kind is ClassKind.STAR:
        num = 2 * multiply(Series.identity(f.order), differentiate(f))
        # both sides vanish at 0; cancel one power of z
        return divide(Series(num.coeffs[1:]), Series(odd.coeffs[1:]))
    num = differentiate(2 * multiply(Series.identity(f.order), differentiate(f)))
    return divide(num, differentiate(odd))


def closed_form_low(kind: ClassKind, b: Sequence[float], p1: complex, p2: complex) -> tuple[complex, complex]:
    b1, b2 = b[0], b[1]
    if kind is ClassKind.STAR:
        return b1 * p1 / 4, (-b1 * p1**2 + b2 * p1**2 + 2 * b1 * p2) / 8
    return b1 * p1 / 8, ((b2 - b1) * p1**2 + 2 * b1 * p2) / 24


def upsilons(b: Sequence[float]) -> Upsilons:
    b1, b2, b3, b4 = b[:4]
    return Upsilons(
        (b1**2 - 2 * b1 + 6 * b2 - 2 * b1 * b2 + b2**2 - 6 * b3 + 2 * b4) / (16 * b1),
        (3 * b1 - b1**2 - 6 * b2 + b1 * b2 + 3 * b3) / (4 * b1),
        (b2 - b1) / b1,
        (b1**2 - 2 * b1 + 2 * b2) / (4 * b1),
    )


def closed_form_a5(
    kind: ClassKind, b: Sequence[float], p: Sequence[complex], literal: bool = False
) -> complex:
    """Fifth coefficient from the quartic form in ``p_1..p_4``.

    The fourth term is ``u4 * p2^2`` and the convex prefactor is ``B1/40``
    (so that ``|form| <= 2`` gives ``|a_5| <= B1/20``).  ``literal=True``
    reproduces the printed variant instead: ``p1^2 p2`` repeated in the fourth
    term and prefactor ``B1/20`` for the convex class.  Audits only.
    """
    u = upsilons(b)
    p1, p2, p3, p4 = p[:4]
    fourth = p1**2 * p2 if literal else p2**2
    form = u.u1 * p1**4 + u.u2 * p1**2 * p2 + u.u3 * p1 * p3 + u.u4 * fourth + p4
    if kind is ClassKind.STAR:
        pref = b[0] / 8
    else:
        pref = b[0] / 20 if literal else b[0] / 40
    return pref * form


def extremal_function(kind: ClassKind, phi: Series, k: int, order: int = 5) -> CoeffVector:
    """Member with Schwarz function ``z^k`` (``p = (1 + z^k)/(1 - z^k)``)."""
    if k not in (1, 2, 3, 4):
        raise ValueError("k must be 1, 2, 3 or 4")
    return solve_coeffs(kind, phi, kernel(k, order), order)
