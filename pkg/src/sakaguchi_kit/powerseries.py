"""Truncated complex power series.

A :class:`Series` stores ``c_0 .. c_N`` for a fixed truncation degree ``N``.
Binary operations truncate to the smaller of the two orders; nothing is
zero-padded, so a result never claims more accuracy than its inputs have.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DivisionByNonUnit, NonvanishingInner

DEFAULT_ORDER = 12
UNIT_TOL = 1e-14


@dataclass(frozen=True)
class Series:
    coeffs: tuple[complex, ...]

    # make numpy scalars defer to our reflected operators instead of broadcasting
    __array_ufunc__ = None

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a series needs at least the constant coefficient")

    # -- construction -----------------------------------------------------
    @classmethod
    def of(cls, coeffs: Iterable[complex], order: int | None = None) -> "Series":
        """Build from coefficients, padding with zeros or cutting to ``order``."""
        cs = [complex(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = cs[: order + 1] + [0j] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def constant(cls, c: complex, order: int = DEFAULT_ORDER) -> "Series":
        return cls.of([c], order)

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "Series":
        """The series ``z``."""
        return cls.of([0, 1], order)

    @classmethod
    def monomial(cls, k: int, c: complex = 1, order: int = DEFAULT_ORDER) -> "Series":
        cs = [0j] * (order + 1)
        if k <= order:
            cs[k] = complex(c)
        return cls(tuple(cs))

    # -- basic accessors --------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Series(self.coeffs[: order + 1])

    def to_numpy(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    def allclose(self, other: "Series", tol: float = 1e-12) -> bool:
        n = min(self.order, other.order)
        return all(abs(a - b) <= tol for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))

    # -- operators --------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Series):
            return combine(self, other, 1, 1)
        return Series((self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Series):
            return combine(self, other, 1, -1)
        return Series((self.coeffs[0] - other,) + self.coeffs[1:])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Series(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Series):
            return multiply(self, other)
        return Series(tuple(other * c for c in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return divide(self, other)
        return Series(tuple(c / other for c in self.coeffs))

    def __rtruediv__(self, other):
        return divide(Series.constant(other, self.order), self)

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)

    def __repr__(self) -> str:
        body = ", ".join(_fmt(c) for c in self.coeffs)
        return f"Series([{body}])"


def _fmt(c: complex) -> str:
    if c.imag == 0:
        return repr(c.real)
    return repr(c)


def combine(a: Series, b: Series, alpha: complex, beta: complex) -> Series:
    """``alpha*a + beta*b`` truncated to the shorter operand."""
    n = min(a.order, b.order)
    return Series(tuple(alpha * a.coeffs[k] + beta * b.coeffs[k] for k in range(n + 1)))


def multiply(a: Series, b: Series) -> Series:
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for k in range(n + 1):
        s = 0j
        for j in range(k + 1):
            s += ac[j] * bc[k - j]
        out.append(s)
    return Series(tuple(out))


def divide(a: Series, b: Series) -> Series:
    """Solve ``q*b = a`` by forward recurrence; requires a unit constant term in ``b``."""
    b0 = b.coeffs[0]
    if abs(b0) <= UNIT_TOL:
        raise DivisionByNonUnit(f"constant term {b0!r} of the divisor is not a unit")
    n = min(a.order, b.order)
    # Only nonzero divisor coefficients enter the recurrence; keeps polynomial
    # denominators linear-time at high order.
    support = [(j, bj) for j, bj in enumerate(b.coeffs[1 : n + 1], start=1) if bj != 0]
    q: list[complex] = []
    for k in range(n + 1):
        s = a.coeffs[k]
        for j, bj in support:
            if j > k:
                break
            s -= bj * q[k - j]
        q.append(s / b0)
    return Series(tuple(q))


def compose(outer: Series, inner: Series) -> Series:
    """``outer(inner(z))`` by Horner's rule; ``inner`` must vanish at 0."""
    if inner.coeffs[0] != 0:
        raise NonvanishingInner(f"inner series has constant term {inner.coeffs[0]!r}")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    acc = Series.constant(outer.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        acc = multiply(acc, inner) + outer.coeffs[k]
    return acc


def differentiate(a: Series) -> Series:
    if a.order == 0:
        return Series((0j,))
    return Series(tuple(k * a.coeffs[k] for k in range(1, a.order + 1)))


def antisymmetrize(f: Series) -> Series:
    """``f(z) - f(-z)``: odd coefficients doubled, even ones dropped."""
    return Series(tuple(2 * c if k % 2 else 0j for k, c in enumerate(f.coeffs)))


def evaluate(a: Series, z: complex) -> complex:
    acc = 0j
    for c in reversed(a.coeffs):
        acc = acc * z + c
    return acc


def evaluate_many(a: Series, zs: Sequence[complex] | np.ndarray) -> np.ndarray:
    """Vectorised Horner evaluation at many points."""
    return np.polyval(a.to_numpy()[::-1], np.asarray(zs, dtype=complex))


def sqrt(a: Series) -> Series:
    """Principal square root ``q`` with ``q*q = a`` and ``q_0 = +sqrt(a_0)``.

    The coefficient recurrence is the Newton iteration written out degree by degree.
    """
    a0 = a.coeffs[0]
    if abs(a0) <= UNIT_TOL:
        raise DivisionByNonUnit("square root of a series needs a unit constant term")
    q0 = cmath.sqrt(a0)
    q = [q0]
    for k in range(1, a.order + 1):
        s = a.coeffs[k]
        for j in range(1, k):
            s -= q[j] * q[k - j]
        q.append(s / (2 * q0))
    return Series(tuple(q))


def exp(a: Series) -> Series:
    """``exp(a)`` for a series; the constant term is factored out exactly."""
    n = a.order
    taylor = [1.0]
    for k in range(1, n + 1):
        taylor.append(taylor[-1] / k)
    shifted = a - a.coeffs[0]
    return compose(Series.of(taylor), shifted) * cmath.exp(a.coeffs[0])
