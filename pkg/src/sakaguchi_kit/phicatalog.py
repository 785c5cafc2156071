"""Catalog of Ma-Minda type functions ``phi(z) = 1 + B1 z + B2 z^2 + ...``.

Every member is generated from series arithmetic (division, composition,
square roots, exponentials) rather than hand-typed coefficients.  ``Custom``
accepts raw coefficients and only enforces ``B1 > 0``; whether such a phi is
univalent with a half-plane image is left to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import powerseries as ps
from .errors import BadSpec
from .powerseries import DEFAULT_ORDER, Series

KINDS = ("janowski", "alpha", "exp", "sqrt1p", "rl", "sg", "custom")


@dataclass(frozen=True)
class PhiSpec:
    kind: str
    params: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadSpec(f"unknown phi kind {self.kind!r}")
        n = len(self.params)
        if self.kind == "janowski":
            if n != 2:
                raise BadSpec("janowski needs A,B")
            a, b = self.params
            if not (-1 <= b < a <= 1):
                raise BadSpec(f"janowski requires -1 <= B < A <= 1, got A={a}, B={b}")
        elif self.kind == "alpha":
            if n != 1 or not (0 <= self.params[0] < 1):
                raise BadSpec("alpha needs a single value in [0, 1)")
        elif self.kind == "custom":
            if n < 1 or not self.params[0] > 0:
                raise BadSpec("custom phi needs B1 > 0")
        elif n:
            raise BadSpec(f"{self.kind} takes no parameters")

    @classmethod
    def janowski(cls, a: float, b: float) -> "PhiSpec":
        return cls("janowski", (float(a), float(b)))

    @classmethod
    def alpha(cls, a: float) -> "PhiSpec":
        return cls("alpha", (float(a),))

    @classmethod
    def custom(cls, *bs: float) -> "PhiSpec":
        return cls("custom", tuple(float(b) for b in bs))

    @property
    def label(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}:" + ",".join(_num(p) for p in self.params)


def _num(x: float) -> str:
    return repr(int(x)) if float(x).is_integer() else repr(float(x))


def parse_spec(text: str) -> PhiSpec:
    """Parse ``janowski:A,B``, ``alpha:a``, ``exp``, ``sqrt1p``, ``rl``, ``sg``, ``custom:B1,...``."""
    text = text.strip()
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    try:
        params = tuple(float(x) for x in rest.split(",")) if rest.strip() else ()
    except ValueError as exc:
        raise BadSpec(f"cannot parse parameters in {text!r}") from exc
    return PhiSpec(kind, params)


def phi_series(spec: PhiSpec, order: int = DEFAULT_ORDER) -> Series:
    z = Series.identity(order)
    k = spec.kind
    if k == "janowski":
        a, b = spec.params
        out = (1 + a * z) / (1 + b * z)
    elif k == "alpha":
        (alpha,) = spec.params
        out = (1 + (1 - 2 * alpha) * z) / (1 - z)
    elif k == "exp":
        out = ps.exp(z)
    elif k == "sqrt1p":
        out = ps.sqrt(1 + z)
    elif k == "rl":
        r2 = math.sqrt(2)
        inside = (1 - z) / (1 + 2 * (r2 - 1) * z)
        out = r2 - (r2 - 1) * ps.sqrt(inside)
    elif k == "sg":
        out = 2 / (1 + ps.exp(-z))
    else:
        out = Series.of([1, *spec.params], order)
    out = Series((1 + 0j,) + out.coeffs[1:])
    if not out.coeffs[1].real > 0 or abs(out.coeffs[1].imag) > 0:
        raise BadSpec(f"{spec.label}: B1 must be real and positive")
    return out


def phi_coeffs(spec: PhiSpec) -> tuple[float, float, float, float]:
    """``(B1, B2, B3, B4)`` as real numbers."""
    s = phi_series(spec, 4)
    return tuple(float(c.real) for c in s.coeffs[1:5])  # type: ignore[return-value]


CATALOG = (
    PhiSpec.janowski(0, -0.5),
    PhiSpec.janowski(1, -1),
    PhiSpec.alpha(0.25),
    PhiSpec("exp"),
    PhiSpec("sqrt1p"),
    PhiSpec("rl"),
    PhiSpec("sg"),
)
