import math

import numpy as np
import pytest

from sakaguchi_kit.errors import BadSpec
from sakaguchi_kit.phicatalog import CATALOG, PhiSpec, parse_spec, phi_coeffs, phi_series


def approx(a, b, tol=1e-15):
    return np.allclose(a, b, atol=tol, rtol=0)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("janowski:0,-0.5", (0.5, 0.25, 0.125, 0.0625)),
        ("janowski:1,-1", (2, 2, 2, 2)),
        ("exp", (1, 1 / 2, 1 / 6, 1 / 24)),
        ("sqrt1p", (0.5, -0.125, 1 / 16, -5 / 128)),
        ("sg", (0.5, 0, -1 / 24, 0)),
        ("rl", ((5 - 3 * math.sqrt(2)) / 2,)),
        ("custom:0.3,0.1,-0.2,0.05", (0.3, 0.1, -0.2, 0.05)),
    ],
)
def test_known_coefficients(text, expected):
    got = phi_coeffs(parse_spec(text))
    assert approx(got[: len(expected)], expected)


def test_janowski_geometric_law():
    for a, b in [(0.5, -0.3), (1, 0), (0.2, -1), (0.9, 0.1)]:
        got = phi_coeffs(PhiSpec.janowski(a, b))
        assert approx(got, [(a - b) * (-b) ** (n - 1) for n in range(1, 5)], 1e-15)


@pytest.mark.parametrize("alpha", [0, 0.25, 0.5, 0.9])
def test_alpha_constant_coefficients(alpha):
    assert approx(phi_coeffs(PhiSpec.alpha(alpha)), [2 - 2 * alpha] * 4)


def test_rl_against_closed_function():
    # phi(z) = sqrt2 - (sqrt2 - 1) sqrt((1 - z)/(1 + 2(sqrt2 - 1) z)); compare values near 0.
    r2 = math.sqrt(2)
    s = phi_series(PhiSpec("rl"), 30)
    for w in (0.1, -0.2j, 0.15 + 0.1j):
        direct = r2 - (r2 - 1) * np.sqrt((1 - w) / (1 + 2 * (r2 - 1) * w))
        assert abs(s(w) - direct) < 1e-13


def test_series_constant_term_is_one():
    for spec in CATALOG:
        s = phi_series(spec, 8)
        assert s[0] == 1 and s[1].real > 0


def test_catalog_has_seven_classes():
    labels = [s.label for s in CATALOG]
    assert len(labels) == 7 and len(set(labels)) == 7


@pytest.mark.parametrize(
    "text",
    ["janowski:0.5,0.5", "janowski:0.2,-1.5", "janowski:1", "alpha:1", "alpha:-0.1",
     "custom:0,1", "custom:-0.5", "exp:1", "unknown", "janowski:a,b"],
)
def test_bad_specs(text):
    with pytest.raises(BadSpec):
        parse_spec(text)


def test_labels_round_trip():
    for text in ("janowski:0,-0.5", "alpha:0.25", "sqrt1p", "custom:0.5,0,-0.25"):
        spec = parse_spec(text)
        assert spec.label == text
        assert parse_spec(spec.label) == spec


def test_parse_is_whitespace_and_case_tolerant():
    assert parse_spec("  SG ") == PhiSpec("sg")
    assert parse_spec("Janowski: 0 , -0.5") == PhiSpec.janowski(0, -0.5)
