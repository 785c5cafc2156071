import cmath
import math

import numpy as np
import pytest

from sakaguchi_kit.caratheodory import AtomicMeasure, atom_p, constant_one, explicit, kernel, random_measure
from sakaguchi_kit.coeffsolver import (
    ClassKind,
    CoeffVector,
    class_quotient,
    closed_form_a5,
    closed_form_low,
    extremal_function,
    solve_coeffs,
    subordinate,
    upsilons,
)
from sakaguchi_kit.phicatalog import CATALOG, PhiSpec, phi_coeffs, phi_series
from sakaguchi_kit.powerseries import Series

STAR, CONVEX = ClassKind.STAR, ClassKind.CONVEX


def random_phi(rng) -> Series:
    b = [rng.uniform(1e-3, 2)] + list(rng.uniform(-2, 2, size=3))
    return Series.of([1, *b], 5)


def random_p(rng, order=5):
    return atom_p(random_measure(rng, 4), order, check=False)


def test_coeff_vector_indexing():
    v = CoeffVector((1, 2j, 3))
    assert v[1] == 1 and v[2] == 2j and v.order == 3
    with pytest.raises(IndexError):
        v[0]
    with pytest.raises(ValueError):
        CoeffVector((2, 0))
    assert v.as_series().coeffs == (0, 1, 2j, 3)


def test_kind_parse():
    assert ClassKind.parse(" Convex") is CONVEX


def test_hand_recursion_janowski_kernel():
    a = solve_coeffs(STAR, phi_series(PhiSpec.janowski(1, -1), 5), kernel(1, 5))
    assert np.allclose([a[2], a[3], a[5]], [1, 1, 1], atol=1e-14)


@pytest.mark.parametrize("kind", list(ClassKind))
def test_trivial_p_gives_identity(kind):
    for spec in CATALOG:
        a = solve_coeffs(kind, phi_series(spec, 5), constant_one(5))
        assert all(a[n] == 0 for n in range(2, 6))


def test_convex_sqrt1p_kernel_a2():
    a = solve_coeffs(CONVEX, phi_series(PhiSpec("sqrt1p"), 5), kernel(1, 5))
    assert abs(a[2] - 1 / 8) < 1e-15


def test_closed_form_low_examples():
    a2, a3 = closed_form_low(STAR, (0.5, -0.125), 2, 2)
    assert a2 == 0.25 and a3 == -1 / 16
    # 2 B1 p2 / 24 with p2 = 2 is 1/12; the solver agrees (6 a3 = c2 = B1 p2 / 2)
    a2, a3 = closed_form_low(CONVEX, (0.5, 0), 0, 2)
    assert a2 == 0 and abs(a3 - 1 / 12) < 1e-17
    solved = solve_coeffs(CONVEX, Series.of([1, 0.5, 0, 0, 0], 5), kernel(2, 5))
    assert abs(solved[3] - 1 / 12) < 1e-16
    for kind in ClassKind:
        assert closed_form_low(kind, (0.7, 0.2), 0, 0) == (0, 0)


def test_upsilon_examples():
    u = upsilons((2, 2, 2, 2))
    assert (u.u1, u.u2, u.u3, u.u4) == (0, 0, 0, 0.5)
    assert upsilons((0.3, 0.3, 1, -1)).u3 == 0
    assert upsilons((0.5, -0.125, 1 / 16, -5 / 128)).u3 == -1.25


def test_closed_form_a5_examples():
    b = phi_coeffs(PhiSpec.janowski(1, -1))
    assert closed_form_a5(STAR, b, (2, 2, 2, 2)) == 1
    for kind in ClassKind:
        assert closed_form_a5(kind, (0.4, 0.1, -0.3, 0.2), (0, 0, 0, 0)) == 0
    b1 = 0.37
    assert abs(closed_form_a5(STAR, (b1, 0.1, 0.2, 0.3), (0, 0, 0, 2)) - b1 / 4) < 1e-16
    assert abs(closed_form_a5(CONVEX, (b1, 0.1, 0.2, 0.3), (0, 0, 0, 2)) - b1 / 20) < 1e-16


@pytest.mark.parametrize("kind", list(ClassKind))
def test_oracle_equivalence(kind):
    rng = np.random.default_rng(11 if kind is STAR else 12)
    for _ in range(200):
        phi, p = random_phi(rng), random_p(rng)
        b = tuple(c.real for c in phi.coeffs[1:5])
        pc = p.series.coeffs
        a = solve_coeffs(kind, phi, p)
        a2, a3 = closed_form_low(kind, b, pc[1], pc[2])
        assert abs(a[2] - a2) < 1e-12 and abs(a[3] - a3) < 1e-12
        assert abs(a[5] - closed_form_a5(kind, b, pc[1:5])) < 1e-10


@pytest.mark.parametrize("kind", list(ClassKind))
def test_printed_a5_variant_is_not_equivalent(kind):
    rng = np.random.default_rng(13)
    gaps = []
    for _ in range(20):
        phi, p = random_phi(rng), random_p(rng)
        b = tuple(c.real for c in phi.coeffs[1:5])
        a5 = solve_coeffs(kind, phi, p)[5]
        gaps.append(abs(a5 - closed_form_a5(kind, b, p.series.coeffs[1:5], literal=True)))
    assert max(gaps) > 1e-3


@pytest.mark.parametrize("kind", list(ClassKind))
def test_solution_satisfies_defining_quotient(kind):
    rng = np.random.default_rng(14)
    for _ in range(30):
        phi, p = random_phi(rng).truncate(5), random_p(rng, 5)
        a = solve_coeffs(kind, phi, p, 5)
        f = a.as_series()
        lhs = class_quotient(kind, f)
        rhs = subordinate(phi, p)
        n = min(lhs.order, rhs.order, 4 if kind is STAR else 3)
        assert lhs.truncate(n).allclose(rhs.truncate(n), 1e-12)


@pytest.mark.parametrize("kind", list(ClassKind))
def test_rotation_covariance(kind):
    rng = np.random.default_rng(15)
    for _ in range(50):
        phi, p = random_phi(rng), random_p(rng)
        theta = rng.uniform(0, 2 * math.pi)
        e = cmath.exp(1j * theta)
        rotated = explicit(Series(tuple(c * e**n for n, c in enumerate(p.series.coeffs))), check=False)
        a, ar = solve_coeffs(kind, phi, p), solve_coeffs(kind, phi, rotated)
        for n in range(2, 6):
            assert abs(ar[n] - a[n] * e ** (n - 1)) < 1e-12


@pytest.mark.parametrize("kind", list(ClassKind))
def test_even_p_kills_even_coefficients(kind):
    rng = np.random.default_rng(16)
    for _ in range(30):
        m = random_measure(rng, 3)
        # symmetrise the measure under t -> t + pi to make p even
        w = tuple(x / 2 for x in m.weights) * 2
        t = m.angles + tuple(x + math.pi for x in m.angles)
        p = atom_p(AtomicMeasure(w, t), 5, check=False)
        a = solve_coeffs(kind, random_phi(rng), p)
        assert abs(a[2]) < 1e-14 and abs(a[4]) < 1e-14


def test_extremal_functions():
    for spec in CATALOG:
        b = phi_coeffs(spec)
        phi = phi_series(spec, 5)
        s4 = extremal_function(STAR, phi, 4)
        assert [s4[n] for n in (2, 3, 4)] == [0, 0, 0]
        assert abs(s4[5] - b[0] / 4) < 1e-15
        assert abs(extremal_function(CONVEX, phi, 4)[5] - b[0] / 20) < 1e-15
        s2 = extremal_function(STAR, phi, 2)
        assert s2[2] == 0 and abs(s2[3] - b[0] / 2) < 1e-15
    with pytest.raises(ValueError):
        extremal_function(STAR, phi_series(CATALOG[0], 5), 5)


def test_order_too_low_rejected():
    with pytest.raises(ValueError):
        solve_coeffs(STAR, phi_series(CATALOG[0], 3), kernel(1, 5), 5)
