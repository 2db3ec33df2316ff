import math

import numpy as np
import pytest

from cliffspec.errors import PreconditionError
from cliffspec.localizer import det_localizer
from cliffspec.pauli import CanonicalParams, canonicalize
from cliffspec.quartic import (D_full, D_reduced, coupling_matrix, growth_radius, invariants,
                               symmetry_center)
from cliffspec.rng import SplitMix64, random_points

from conftest import sample_params


def _params(a, al2, al3, center=(0, 0, 0)):
    return CanonicalParams(np.array(center, float), np.array(a, float), al2, al3)


EX41 = _params((2, 1, 2), 1 - 3j, 2 + 1j)
EX42 = _params((math.sqrt(10), 2, -2), 2 - 1j, 3 + 2j)
EX43 = _params((6, 1, -1), 2 - 1j, 3 + 2j)
EX44 = _params((1, 1, 0), 0j, 1 + 1j)
EX45 = _params((1, 1, 0), 0j, 1j)


def test_example_41_constants():
    inv = invariants(EX41)
    assert abs(EX41.alpha2) ** 2 == pytest.approx(10)
    assert abs(EX41.alpha3) ** 2 == pytest.approx(5)
    assert abs(EX41.alpha2 ** 2 - EX41.alpha3.conjugate() ** 2) ** 2 == pytest.approx(125)
    assert (EX41.alpha2 * EX41.alpha3).imag == pytest.approx(-5)
    assert inv.norm_a_sq ** 2 == pytest.approx(81)
    assert inv.e == pytest.approx(105, abs=1e-9)
    assert inv.c == pytest.approx(-24, abs=1e-9)


def test_example_42_constants():
    inv = invariants(EX42)
    assert inv.e == pytest.approx(324, abs=1e-9)
    assert inv.norm_a_sq ** 2 == pytest.approx(324, abs=1e-9)
    assert inv.c == pytest.approx(0, abs=1e-9)


def test_example_43_constants_computed():
    # the listed data give |a|^4 = 38^2; see the acceptance suite for the stated figure
    inv = invariants(EX43)
    assert inv.e == pytest.approx(1236, abs=1e-9)
    assert inv.norm_a_sq ** 2 == pytest.approx(1444, abs=1e-9)
    assert inv.c == pytest.approx(208, abs=1e-9)


def test_example_45_constants():
    inv = invariants(EX45)
    assert (inv.e, inv.c) == (pytest.approx(3), pytest.approx(1))
    assert inv.lambda0 == pytest.approx(2)
    np.testing.assert_allclose(inv.x0, [1 / math.sqrt(2), 1 / math.sqrt(2), 0], atol=1e-14)


def test_printed_polynomials_up_to_cross_term():
    # printed forms drop the x2*x3 term carried by Im(alpha2 alpha3)
    g = SplitMix64(1)
    x = random_points(g, 200, span=3.0)
    x1, x2, x3 = x.T
    for p, (a1, a2, a3), quad, const, im in [
        (EX41, (2, 1, 2), (30, -10, 10), -105, -5.0),
        (EX42, (math.sqrt(10), 2, -2), (36, 16, -16), -324, 1.0),
        (EX43, (6, 1, -1), (36, 16, -16), -1236, 1.0),
    ]:
        printed = (((x1 - a1) ** 2 + (x2 - a2) ** 2 + (x3 - a3) ** 2)
                   * ((x1 + a1) ** 2 + (x2 + a2) ** 2 + (x3 + a3) ** 2)
                   + quad[0] * x1 ** 2 + quad[1] * x2 ** 2 + quad[2] * x3 ** 2 + const)
        cross = -8 * im * x2 * x3
        np.testing.assert_allclose(D_full(p, x), printed + cross, rtol=1e-12, atol=1e-9)


def test_isolated_point_polynomials():
    g = SplitMix64(2)
    x1, x2, x3 = random_points(g, 300, span=3.0).T
    x = np.stack([x1, x2, x3], axis=1)
    r2 = x1 ** 2 + x2 ** 2 + x3 ** 2
    np.testing.assert_allclose(D_full(EX44, x), r2 ** 2 + 4 * (x1 - x2) ** 2, rtol=1e-12, atol=1e-9)
    np.testing.assert_allclose(D_full(EX45, x), (r2 - 1) ** 2 + 4 * (x1 - x2) ** 2 + 4 * x3 ** 2,
                               rtol=1e-12, atol=1e-9)


def test_trivial_values():
    zero = _params((0, 0, 0), 0j, 0j)
    assert D_full(zero, [1, 0, 0]) == 1
    assert D_full(EX44, [0, 0, 0]) == pytest.approx(0, abs=1e-12)
    inv = invariants(EX41)
    assert D_reduced(inv, [0, 0, 0]) == pytest.approx(-24, abs=1e-12)


def test_full_matches_oracle():
    g = SplitMix64(3)
    for p in sample_params(2000):
        x = random_points(g, 5)
        det = det_localizer(p.reconstruct(), x)
        assert np.all(np.abs(D_full(p, x) - det) <= 1e-8 * (1 + np.abs(det)))


def test_reduced_matches_full_centered():
    g = SplitMix64(4)
    for p in sample_params(500):
        pc = p.centered()
        inv = invariants(pc)
        x = random_points(g, 1000)
        full = D_full(pc, x)
        np.testing.assert_allclose(D_reduced(inv, x), full, rtol=1e-10, atol=1e-10 * inv.scale)


def test_reduced_rejects_uncentered():
    inv = invariants(_params((1, 0, 0), 1j, 0j, center=(1, 2, 3)))
    with pytest.raises(PreconditionError):
        D_reduced(inv, [0, 0, 0])
    assert D_reduced(inv.centered(), [0, 0, 0]) == inv.c


def test_reduced_batch_layout_independent():
    inv = invariants(EX43)
    x = random_points(SplitMix64(5), 64)
    single = np.array([D_reduced(inv, xi) for xi in x])
    np.testing.assert_array_equal(D_reduced(inv, x), single)
    np.testing.assert_array_equal(D_reduced(inv, x.reshape(4, 16, 3)).ravel(), single)


def test_symmetry_center():
    assert np.all(symmetry_center(EX41) == 0)
    p = _params((1, 2, -1), 1 + 1j, 2 - 1j, center=(1, 2, 3))
    np.testing.assert_array_equal(symmetry_center(p), [1, 2, 3])
    assert D_full(p, [0, 0, 0]) == pytest.approx(D_full(p, [2, 4, 6]), rel=1e-10)


def test_central_symmetry_random():
    g = SplitMix64(6)
    for p in sample_params(500):
        x = random_points(g, 10)
        d = D_full(p, x)
        mirrored = D_full(p, 2 * p.center - x)
        assert np.all(np.abs(d - mirrored) <= 1e-9 * (1 + np.abs(d)))


def test_shift_covariance():
    g = SplitMix64(7)
    for p in sample_params(300):
        t = p.reconstruct()
        y = random_points(g, 1)[0]
        shifted = canonicalize(t.shifted(y))
        np.testing.assert_allclose(shifted.center, canonicalize(t).center + y, atol=1e-12)
        x = random_points(g, 5)
        np.testing.assert_allclose(D_full(shifted, x + y), D_full(p, x), rtol=1e-9, atol=1e-7)


def test_growth_radius():
    g = SplitMix64(8)
    for p in sample_params(300):
        inv = invariants(p.centered())
        u = random_points(g, 200, span=1.0)
        u /= np.linalg.norm(u, axis=1)[:, None]
        R = growth_radius(inv)
        for scale in (1.0, 1.5, 3.0):
            assert np.all(D_reduced(inv, scale * R * u) > 0)


def test_invariant_identities():
    g = SplitMix64(9)
    for p in sample_params(2000):
        inv = invariants(p)
        al2, al3 = p.alpha2, p.alpha3
        A = inv.coupling
        scale = inv.scale
        assert inv.beta == inv.norm_a_sq + inv.alpha_sq
        assert abs(inv.c - (inv.norm_a_sq ** 2 - inv.e)) <= 1e-9 * max(1, abs(inv.e), inv.norm_a_sq ** 2)
        np.testing.assert_array_equal(A, A.T)
        # trace(A) = beta, so the top eigenvalue is at least beta/3; beta/2 is only
        # guaranteed on the branch that needs it (c > 0)
        assert inv.lambda0 >= inv.beta / 3 - 1e-12 * scale
        if inv.c > 0:
            assert 2 * inv.lambda0 - inv.beta >= -1e-12 * scale
            assert (2 * inv.lambda0 - inv.beta) ** 2 >= inv.c - 1e-9 * scale
        re23 = (al2 * al3).real
        assert np.linalg.det(A) == pytest.approx(p.a[0] ** 2 * re23 ** 2, rel=1e-9, abs=1e-9 * scale ** 1.5)
        lhs = inv.alpha_sq ** 2 - abs(al2 ** 2 - al3.conjugate() ** 2) ** 2
        assert lhs == pytest.approx(4 * re23 ** 2, rel=1e-12, abs=1e-12 * (1 + inv.alpha_sq ** 2))
        for lam in g.uniforms(10, -30, 30):
            direct = np.linalg.det(A - lam * np.eye(3))
            char = -lam ** 3 + inv.beta * lam ** 2 - inv.d * lam + np.linalg.det(A)
            assert direct == pytest.approx(char, rel=1e-9, abs=1e-9 * (1 + abs(lam) + inv.beta) ** 3)


def test_eigenpair():
    for p in sample_params(500, seed=10):
        inv = invariants(p)
        np.testing.assert_allclose(inv.coupling @ inv.x0, inv.lambda0 * inv.x0,
                                   atol=1e-12 * inv.scale)
        assert np.linalg.norm(inv.x0) == pytest.approx(1, abs=1e-13)
        assert inv.lambda0 == pytest.approx(np.linalg.eigvalsh(inv.coupling)[-1], abs=1e-12 * inv.scale)


def test_coupling_matrix_diagonal_case():
    A = coupling_matrix([1, 2, 3], 0j, 0j)
    np.testing.assert_array_equal(A, np.outer([1, 2, 3], [1, 2, 3]))


def test_top_eigenvalue_can_fall_below_half_trace():
    # A = I here: lambda0 = 1 < beta / 2 = 1.5, harmless because c = -3 <= 0
    inv = invariants(_params((1, 0, 0), 1 + 0j, 1 + 0j))
    np.testing.assert_allclose(inv.coupling, np.eye(3))
    assert inv.lambda0 == pytest.approx(1) and inv.beta == 3
    assert inv.c == pytest.approx(-3)
