import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from cliffspec.errors import InternalConsistencyError
from cliffspec.linalg import jacobi_eigh, jacobi_eigvalsh, lu_det

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def _hermitian(re, im):
    M = re + 1j * im
    return (M + M.conj().T) / 2


@settings(max_examples=200, deadline=None)
@given(arrays(float, (4, 4), elements=finite), arrays(float, (4, 4), elements=finite))
def test_jacobi_matches_numpy_hermitian(re, im):
    M = _hermitian(re, im)
    w, V = jacobi_eigh(M)
    scale = 1 + np.linalg.norm(M)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(M), atol=1e-12 * scale)
    np.testing.assert_allclose(V.conj().T @ V, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(M @ V, V * w, atol=1e-11 * scale)


@settings(max_examples=200, deadline=None)
@given(arrays(float, (3, 3), elements=finite))
def test_jacobi_matches_numpy_real(A):
    S = (A + A.T) / 2
    w, V = jacobi_eigh(S)
    assert V.dtype == float
    np.testing.assert_allclose(w, np.linalg.eigvalsh(S), atol=1e-12 * (1 + np.linalg.norm(S)))


def test_batched_agrees_with_single():
    g = np.random.default_rng(0)
    stack = g.normal(size=(50, 4, 4)) + 1j * g.normal(size=(50, 4, 4))
    stack = (stack + np.conj(np.swapaxes(stack, -1, -2))) / 2
    batched = jacobi_eigvalsh(stack)
    single = np.array([jacobi_eigvalsh(M) for M in stack])
    np.testing.assert_allclose(batched, single, atol=1e-12)
    np.testing.assert_allclose(batched, np.linalg.eigvalsh(stack), atol=1e-12)


def test_jacobi_diagonal_and_zero():
    w, V = jacobi_eigh(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_array_equal(w, [-1.0, 2.0, 3.0])
    w, V = jacobi_eigh(np.zeros((4, 4), dtype=complex))
    np.testing.assert_array_equal(w, np.zeros(4))


def test_jacobi_nonconvergence_raises():
    M = np.array([[1.0, 1.0], [1.0, 2.0]])
    with pytest.raises(InternalConsistencyError):
        jacobi_eigh(M, max_sweeps=0)


@settings(max_examples=200, deadline=None)
@given(arrays(float, (4, 4), elements=finite), arrays(float, (4, 4), elements=finite))
def test_lu_det_matches_numpy(re, im):
    M = re + 1j * im
    ref = np.linalg.det(M)
    assert abs(lu_det(M) - ref) <= 1e-11 * (1 + np.prod(np.linalg.norm(M, axis=1)))


def test_lu_det_singular_and_batched():
    assert lu_det(np.zeros((4, 4))) == 0.0
    M = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert lu_det(M) == -1.0
    stack = np.random.default_rng(1).normal(size=(3, 5, 4, 4))
    np.testing.assert_allclose(lu_det(stack), np.linalg.det(stack), rtol=1e-12, atol=1e-12)
