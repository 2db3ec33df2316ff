import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliffspec.errors import ValidationError
from cliffspec.pauli import (SIGMA1, SIGMA2, SIGMA3, CanonicalParams, HermitianTriple,
                             PauliCoeffs, as_hermitian, canonicalize, loads_triple,
                             pauli_compose, pauli_decompose, triple_to_obj)

from conftest import random_unitary, sample_triples
from cliffspec.rng import SplitMix64

coeff = st.floats(-5, 5, allow_nan=False)


def test_decompose_basis_elements():
    assert pauli_decompose(SIGMA3) == PauliCoeffs(0, 0, 0, 1)
    assert pauli_decompose(np.eye(2)) == PauliCoeffs(1, 0, 0, 0)


def test_decompose_worked_matrix():
    M = np.array([[2, 1 + 3j], [1 - 3j, 0]])
    assert pauli_decompose(M) == PauliCoeffs(1, 1, -3, 1)


def test_compose_examples():
    np.testing.assert_array_equal(pauli_compose((0, 0, 0, 0)), np.zeros((2, 2)))
    np.testing.assert_array_equal(pauli_compose((0, 1, 0, 0)), SIGMA1)
    np.testing.assert_array_equal(pauli_compose((1, 1, -3, 1)), [[2, 1 + 3j], [1 - 3j, 0]])


@settings(max_examples=300)
@given(coeff, coeff, coeff, coeff)
def test_compose_decompose_round_trip(a0, a1, a2, a3):
    back = pauli_decompose(pauli_compose((a0, a1, a2, a3)))
    np.testing.assert_allclose(back, (a0, a1, a2, a3), atol=1e-14)


def test_non_hermitian_names_entry():
    with pytest.raises(ValidationError, match=r"\(1,2\)"):
        as_hermitian([[1, 2], [3, 1]], "A2")
    with pytest.raises(ValidationError, match=r"\(2,2\)"):
        as_hermitian([[1, 0], [0, 1 + 1j]])
    with pytest.raises(ValidationError):
        as_hermitian([[1, 0, 0]])
    with pytest.raises(ValidationError, match="not finite"):
        as_hermitian([[np.nan, 0], [0, 1]])


def test_small_asymmetry_is_symmetrized():
    M = as_hermitian([[1, 1 + 1e-13], [1, 0]])
    assert M[0, 1] == M[1, 0]


def test_canonical_already_diagonal():
    p = canonicalize(HermitianTriple(SIGMA3, SIGMA3, SIGMA3))
    np.testing.assert_array_equal(p.center, 0)
    np.testing.assert_array_equal(p.a, [1, 1, 1])
    assert p.alpha2 == 0 and p.alpha3 == 0
    np.testing.assert_array_equal(p.conjugator, np.eye(2))


def test_canonical_sigma1_uses_hadamard():
    p = canonicalize(HermitianTriple(SIGMA1, 0 * SIGMA1, 0 * SIGMA1))
    np.testing.assert_allclose(p.a, [1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(np.abs(p.conjugator), np.full((2, 2), 1 / np.sqrt(2)), atol=1e-15)


def test_example_params_round_trip():
    p = CanonicalParams(np.zeros(3), [2, 1, 2], 1 - 3j, 2 + 1j)
    q = canonicalize(p.reconstruct())
    np.testing.assert_allclose(q.a, p.a, atol=1e-14)
    assert abs(q.alpha2 - p.alpha2) < 1e-14 and abs(q.alpha3 - p.alpha3) < 1e-14


def test_round_trip_random_triples():
    for t in sample_triples(10_000):
        p = canonicalize(t)
        back = p.reconstruct()
        for A, B in zip(t.matrices, back.matrices):
            assert np.abs(A - B).max() <= 1e-10
        assert p.a[0] >= 0
        np.testing.assert_allclose(p.conjugator @ p.conjugator.conj().T, np.eye(2), atol=1e-13)


def test_canonicalize_idempotent():
    for t in sample_triples(500, seed=3):
        p = canonicalize(t)
        q = canonicalize(p.canonical_triple())
        np.testing.assert_allclose(q.conjugator, np.eye(2), atol=0)
        np.testing.assert_allclose(q.a, p.a, atol=1e-12)
        np.testing.assert_allclose(q.center, p.center, atol=1e-12)


def test_degenerate_first_matrix_uses_identity():
    t = HermitianTriple(2 * np.eye(2), SIGMA1, SIGMA2)
    p = canonicalize(t)
    np.testing.assert_array_equal(p.conjugator, np.eye(2))
    assert p.center[0] == 2 and p.a[0] == 0


def test_negative_a13_flipped():
    p = canonicalize(HermitianTriple(-SIGMA3, SIGMA1, SIGMA2))
    assert p.a[0] == 1


def test_canonical_invariant_under_conjugation():
    g = SplitMix64(5)
    for t in sample_triples(200, seed=9):
        U = random_unitary(g)
        p, q = canonicalize(t), canonicalize(t.conjugated(U))
        np.testing.assert_allclose(q.a, p.a, atol=1e-10)
        np.testing.assert_allclose(q.center, p.center, atol=1e-10)


def test_json_round_trip():
    t = sample_triples(1)[0]
    back = loads_triple(json.dumps(triple_to_obj(t)))
    for A, B in zip(t.matrices, back.matrices):
        np.testing.assert_array_equal(A, B)


@pytest.mark.parametrize("text", [
    '{"A1": [[{"re":1,"im":0},{"re":0,"im":0}],[{"re":0,"im":0},{"re":1,"im":0}]]}',
    '{"A1": 1, "A2": 2, "A3": 3, "A4": 4}',
    '{"A1": [[{"re":NaN,"im":0},{"re":0,"im":0}],[{"re":0,"im":0},{"re":1,"im":0}]],"A2":0,"A3":0}',
    '[1, 2]',
])
def test_json_rejects_malformed(text):
    with pytest.raises(ValidationError):
        loads_triple(text)


def test_json_rejects_extra_entry_keys_and_bools():
    obj = triple_to_obj(sample_triples(1)[0])
    obj["A1"][0][0]["extra"] = 1
    with pytest.raises(ValidationError):
        loads_triple(json.dumps(obj))
    obj = triple_to_obj(sample_triples(1)[0])
    obj["A2"][1][1]["re"] = True
    with pytest.raises(ValidationError):
        loads_triple(json.dumps(obj))


def test_json_syntax_error_keeps_position():
    with pytest.raises(json.JSONDecodeError) as err:
        loads_triple('{\n  "A1": ]')
    assert err.value.lineno == 2
