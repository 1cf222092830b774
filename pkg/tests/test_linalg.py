import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from commdet import linalg
from commdet.errors import ShapeError, StructureError


def test_psd_witness():
    res = linalg.is_psd(np.diag([1.0, -0.5]))
    assert not res.ok and res.min_eigenvalue == pytest.approx(-0.5)
    assert linalg.is_psd(np.eye(3)).ok


def test_psd_rejects_non_hermitian():
    with pytest.raises(StructureError):
        linalg.is_psd(np.array([[0, 1], [0, 0]]))


def test_shapes():
    with pytest.raises(ShapeError):
        linalg.as_matrix(np.zeros(3))
    with pytest.raises(ShapeError):
        linalg.rel_distance(np.zeros((2, 2)), np.zeros((3, 3)))


def test_tolerance_config_validates():
    with pytest.raises(ValueError):
        linalg.ToleranceConfig(psd_tol=0)


def test_norms_on_diagonal():
    A = np.diag([3.0, -4.0])
    assert linalg.operator_norm(A) == pytest.approx(4)
    assert linalg.trace_norm(A) == pytest.approx(7)
    assert linalg.hilbert_schmidt_norm(A) == pytest.approx(5)
    assert linalg.numerical_rank(np.diag([1, 1e-14, 0])) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2 ** 32 - 1))
def test_random_unitary(n, seed):
    U = linalg.random_unitary(n, np.random.default_rng(seed))
    assert np.allclose(U.conj().T @ U, np.eye(n), atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2 ** 32 - 1))
def test_gram_matrices_are_psd(n, seed):
    X = linalg.random_matrix(n, np.random.default_rng(seed))
    assert linalg.is_psd(X @ X.conj().T).ok
    s = linalg.singular_values(X)
    assert np.all(np.diff(s) >= 0)
