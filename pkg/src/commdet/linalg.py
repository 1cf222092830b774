"""Dense complex matrix kernel with explicit, norm-relative tolerances."""
from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import NamedTuple

import numpy as np

from .errors import ShapeError, StructureError


@dataclass(frozen=True)
class ToleranceConfig:
    """Relative tolerances used throughout.

    psd_tol : min eigenvalue may dip to ``-psd_tol * max(1, ||A||)``.
    rank_tol : singular values above ``rank_tol * s_max`` count toward rank.
    eq_tol : relative Frobenius tolerance for operator equality.
    """

    psd_tol: float = 1e-9
    rank_tol: float = 1e-9
    eq_tol: float = 1e-10

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise ValueError(f"{name} must be > 0, got {value}")

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOL = ToleranceConfig()


def as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2:
        raise ShapeError(f"expected a 2-d array, got shape {A.shape}")
    return A


def adjoint(A) -> np.ndarray:
    return as_matrix(A).conj().T


def frobenius(A) -> float:
    A = np.asarray(A)
    return float(np.linalg.norm(A)) if A.size else 0.0


def _require_square(A: np.ndarray):
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")


def hermitian_defect(A) -> float:
    """Relative Frobenius distance of A from its Hermitian part."""
    A = as_matrix(A)
    _require_square(A)
    return frobenius(A - A.conj().T) / max(1.0, frobenius(A))


def hermitian_eigenvalues(A, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Ascending real eigenvalues of the Hermitian part of ``A``."""
    A = as_matrix(A)
    _require_square(A)
    if A.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(0.5 * (A + A.conj().T))


class PsdResult(NamedTuple):
    ok: bool
    min_eigenvalue: float


def is_psd(A, tol: ToleranceConfig = DEFAULT_TOL) -> PsdResult:
    """PSD test with the minimum eigenvalue as witness.

    Raises StructureError when ``A`` is not Hermitian within ``tol.eq_tol``.
    """
    A = as_matrix(A)
    _require_square(A)
    if A.shape[0] == 0:
        return PsdResult(True, 0.0)
    if hermitian_defect(A) > tol.eq_tol:
        raise StructureError(f"matrix is not Hermitian (defect {hermitian_defect(A):.3e})")
    eigs = hermitian_eigenvalues(A)
    lo = float(eigs[0])
    scale = max(1.0, float(np.max(np.abs(eigs))))
    return PsdResult(lo >= -tol.psd_tol * scale, lo)


def singular_values(A) -> np.ndarray:
    """Singular values in ascending order."""
    A = as_matrix(A)
    if A.size == 0:
        return np.zeros(0)
    return np.sort(np.linalg.svd(A, compute_uv=False))


def operator_norm(A) -> float:
    s = singular_values(A)
    return float(s[-1]) if s.size else 0.0


def trace_norm(A) -> float:
    return float(np.sum(singular_values(A)))


def hilbert_schmidt_norm(A) -> float:
    return frobenius(A)


def numerical_rank(A, tol: float = DEFAULT_TOL.rank_tol) -> int:
    s = singular_values(A)
    if s.size == 0 or s[-1] == 0:
        return 0
    return int(np.count_nonzero(s > tol * s[-1]))


def rel_distance(A, B) -> float:
    """||A - B||_F / max(1, ||A||_F, ||B||_F)."""
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch {A.shape} vs {B.shape}")
    return frobenius(A - B) / max(1.0, frobenius(A), frobenius(B))


def allclose_rel(A, B, tol: float = DEFAULT_TOL.eq_tol) -> bool:
    return rel_distance(A, B) <= tol


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR factorization of a Ginibre matrix."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases


def random_matrix(n: int, rng: np.random.Generator, m: int | None = None) -> np.ndarray:
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2 * n)
