"""Degree-homogeneous operators on a truncated graded basis.

A :class:`GradedOperator` with shift ``s`` stores one dense block per source
degree ``k`` (mapping slice ``k`` into slice ``k + s``) for every ``k`` in
``0..N`` with ``k + s <= N``.  The stored data is the compression
``P_N A P_N``; the set ``valid`` records the source degrees at which that
compression coincides with the untruncated operator.  Products of
compressions lose validity wherever an intermediate degree leaves the
window, and that loss is tracked, never assumed away.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .errors import GradingError, ShapeError, TruncationError, ValidationError
from .freealg import FormalSum, Letter, word_str
from .multiindex import GradedBasis


def _stored_degrees(space: GradedBasis, shift: int) -> range:
    return range(0, min(space.N, space.N - shift) + 1)


@dataclass(frozen=True, eq=False)
class GradedOperator:
    space: GradedBasis
    shift: int
    blocks: Mapping[int, np.ndarray]
    valid: frozenset

    def __post_init__(self):
        stored = _stored_degrees(self.space, self.shift)
        if set(self.blocks) != set(stored):
            raise ShapeError(f"blocks must be given exactly for source degrees {list(stored)}")
        for k, B in self.blocks.items():
            want = (self.space.dim(k + self.shift), self.space.dim(k))
            if B.shape != want:
                raise ShapeError(f"block at degree {k} has shape {B.shape}, expected {want}")
        if not set(self.valid) <= set(stored):
            raise ShapeError("valid degrees must be a subset of the stored degrees")
        object.__setattr__(self, "valid", frozenset(self.valid))

    # -- constructors
    @classmethod
    def from_blocks(cls, space: GradedBasis, shift: int, blocks: Mapping[int, np.ndarray], valid=None):
        blocks = {k: np.asarray(B, dtype=complex) for k, B in blocks.items()}
        if valid is None:
            valid = blocks.keys()
        return cls(space, shift, blocks, frozenset(valid))

    @classmethod
    def zero(cls, space: GradedBasis, shift: int = 0) -> "GradedOperator":
        blocks = {k: np.zeros((space.dim(k + shift), space.dim(k)), dtype=complex)
                  for k in _stored_degrees(space, shift)}
        return cls(space, shift, blocks, frozenset(blocks))

    @classmethod
    def identity(cls, space: GradedBasis) -> "GradedOperator":
        blocks = {k: np.eye(space.dim(k), dtype=complex) for k in range(space.N + 1)}
        return cls(space, 0, blocks, frozenset(blocks))

    @classmethod
    def diagonal(cls, space: GradedBasis, values) -> "GradedOperator":
        """Shift-0 operator e_alpha -> values(alpha) e_alpha (fiber-replicated)."""
        blocks = {}
        for k in range(space.N + 1):
            diag = [values(a) for a in space.labels(k) for _ in range(space.fiber)]
            blocks[k] = np.diag(np.asarray(diag, dtype=complex)).reshape(space.dim(k), space.dim(k))
        return cls(space, 0, blocks, frozenset(blocks))

    # -- inspection
    @property
    def N(self) -> int:
        return self.space.N

    @property
    def valid_range(self) -> tuple[int, int] | None:
        """(lo, hi) hull of the valid degrees, or None when nothing is valid."""
        if not self.valid:
            return None
        return min(self.valid), max(self.valid)

    def block(self, k: int) -> np.ndarray:
        if k not in self.blocks:
            return np.zeros((self.space.dim(k + self.shift), self.space.dim(k)), dtype=complex)
        return self.blocks[k]

    def valid_block(self, k: int) -> np.ndarray:
        """The block at source degree ``k``; refuses out-of-window data."""
        if k not in self.valid:
            raise TruncationError(
                f"degree {k} is outside the exactness window {sorted(self.valid)[:1]}..; "
                f"enlarge N (currently {self.N})"
            )
        return self.blocks[k]

    def require_valid(self, degrees) -> None:
        missing = [k for k in degrees if k not in self.valid]
        if missing:
            raise TruncationError(f"degrees {missing} are not exact at window N={self.N}")

    # -- algebra
    def adjoint(self) -> "GradedOperator":
        s = self.shift
        blocks = {}
        valid = set()
        for j in _stored_degrees(self.space, -s):
            src = j - s  # the block of self mapping src -> j
            if src < 0:
                blocks[j] = np.zeros((0, self.space.dim(j)), dtype=complex)
                valid.add(j)
            else:
                blocks[j] = self.blocks[src].conj().T
                if src in self.valid:
                    valid.add(j)
        return GradedOperator(self.space, -s, blocks, frozenset(valid))

    @property
    def H(self) -> "GradedOperator":
        return self.adjoint()

    def compose(self, other: "GradedOperator") -> "GradedOperator":
        """self @ other, as the product of the two compressions."""
        if self.space != other.space:
            raise ShapeError("operators act on different spaces")
        s = self.shift + other.shift
        blocks = {}
        valid = set()
        for k in _stored_degrees(self.space, s):
            mid = k + other.shift
            out_dim = self.space.dim(k + s)
            if mid < 0:
                blocks[k] = np.zeros((out_dim, self.space.dim(k)), dtype=complex)
                if k in other.valid:
                    valid.add(k)
            elif mid > self.space.N:
                # other's block was cut by P_N, so the product is not exact here
                blocks[k] = np.zeros((out_dim, self.space.dim(k)), dtype=complex)
            else:
                blocks[k] = self.blocks[mid] @ other.blocks[k]
                if k in other.valid and mid in self.valid:
                    valid.add(k)
        if not valid and (self.valid and other.valid):
            raise TruncationError(
                f"window N={self.N} exhausted: product of shifts {self.shift}, {other.shift} has no exact degree"
            )
        return GradedOperator(self.space, s, blocks, frozenset(valid))

    def __matmul__(self, other):
        if isinstance(other, GradedOperator):
            return self.compose(other)
        return NotImplemented

    def _check_same(self, other: "GradedOperator"):
        if self.space != other.space:
            raise ShapeError("operators act on different spaces")
        if self.shift != other.shift:
            raise ShapeError(f"cannot add operators of shift {self.shift} and {other.shift}")

    def add(self, other: "GradedOperator") -> "GradedOperator":
        self._check_same(other)
        blocks = {k: self.blocks[k] + other.blocks[k] for k in self.blocks}
        return GradedOperator(self.space, self.shift, blocks, self.valid & other.valid)

    def __add__(self, other):
        if isinstance(other, GradedOperator):
            return self.add(other)
        return NotImplemented

    def scale(self, c) -> "GradedOperator":
        return GradedOperator(self.space, self.shift,
                              {k: c * B for k, B in self.blocks.items()}, self.valid)

    def __mul__(self, c):
        if np.isscalar(c):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, GradedOperator):
            return self.add(-other)
        return NotImplemented

    def restrict_valid(self, degrees) -> "GradedOperator":
        """Same blocks with validity intersected with ``degrees``."""
        return GradedOperator(self.space, self.shift, self.blocks, self.valid & frozenset(degrees))

    # -- comparisons and norms over the valid degrees
    def max_block_norm(self, degrees=None) -> float:
        degrees = sorted(self.valid) if degrees is None else degrees
        return max((linalg.operator_norm(self.valid_block(k)) for k in degrees), default=0.0)

    def frobenius(self, degrees=None) -> float:
        degrees = sorted(self.valid) if degrees is None else degrees
        return float(np.sqrt(sum(linalg.frobenius(self.valid_block(k)) ** 2 for k in degrees)))

    def distance(self, other: "GradedOperator", degrees=None) -> float:
        """Relative Frobenius distance over shared valid degrees."""
        self._check_same(other)
        degrees = sorted(self.valid & other.valid) if degrees is None else degrees
        num = np.sqrt(sum(linalg.frobenius(self.valid_block(k) - other.valid_block(k)) ** 2
                          for k in degrees))
        return float(num) / max(1.0, self.frobenius(degrees), other.frobenius(degrees))

    def allclose(self, other: "GradedOperator", tol: float = linalg.DEFAULT_TOL.eq_tol, degrees=None) -> bool:
        return self.distance(other, degrees) <= tol

    def is_zero(self, tol: float = linalg.DEFAULT_TOL.eq_tol, degrees=None, scale: float = 1.0) -> bool:
        return self.frobenius(degrees) <= tol * max(1.0, scale)


def identity(space: GradedBasis) -> GradedOperator:
    return GradedOperator.identity(space)


def adjoint(A: GradedOperator) -> GradedOperator:
    return A.adjoint()


def compose(A: GradedOperator, B: GradedOperator) -> GradedOperator:
    return A.compose(B)


def add(A: GradedOperator, B: GradedOperator) -> GradedOperator:
    return A.add(B)


def commutator(A: GradedOperator, B: GradedOperator) -> GradedOperator:
    return A.compose(B) - B.compose(A)


def projection_cutoff(op: GradedOperator, n_cut: int, source: str | None = None,
                      target: str | None = None) -> GradedOperator:
    """Multiply by degree cutoffs: ``target`` on the left, ``source`` on the right.

    Each side is ``"low"`` (P_{n_cut}: degrees <= n_cut), ``"high"``
    (P_{n_cut}^perp: degrees > n_cut) or None (identity).  Blocks removed by
    a cutoff are exactly zero, so they become valid even if the input block
    was not.
    """
    if n_cut > op.N:
        raise TruncationError(f"cutoff {n_cut} exceeds window N={op.N}")

    def keep(side, deg):
        if side is None:
            return True
        if side == "low":
            return deg <= n_cut
        if side == "high":
            return deg > n_cut
        raise ValueError(f"unknown cutoff side {side!r}")

    blocks = {}
    valid = set(op.valid)
    for k, B in op.blocks.items():
        if keep(source, k) and keep(target, k + op.shift):
            blocks[k] = B
        else:
            blocks[k] = np.zeros_like(B)
            valid.add(k)
    return GradedOperator(op.space, op.shift, blocks, frozenset(valid))


@dataclass(frozen=True)
class FiniteTuple:
    """A d-tuple of n x n complex matrices."""

    matrices: tuple

    def __post_init__(self):
        mats = tuple(linalg.as_matrix(M) for M in self.matrices)
        if not mats:
            raise ShapeError("a tuple needs at least one matrix")
        shape = mats[0].shape
        if shape[0] != shape[1] or any(M.shape != shape for M in mats):
            raise ShapeError(f"matrices must share one square shape, got {[M.shape for M in mats]}")
        object.__setattr__(self, "matrices", mats)

    @property
    def d(self) -> int:
        return len(self.matrices)

    @property
    def n(self) -> int:
        return self.matrices[0].shape[0]

    def __getitem__(self, i):
        return self.matrices[i]

    def __iter__(self):
        return iter(self.matrices)

    def __len__(self):
        return len(self.matrices)

    def conjugate_by(self, U) -> "FiniteTuple":
        U = linalg.as_matrix(U)
        return FiniteTuple(tuple(U @ M @ U.conj().T for M in self.matrices))


def letter_assignment(ops: Sequence) -> dict[Letter, object]:
    """Map T_i -> ops[i-1] and T_i* -> its adjoint, for graded or plain matrices."""
    out = {}
    for i, op in enumerate(ops, start=1):
        out[Letter(i, False)] = op
        out[Letter(i, True)] = op.adjoint() if isinstance(op, GradedOperator) else linalg.adjoint(op)
    return out


def _word_shift(word, assignment) -> int:
    return sum(assignment[letter].shift for letter in word)


def _check_letters(expr: FormalSum, assignment):
    for word, _ in expr:
        for letter in word:
            if letter not in assignment:
                raise ValidationError(f"letter {letter} has no assigned operator")


def evaluate(expr: FormalSum, assignment, right_fold: bool = True, space: GradedBasis | None = None) -> GradedOperator:
    """Apply the evaluation homomorphism word -> operator product.

    ``assignment`` maps Letters to GradedOperators (or is a sequence of the
    generators T_1..T_d).  Words must share one total shift.  Suffix
    products are memoized (right fold); ``right_fold=False`` uses left-fold
    prefix products instead, which is useful as a cross-check.
    """
    if not isinstance(assignment, Mapping):
        assignment = letter_assignment(assignment)
    _check_letters(expr, assignment)
    if space is None:
        space = next(iter(assignment.values())).space
    words = list(expr)
    if not words:
        return GradedOperator.zero(space, 0)
    shifts = {}
    for word, _ in words:
        shifts.setdefault(_word_shift(word, assignment), word)
    if len(shifts) > 1:
        (s1, w1), (s2, w2) = list(shifts.items())[:2]
        raise GradingError(
            f"inhomogeneous expression: '{word_str(w1)}' has shift {s1} but '{word_str(w2)}' has shift {s2}"
        )
    cache: dict = {}

    def product(word):
        if word in cache:
            return cache[word]
        if not word:
            out = GradedOperator.identity(space)
        elif len(word) == 1:
            out = assignment[word[0]]
        elif right_fold:
            out = assignment[word[0]].compose(product(word[1:]))
        else:
            out = product(word[:-1]).compose(assignment[word[-1]])
        cache[word] = out
        return out

    total = None
    for word, coeff in words:
        term = product(word).scale(coeff)
        total = term if total is None else total + term
    return total


def evaluate_finite(expr: FormalSum, tup) -> np.ndarray:
    """Evaluate on plain matrices: ``tup`` is a FiniteTuple, a sequence or a Letter map."""
    if isinstance(tup, Mapping):
        assignment = tup
    else:
        assignment = letter_assignment(list(tup))
    _check_letters(expr, assignment)
    n = next(iter(assignment.values())).shape[0]
    cache: dict = {(): np.eye(n, dtype=complex)}

    def product(word):
        if word not in cache:
            cache[word] = assignment[word[0]] @ product(word[1:])
        return cache[word]

    total = np.zeros((n, n), dtype=complex)
    for word, coeff in expr:
        total = total + coeff * product(word)
    return total


def assemble(op: GradedOperator, degrees=None) -> np.ndarray:
    """Dense matrix of a shift-0 operator restricted to ``degrees`` (all valid)."""
    if op.shift != 0:
        raise ShapeError("only shift-0 operators assemble into a square block diagonal")
    degrees = sorted(op.valid) if degrees is None else list(degrees)
    mats = [op.valid_block(k) for k in degrees]
    n = sum(M.shape[0] for M in mats)
    out = np.zeros((n, n), dtype=complex)
    i = 0
    for M in mats:
        m = M.shape[0]
        out[i:i + m, i:i + m] = M
        i += m
    return out
