"""Multi-indices, gradings and degree slices of truncated graded spaces.

A multi-index is a plain tuple of non-negative ints.  Within a degree slice
multi-indices are listed in descending lexicographic order, so for the
standard grading on two variables slice 2 reads ``(2, 0), (1, 1), (0, 2)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial, prod
from typing import Callable, Iterator, Optional, Sequence

from .errors import ParameterError, WindowError

MultiIndex = tuple[int, ...]


def check_multiindex(alpha: Sequence[int]) -> MultiIndex:
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ParameterError(f"multi-index entries must be >= 0, got {alpha}")
    return alpha


def total_degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def unit(i: int, d: int) -> MultiIndex:
    """The unit multi-index with a one in (0-based) position ``i``."""
    return tuple(1 if j == i else 0 for j in range(d))


def shifted(alpha: MultiIndex, i: int, step: int = 1) -> MultiIndex:
    return alpha[:i] + (alpha[i] + step,) + alpha[i + 1:]


def mfactorial(alpha: MultiIndex) -> int:
    """alpha! = alpha_1! ... alpha_d!"""
    return prod(factorial(a) for a in alpha)


@dataclass(frozen=True)
class Grading:
    """Positive integer weights; the degree of alpha is sum(g_i * alpha_i)."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.weights:
            raise ParameterError("a grading needs at least one weight")
        if any(w < 1 for w in self.weights):
            raise ParameterError(f"grading weights must be >= 1, got {self.weights}")

    @classmethod
    def standard(cls, d: int) -> "Grading":
        return cls((1,) * d)

    @property
    def d(self) -> int:
        return len(self.weights)

    @property
    def is_standard(self) -> bool:
        return all(w == 1 for w in self.weights)

    def degree(self, alpha: Sequence[int]) -> int:
        if len(alpha) != self.d:
            raise ParameterError(f"expected {self.d} entries, got {len(alpha)}")
        return sum(w * a for w, a in zip(self.weights, alpha))


def _as_grading(d: int, grading) -> Grading:
    if grading is None:
        return Grading.standard(d)
    if not isinstance(grading, Grading):
        grading = Grading(tuple(grading))
    if grading.d != d:
        raise ParameterError(f"grading has {grading.d} weights but d={d}")
    return grading


@lru_cache(maxsize=None)
def _slice(weights: tuple[int, ...], k: int) -> tuple[MultiIndex, ...]:
    if not weights:
        return ((),) if k == 0 else ()
    head, rest = weights[0], weights[1:]
    out = []
    for a in range(k // head, -1, -1):
        for tail in _slice(rest, k - head * a):
            out.append((a,) + tail)
    return tuple(out)


def enumerate_slice(d: int, grading, k: int) -> list[MultiIndex]:
    """All alpha with weighted degree exactly ``k``, in descending lex order."""
    grading = _as_grading(d, grading)
    if k < 0:
        return []
    return list(_slice(grading.weights, int(k)))


def slice_dim(d: int, grading, k: int) -> int:
    grading = _as_grading(d, grading)
    if k < 0:
        return 0
    if grading.is_standard:
        return comb(k + d - 1, d - 1)
    return len(_slice(grading.weights, int(k)))


@dataclass(frozen=True)
class GradedBasis:
    """Orthonormal basis of the degree <= N part of a graded space.

    Each multi-index carries ``fiber`` basis vectors (the space is tensored
    with C^fiber), listed multi-index-major.  An optional ``member``
    predicate restricts the labels, e.g. to n_1 > n_2 for the antisymmetric
    subspace of the bidisc; ``label`` names that restriction so equal bases
    compare equal.
    """

    d: int
    max_degree: int
    grading: Grading = None
    fiber: int = 1
    member: Optional[Callable[[MultiIndex], bool]] = field(default=None, compare=False)
    label: str = ""
    _slices: tuple = field(init=False, repr=False, compare=False)
    _lookup: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.d < 1:
            raise ParameterError("d must be >= 1")
        if self.max_degree < 0:
            raise ParameterError("max_degree must be >= 0")
        if self.fiber < 1:
            raise ParameterError("fiber must be >= 1")
        object.__setattr__(self, "grading", _as_grading(self.d, self.grading))
        slices = []
        lookup = {}
        for k in range(self.max_degree + 1):
            labels = enumerate_slice(self.d, self.grading, k)
            if self.member is not None:
                labels = [a for a in labels if self.member(a)]
            for p, alpha in enumerate(labels):
                lookup[alpha] = (k, p)
            slices.append(tuple(labels))
        object.__setattr__(self, "_slices", tuple(slices))
        object.__setattr__(self, "_lookup", lookup)

    @property
    def N(self) -> int:
        return self.max_degree

    def labels(self, k: int) -> tuple[MultiIndex, ...]:
        """Multi-indices of slice ``k`` (empty outside 0..N)."""
        if 0 <= k <= self.max_degree:
            return self._slices[k]
        return ()

    def dim(self, k: int) -> int:
        return len(self.labels(k)) * self.fiber

    def dims(self) -> list[int]:
        return [self.dim(k) for k in range(self.max_degree + 1)]

    def total_dim(self) -> int:
        return sum(self.dims())

    def degree(self, alpha: Sequence[int]) -> int:
        return self.grading.degree(alpha)

    def contains(self, alpha: Sequence[int]) -> bool:
        return tuple(alpha) in self._lookup

    def index_of(self, alpha: Sequence[int], component: int = 0) -> tuple[int, int]:
        """(slice k, position p) of the basis vector ``alpha`` (x ``component``)."""
        alpha = check_multiindex(alpha)
        try:
            k, p = self._lookup[alpha]
        except KeyError:
            if len(alpha) == self.d and self.grading.degree(alpha) > self.max_degree:
                raise WindowError(
                    f"{alpha} has degree {self.grading.degree(alpha)} > N={self.max_degree}"
                ) from None
            raise WindowError(f"{alpha} is not a basis label of this space") from None
        if not 0 <= component < self.fiber:
            raise WindowError(f"component {component} outside fiber {self.fiber}")
        return k, p * self.fiber + component

    def __iter__(self) -> Iterator[MultiIndex]:
        for labels in self._slices:
            yield from labels

    def with_max_degree(self, max_degree: int) -> "GradedBasis":
        return GradedBasis(self.d, max_degree, self.grading, self.fiber, self.member, self.label)


def count_up_to(d: int, grading, N: int) -> int:
    """Brute-force count of alpha with degree <= N (independent of slicing)."""
    grading = _as_grading(d, grading)
    bounds = [N // w for w in grading.weights]

    def rec(i, budget):
        if i == d:
            return 1
        return sum(rec(i + 1, budget - grading.weights[i] * a)
                   for a in range(min(bounds[i], budget // grading.weights[i]) + 1))

    return rec(0, N)
