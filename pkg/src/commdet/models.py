"""Catalog of concrete commuting tuples.

Graded models build :class:`GradedOperator` tuples on demand for any
window ``N``; finite models are plain :class:`FiniteTuple` instances.
Analytic facts (spectra, volumes, known traces) are stored as data with a
provenance string and are never recomputed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from . import linalg
from .errors import ParameterError, ValidationError
from .gradedop import FiniteTuple, GradedOperator
from .multiindex import GradedBasis, Grading, MultiIndex, shifted, total_degree


@dataclass(frozen=True)
class ModelFacts:
    spectrum: str = ""
    volume: Optional[float] = None        # Lebesgue measure of the closed spectrum
    expected_trace: Optional[float] = None
    theta: Optional[int] = None           # BS-class constant, where known
    provenance: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "spectrum": self.spectrum,
            "volume": self.volume,
            "expected_trace": self.expected_trace,
            "theta": self.theta,
            "provenance": dict(self.provenance),
        }


class GradedModel:
    """A commuting tuple of degree-homogeneous operators on a graded space."""

    name: str = "graded"

    def __init__(self, d: int, N: int, shifts: Sequence[int], norms: Sequence[float],
                 multiplicity: int = 1, facts: ModelFacts | None = None, params: dict | None = None):
        if N < 0:
            raise ParameterError("window N must be >= 0")
        self.d = d
        self.N = N
        self.shifts = tuple(shifts)
        self.norms = tuple(float(x) for x in norms)
        self.multiplicity = multiplicity
        self.facts = facts or ModelFacts()
        self.params = dict(params or {})
        self._cache: dict = {}

    # subclasses provide space() and _build()
    def space(self, window: int | None = None) -> GradedBasis:
        raise NotImplementedError

    def _build(self, window: int) -> tuple[GradedOperator, ...]:
        raise NotImplementedError

    def operators(self, window: int | None = None) -> tuple[GradedOperator, ...]:
        window = self.N if window is None else window
        if window not in self._cache:
            self._cache[window] = self._build(window)
        return self._cache[window]

    @property
    def has_closed_form(self) -> bool:
        return False

    def det_eigenvalue(self, alpha: MultiIndex) -> float:
        from .errors import CapabilityError
        raise CapabilityError(f"model {self.name!r} has no closed-form dEt eigenvalues")

    def telescoped_partial_sum(self, N: int) -> Optional[float]:
        return None

    def descriptor(self) -> dict:
        return {"family": self.name, "d": self.d, "N": self.N, **self.params}

    def __repr__(self):
        extra = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"<{self.name} d={self.d} N={self.N}{', ' + extra if extra else ''}>"


class ShiftModel(GradedModel):
    """Joint weighted shift T_i e_alpha = w_i(alpha) e_{alpha + eps_i}."""

    def __init__(self, name: str, d: int, N: int, weight: Callable[[int, MultiIndex], float],
                 grading: Grading | Sequence[int] | None = None, norms: Sequence[float] | None = None,
                 eigenvalue: Callable[[MultiIndex], float] | None = None,
                 telescoped: Callable[[int], float] | None = None,
                 facts: ModelFacts | None = None, params: dict | None = None):
        grading = Grading.standard(d) if grading is None else (
            grading if isinstance(grading, Grading) else Grading(tuple(grading)))
        if grading.d != d:
            raise ParameterError("grading length must equal d")
        norms = (1.0,) * d if norms is None else norms
        super().__init__(d, N, grading.weights, norms, 1, facts, params)
        self.name = name
        self.grading = grading
        self.weight = weight
        self._eigenvalue = eigenvalue
        self._telescoped = telescoped

    def space(self, window: int | None = None, grading: Grading | None = None) -> GradedBasis:
        window = self.N if window is None else window
        return GradedBasis(self.d, window, grading or self.grading)

    def _build(self, window: int, grading: Grading | None = None):
        space = self.space(window, grading)
        g = space.grading.weights
        ops = []
        for i in range(self.d):
            blocks = {}
            for k in range(0, window - g[i] + 1):
                B = np.zeros((space.dim(k + g[i]), space.dim(k)), dtype=complex)
                for p, alpha in enumerate(space.labels(k)):
                    _, q = space.index_of(shifted(alpha, i))
                    B[q, p] = self.weight(i, alpha)
                blocks[k] = B
            ops.append(GradedOperator.from_blocks(space, g[i], blocks))
        return tuple(ops)

    def operators(self, window: int | None = None, grading: Grading | None = None):
        window = self.N if window is None else window
        grading = grading or self.grading
        key = (window, grading.weights)
        if key not in self._cache:
            self._cache[key] = self._build(window, grading)
        return self._cache[key]

    @property
    def has_closed_form(self) -> bool:
        return self._eigenvalue is not None

    def det_eigenvalue(self, alpha: MultiIndex) -> float:
        if self._eigenvalue is None:
            return super().det_eigenvalue(alpha)
        return self._eigenvalue(tuple(alpha))

    def telescoped_partial_sum(self, N: int) -> Optional[float]:
        return None if self._telescoped is None else self._telescoped(N)

    def cocycle_defect(self, window: int | None = None) -> float:
        """max |w_i(a) w_j(a+e_i) - w_j(a) w_i(a+e_j)| over the window."""
        space = self.space(window)
        worst = 0.0
        for alpha in space:
            for i in range(self.d):
                for j in range(i + 1, self.d):
                    lhs = self.weight(i, alpha) * self.weight(j, shifted(alpha, i))
                    rhs = self.weight(j, alpha) * self.weight(i, shifted(alpha, j))
                    worst = max(worst, abs(lhs - rhs))
        return worst

    def max_weights(self, window: int | None = None) -> list[float]:
        space = self.space(window)
        return [max((abs(self.weight(i, a)) for a in space), default=0.0) for i in range(self.d)]


# ---------------------------------------------------------------- shift models

def _hardy_weight(d):
    def w(i, alpha):
        return math.sqrt((alpha[i] + 1) / (total_degree(alpha) + d))
    return w


def hardy_ball_eigenvalue(d: int, k: int, delta_k: float = 1.0, delta_km1: float = 1.0) -> float:
    """(d-1)! (delta_k^{2d}/(k+d)^{d-1} - k delta_{k-1}^{2d}/(k+d-1)^d), plain powers."""
    f = math.factorial(d - 1)
    first = delta_k ** (2 * d) / (k + d) ** (d - 1)
    second = k * delta_km1 ** (2 * d) / (k + d - 1) ** d if k > 0 else 0.0
    return f * (first - second)


def _rising_ratio(d: int, N: int) -> float:
    """(N+d-1)(N+d-2)...(N+1) / (N+d)^(d-1)."""
    num = 1.0
    for j in range(1, d):
        num *= N + j
    return num / (N + d) ** (d - 1)


BALL_FACTS = {
    "spectrum": "closed unit ball",
    "provenance": {
        "spectrum": "cited analytic fact (not computed)",
        "volume": "Lebesgue measure pi^d/d! of the unit ball",
        "expected_trace": "trace of dEt equals 1 for the Hardy ball",
        "theta": "Hardy ball tuple lies in BS_{1,1}",
    },
}


def hardy_ball(d: int, N: int) -> ShiftModel:
    if d < 1 or N < 0:
        raise ParameterError("hardy_ball needs d >= 1 and N >= 0")
    facts = ModelFacts(volume=math.pi ** d / math.factorial(d), expected_trace=1.0, theta=1, **BALL_FACTS)
    return ShiftModel(
        "hardy_ball", d, N, _hardy_weight(d), norms=(1.0,) * d,
        eigenvalue=lambda a: hardy_ball_eigenvalue(d, total_degree(a)),
        telescoped=lambda n: _rising_ratio(d, n),
        facts=facts,
    )


def bergman_ball(d: int, lam: float, N: int) -> ShiftModel:
    """Weighted Bergman tuple with kernel (1 - <z,w>)^(-lam); lam = d is the Hardy ball."""
    if not lam > 0:
        raise ParameterError(f"bergman_ball needs lambda > 0, got {lam}")

    def w(i, alpha):
        return math.sqrt((alpha[i] + 1) / (lam + total_degree(alpha)))

    norm = 1.0 if lam >= 1 else 1.0 / math.sqrt(lam)
    is_hardy = lam == d
    facts = ModelFacts(
        spectrum="closed unit ball", volume=math.pi ** d / math.factorial(d),
        expected_trace=1.0 if is_hardy else None, theta=1 if is_hardy else None,
        provenance={"hyponormality": "hyponormal iff lambda >= d (cited)"},
    )
    return ShiftModel(
        "bergman_ball", d, N, w, norms=(norm,) * d,
        eigenvalue=(lambda a: hardy_ball_eigenvalue(d, total_degree(a))) if is_hardy else None,
        telescoped=(lambda n: _rising_ratio(d, n)) if is_hardy else None,
        facts=facts, params={"lambda": lam},
    )


def parse_delta(spec) -> Callable[[int], float]:
    """delta_k from ``"one"``, ``"ratio(k+1,k+2)"``, a callable, or an explicit list."""
    if callable(spec):
        return spec
    if isinstance(spec, str):
        text = spec.replace(" ", "")
        if text == "one":
            return lambda k: 1.0
        if text == "ratio(k+1,k+2)":
            return lambda k: (k + 1) / (k + 2)
        raise ParameterError(f"unknown delta spec {spec!r}")
    values = [float(x) for x in spec]

    def delta(k):
        if k >= len(values):
            raise ParameterError(f"explicit delta list has {len(values)} entries; degree {k} requested")
        return values[k]

    return delta


def spherical_shift(d: int, delta, N: int) -> ShiftModel:
    """w_i(alpha) = delta_{|alpha|} * sqrt((alpha_i+1)/(|alpha|+d))."""
    delta_fn = parse_delta(delta)
    if not callable(delta) and not isinstance(delta, str):
        if any(float(x) < 0 for x in delta):
            raise ParameterError("delta entries must be >= 0")
    else:
        for k in range(N + 3):
            try:
                if delta_fn(k) < 0:
                    raise ParameterError(f"delta_{k} < 0")
            except ParameterError as exc:
                if "entries" in str(exc):
                    break
                raise

    def w(i, alpha):
        k = total_degree(alpha)
        return delta_fn(k) * math.sqrt((alpha[i] + 1) / (k + d))

    def eig(alpha):
        k = total_degree(alpha)
        return hardy_ball_eigenvalue(d, k, delta_fn(k), delta_fn(k - 1) if k > 0 else 0.0)

    def tele(n):
        return delta_fn(n) ** (2 * d) * _rising_ratio(d, n)

    # sup_k delta_k * sqrt((k+1)/(k+d)); families below are bounded by their limit
    if isinstance(delta, str):
        norm = 1.0
    else:
        ks = range(N + 1)
        try:
            norm = max(delta_fn(k) * math.sqrt((k + 1) / (k + d)) for k in ks)
        except ParameterError:
            norm = max(float(x) for x in delta)
    spec = delta if isinstance(delta, str) else "explicit"
    facts = ModelFacts(
        spectrum="closed ball B[r]", expected_trace=1.0 if spec in ("one", "ratio(k+1,k+2)") else None,
        theta=1, provenance={"expected_trace": "delta_n increasing to 1 gives trace 1"},
    )
    return ShiftModel("spherical", d, N, w, norms=(norm,) * d, eigenvalue=eig, telescoped=tele,
                      facts=facts, params={"delta_spec": spec})


def hardy_polydisc(d: int, N: int) -> ShiftModel:
    facts = ModelFacts(
        spectrum="closed unit polydisc", volume=math.pi ** d, expected_trace=float(math.factorial(d)),
        theta=1,
        provenance={"expected_trace": "trace dEt = d! (equality in the tensor-model bound)",
                    "theta": "tensor-model bound d!; the tuple itself is not in any BS class"},
    )
    fact = float(math.factorial(d))
    return ShiftModel(
        "polydisc", d, N, lambda i, a: 1.0, norms=(1.0,) * d,
        eigenvalue=lambda a: fact if not any(a) else 0.0,
        telescoped=lambda n: fact,
        facts=facts,
    )


def unilateral_shift(N: int) -> ShiftModel:
    m = hardy_polydisc(1, N)
    m.name = "shift"
    return m


def ellipsoid_eigenvalue(alpha: MultiIndex, lam) -> float:
    """chi_alpha for the ellipsoid |z1|^2 + |z2| < 1 (exact rational when lam is)."""
    return float(ellipsoid_eigenvalue_exact(alpha, lam))


def ellipsoid_eigenvalue_exact(alpha: MultiIndex, lam):
    a1, a2 = (Fraction(a) for a in alpha)
    l = Fraction(lam) if not isinstance(lam, float) else Fraction(lam).limit_denominator(10 ** 12)
    s = a1 + 2 * a2 + l
    out = Fraction(0)
    if a2 > 0:
        out -= 2 * a2 * (2 * a2 + 1) * (2 * a1 + 2 * a2 + l - 1) / ((s - 2) ** 2 * (s - 1) ** 2)
    out += (2 * a2 + 2) * (2 * a2 + 3) * (2 * a1 + 2 * a2 + l + 1) / (s ** 2 * (s + 1) ** 2)
    out += 2 * (a1 + 1) * ((2 * a2 + 1) * (a1 + l - 1) + 2 * (a2 + 1) * (s - 1)) / ((s - 1) * s ** 2 * (s + 1))
    if a1 > 0:
        out -= 2 * a1 * ((2 * a2 + 1) * (a1 + l - 2) + 2 * (a2 + 1) * (s - 2)) / ((s - 2) * (s - 1) ** 2 * s)
    return out


def ellipsoid_bergman(lam: float, N: int) -> ShiftModel:
    """Multiplication by z1, z2 on the weighted Bergman space of |z1|^2 + |z2| < 1.

    Graded by alpha_1 + 2 alpha_2 so both generators are homogeneous.
    """
    if not lam > 3:
        raise ParameterError(f"ellipsoid space is zero unless lambda > 3, got {lam}")

    def w(i, alpha):
        a1, a2 = alpha
        s = a1 + 2 * a2 + lam
        if i == 0:
            return math.sqrt((a1 + 1) / s)
        return math.sqrt((2 * a2 + 2) * (2 * a2 + 3) / (s * (s + 1)))

    facts = ModelFacts(
        spectrum="closed ellipsoid |z1|^2+|z2|<=1", volume=math.pi ** 2 / 3, theta=2,
        provenance={"volume": "pi^2/3 by direct integration",
                    "expected_trace": "reported only as approximately 2/3 (numerical observation)",
                    "theta": "BS_{1,2} for lambda >= 4"},
    )
    return ShiftModel("ellipsoid", 2, N, w, grading=(1, 2), norms=(1.0, 1.0),
                      eigenvalue=lambda a: ellipsoid_eigenvalue(a, lam), facts=facts,
                      params={"lambda": lam})


def weighted_shift(name: str, d: int, N: int, weight, grading=None, norms=None) -> ShiftModel:
    """Generic joint weighted shift from a weight function w(i, alpha) (0-based i)."""
    return ShiftModel(name, d, N, weight, grading=grading, norms=norms)


def tensor_hash(A: ShiftModel, B: ShiftModel, N: int | None = None) -> ShiftModel:
    """(T^(1) (x) I, I (x) T^(2)) on the tensor basis, graded by the sum of degrees."""
    if not isinstance(A, ShiftModel) or not isinstance(B, ShiftModel):
        raise ParameterError("tensor_hash is implemented for weighted-shift models")
    d1, d2 = A.d, B.d
    N = max(A.N, B.N) if N is None else N

    def w(i, alpha):
        if i < d1:
            return A.weight(i, alpha[:d1])
        return B.weight(i - d1, alpha[d1:])

    grading = Grading(A.grading.weights + B.grading.weights)
    # the grid is block diagonal; every interleaving of the two index sets
    # contributes, giving the factor binom(d1 + d2, d1)
    factor = float(math.comb(d1 + d2, d1))

    def closed(alpha):
        return factor * A.det_eigenvalue(alpha[:d1]) * B.det_eigenvalue(alpha[d1:])

    eig = closed if A.has_closed_form and B.has_closed_form else None
    vol = A.facts.volume * B.facts.volume if A.facts.volume and B.facts.volume else None
    facts = ModelFacts(spectrum=f"({A.facts.spectrum}) x ({B.facts.spectrum})", volume=vol)
    model = ShiftModel(f"{A.name}#{B.name}", d1 + d2, N, w, grading=grading,
                       norms=A.norms + B.norms, eigenvalue=eig, facts=facts,
                       params={"left": A.descriptor(), "right": B.descriptor()})
    model.components = (A, B)
    return model


def permutation_unitary(space: GradedBasis, perm: Sequence[int]) -> dict[int, np.ndarray]:
    """Per-degree blocks of Gamma_pi: e_alpha -> e_{alpha o pi^-1} (coordinate permutation).

    The multi-index beta with beta[perm[i]] = alpha[i].  Requires a grading
    invariant under the permutation.
    """
    blocks = {}
    for k in range(space.N + 1):
        n = space.dim(k)
        U = np.zeros((n, n), dtype=complex)
        for p, alpha in enumerate(space.labels(k)):
            beta = [0] * len(alpha)
            for i, a in enumerate(alpha):
                beta[perm[i]] = a
            _, q = space.index_of(tuple(beta))
            U[q, p] = 1.0
        blocks[k] = U
    return blocks


# ---------------------------------------------------------------- symmetrized bidisc

class SymmetrizedBidisc(GradedModel):
    """T1 = M(x)I + I(x)M, T2 = M(x)M on H^2(D^2), optionally on antisymmetric functions."""

    name = "symmetrized_bidisc"

    def __init__(self, N: int, restricted: bool = False):
        if N < 2:
            raise ParameterError("symmetrized_bidisc needs N >= 2")
        facts = ModelFacts(
            spectrum="closed symmetrized bidisc",
            expected_trace=1.0 if restricted else None,
            provenance={
                "hyponormality": "grid = X X* + diag(0, P(x)P) >= 0 (recorded, not recomputed)",
                "expected_trace": "<dEt e_n, e_n> = 1 iff n = (1,0) on antisymmetric functions",
            },
        )
        super().__init__(2, N, (1, 2), (2.0, 1.0), 1, facts, {"restricted": restricted})
        self.restricted = restricted

    def full_space(self, window: int | None = None) -> GradedBasis:
        return GradedBasis(2, self.N if window is None else window)

    def space(self, window: int | None = None) -> GradedBasis:
        window = self.N if window is None else window
        if not self.restricted:
            return self.full_space(window)
        return GradedBasis(2, window, member=lambda n: n[0] > n[1], label="antisymmetric")

    def isometry(self, window: int) -> dict[int, np.ndarray]:
        """Per-degree columns e_n = (z^(n1,n2) - z^(n2,n1))/sqrt(2) in the full basis."""
        full, anti = self.full_space(window), self.space(window)
        V = {}
        for k in range(window + 1):
            M = np.zeros((full.dim(k), anti.dim(k)), dtype=complex)
            for p, (n1, n2) in enumerate(anti.labels(k)):
                M[full.index_of((n1, n2))[1], p] = 1 / math.sqrt(2)
                M[full.index_of((n2, n1))[1], p] = -1 / math.sqrt(2)
            V[k] = M
        return V

    def _build(self, window: int):
        one = hardy_polydisc(2, window).operators(window)
        T1 = one[0] + one[1]
        T2 = one[0] @ one[1]
        if not self.restricted:
            return (T1, T2)
        V = self.isometry(window)
        space = self.space(window)
        out = []
        for op in (T1, T2):
            blocks = {k: V[k + op.shift].conj().T @ B @ V[k] for k, B in op.blocks.items()}
            out.append(GradedOperator(space, op.shift, blocks, op.valid))
        return tuple(out)


def symmetrized_bidisc(N: int, restricted: bool = False) -> SymmetrizedBidisc:
    return SymmetrizedBidisc(N, restricted)


# ---------------------------------------------------------------- simple tensor model

class SimpleTensor(GradedModel):
    """(A_1 (x) S, ..., A_d (x) S) with S the unilateral shift, graded by the shift degree."""

    name = "simpletensor"

    def __init__(self, factors: Sequence, N: int, tol: linalg.ToleranceConfig = linalg.DEFAULT_TOL):
        mats = [linalg.as_matrix(A) for A in factors]
        n = mats[0].shape[0]
        scale = max(1.0, max(linalg.operator_norm(A) for A in mats))
        for a, A in enumerate(mats):
            if A.shape != (n, n):
                raise ValidationError("factors must share one square shape")
            if linalg.frobenius(A @ A.conj().T - A.conj().T @ A) > tol.eq_tol * scale ** 2 * n:
                raise ValidationError(f"factor {a + 1} is not normal")
            for b in range(a):
                if linalg.frobenius(A @ mats[b] - mats[b] @ A) > tol.eq_tol * scale ** 2 * n:
                    raise ValidationError(f"factors {b + 1} and {a + 1} do not commute")
        norms = [linalg.operator_norm(A) for A in mats]
        facts = ModelFacts(spectrum="joint spectrum of A times closed disc", volume=math.pi,
                           provenance={"volume": "nu(closed unit disc) = pi for the shift factor"})
        super().__init__(len(mats), N, (1,) * len(mats), norms, 1, facts, {"n": n})
        self.factors = tuple(mats)

    def space(self, window: int | None = None) -> GradedBasis:
        return GradedBasis(1, self.N if window is None else window, fiber=self.factors[0].shape[0])

    def _build(self, window: int):
        space = self.space(window)
        ops = []
        for A in self.factors:
            blocks = {k: A.copy() for k in range(window)}
            ops.append(GradedOperator.from_blocks(space, 1, blocks))
        return tuple(ops)


def simpletensor(factors: Sequence, N: int) -> SimpleTensor:
    return SimpleTensor(factors, N)


# ---------------------------------------------------------------- finite tuples

def dnormal_jordan(eigs1: Sequence[complex], eigs2: Sequence[complex], lam1: complex, lam2: complex) -> FiniteTuple:
    """T_i = [[N_i, lam_i I], [0, N_i]] with N_i = diag(eigs_i)."""
    if len(eigs1) != len(eigs2) or not len(eigs1):
        raise ParameterError("eigenvalue lists must be non-empty and of equal length")
    n = len(eigs1)
    out = []
    for eigs, lam in ((eigs1, lam1), (eigs2, lam2)):
        Ni = np.diag(np.asarray(eigs, dtype=complex))
        out.append(np.block([[Ni, lam * np.eye(n)], [np.zeros((n, n)), Ni]]))
    return FiniteTuple(tuple(out))


def _random_poly_of(X: np.ndarray, rng: np.random.Generator, degree: int = 3) -> np.ndarray:
    coeffs = (rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)) / 2
    out = np.zeros_like(X)
    power = np.eye(X.shape[0], dtype=complex)
    for c in coeffs:
        out = out + c * power
        power = power @ X
    return out


def random_commuting_tuple(n: int, d: int, seed: int) -> FiniteTuple:
    """p_1(X), ..., p_d(X) for a seeded random X and random cubic polynomials p_i."""
    if n < 2:
        raise ParameterError("random_commuting_tuple needs n >= 2")
    rng = np.random.default_rng(seed)
    X = linalg.random_matrix(n, rng)
    X = X / max(1.0, linalg.operator_norm(X))
    return FiniteTuple(tuple(_random_poly_of(X, rng) for _ in range(d)))


def random_commuting_normals(n: int, d: int, seed: int) -> tuple[np.ndarray, ...]:
    """d commuting normal matrices U diag(D_i) U* sharing one random unitary."""
    rng = np.random.default_rng(seed)
    U = linalg.random_unitary(n, rng)
    out = []
    for _ in range(d):
        D = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2)
        out.append(U @ np.diag(D) @ U.conj().T)
    return tuple(out)


def random_dnormal_tuple(n: int, d: int, seed: int) -> FiniteTuple:
    """A commuting d-normal d-tuple: polynomials in a d x d block matrix with diagonal blocks.

    Each block is an n x n diagonal matrix, so the blocks are commuting
    normals; the result is conjugated by a random unitary.
    """
    rng = np.random.default_rng(seed)
    X = np.zeros((d * n, d * n), dtype=complex)
    for a in range(d):
        for b in range(d):
            diag = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2 * d)
            X[a * n:(a + 1) * n, b * n:(b + 1) * n] = np.diag(diag)
    X = X / max(1.0, linalg.operator_norm(X))
    mats = [_random_poly_of(X, rng) for _ in range(d)]
    mats = [M / max(1.0, linalg.operator_norm(M)) for M in mats]
    U = linalg.random_unitary(d * n, rng)
    return FiniteTuple(tuple(mats)).conjugate_by(U)


# ---------------------------------------------------------------- catalog

CATALOG = {
    "hardy_ball": {"params": {"d": "int >= 1", "N": "int >= 0"}, "kind": "graded"},
    "bergman_ball": {"params": {"d": "int >= 1", "lambda": "float > 0", "N": "int >= 0"}, "kind": "graded"},
    "spherical": {"params": {"d": "int >= 1", "delta_spec": "one | ratio(k+1,k+2) | comma list", "N": "int >= 0"},
                  "kind": "graded"},
    "polydisc": {"params": {"d": "int >= 1", "N": "int >= 0"}, "kind": "graded"},
    "symmetrized_bidisc": {"params": {"N": "int >= 2", "restricted": "bool"}, "kind": "graded"},
    "ellipsoid": {"params": {"lambda": "float > 3", "N": "int >= 0"}, "kind": "graded"},
    "dnormal_jordan": {"params": {"n": "int >= 1", "lambda1": "complex", "lambda2": "complex", "seed": "int"},
                       "kind": "finite"},
    "random_commuting": {"params": {"n": "int >= 2", "d": "int >= 1", "seed": "int"}, "kind": "finite"},
    "simpletensor": {"params": {"n": "int >= 1", "d": "int >= 1", "seed": "int", "N": "int >= 1"},
                     "kind": "graded"},
    "tensor_hash": {"params": {"left": "descriptor", "right": "descriptor", "N": "int >= 0"}, "kind": "graded"},
}


def _parse_bool(v) -> bool:
    if isinstance(v, bool):
        return v
    return str(v).lower() in ("1", "true", "yes", "on")


def from_descriptor(desc: dict):
    """Build a model from ``{family, d, lambda?, delta_spec?, N, seed?, ...}``."""
    desc = dict(desc)
    family = desc.get("family")
    if family not in CATALOG:
        raise ParameterError(f"unknown model family {family!r}; known: {sorted(CATALOG)}")
    N = int(desc.get("N", 10))
    d = int(desc["d"]) if desc.get("d") is not None else None
    if family == "hardy_ball":
        return hardy_ball(d or 2, N)
    if family == "bergman_ball":
        if desc.get("lambda") is None:
            raise ParameterError("bergman_ball needs lambda")
        return bergman_ball(d or 2, float(desc["lambda"]), N)
    if family == "spherical":
        spec = desc.get("delta_spec", "one")
        if isinstance(spec, str) and "," in spec and not spec.startswith("ratio"):
            spec = [float(x) for x in spec.split(",")]
        return spherical_shift(d or 2, spec, N)
    if family == "polydisc":
        return hardy_polydisc(d or 2, N)
    if family == "symmetrized_bidisc":
        return symmetrized_bidisc(max(N, 2), _parse_bool(desc.get("restricted", False)))
    if family == "ellipsoid":
        if desc.get("lambda") is None:
            raise ParameterError("ellipsoid needs lambda")
        return ellipsoid_bergman(float(desc["lambda"]), N)
    if family == "dnormal_jordan":
        n = int(desc.get("n", 2))
        rng = np.random.default_rng(int(desc.get("seed", 0)))
        e1 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        e2 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        return dnormal_jordan(e1, e2, complex(desc.get("lambda1", 1)), complex(desc.get("lambda2", 1)))
    if family == "random_commuting":
        return random_commuting_tuple(int(desc.get("n", 4)), d or 2, int(desc.get("seed", 0)))
    if family == "simpletensor":
        mats = random_commuting_normals(int(desc.get("n", 4)), d or 3, int(desc.get("seed", 0)))
        return simpletensor(mats, max(N, 1))
    if family == "tensor_hash":
        left = from_descriptor({"N": N, **desc["left"]})
        right = from_descriptor({"N": N, **desc["right"]})
        return tensor_hash(left, right, N)
    raise ParameterError(f"unhandled family {family!r}")  # pragma: no cover
