"""Checks built on top of the models: commutator grids, dEt by several
routes, hyponormality, trace series, BS-class conditions and the trace
inequalities.

Every result records the window it was computed at.  Graded results only
ever read blocks inside the exactness window.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import freealg, linalg
from .errors import CapabilityError, ValidationError
from .gradedop import FiniteTuple, GradedOperator, evaluate, evaluate_finite
from .linalg import DEFAULT_TOL, ToleranceConfig
from .models import GradedModel, ShiftModel, SimpleTensor, permutation_unitary, tensor_hash
from .multiindex import Grading

PASS, FAIL, NOT_APPLICABLE, NECESSARY_ONLY = "PASS", "FAIL", "NOT-APPLICABLE", "NECESSARY-ONLY"
ROUTES = ("LAPLACE", "PRODUCT", "CLOSED_FORM")
THREADS_ENV = "COMMDET_THREADS"


def parallel_map(fn: Callable, items: Iterable) -> list:
    """Ordered map, threaded when COMMDET_THREADS is a positive integer > 1."""
    items = list(items)
    try:
        n = int(os.environ.get(THREADS_ENV, "1"))
    except ValueError:
        n = 1
    if n <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


@dataclass
class Verdict:
    name: str
    status: str
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status in (PASS, NOT_APPLICABLE, NECESSARY_ONLY)

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details}


# ---------------------------------------------------------------- inputs

def _is_finite(tup) -> bool:
    if isinstance(tup, FiniteTuple):
        return True
    if isinstance(tup, (list, tuple)) and tup and isinstance(tup[0], np.ndarray):
        return True
    return False


def _finite(tup) -> FiniteTuple:
    return tup if isinstance(tup, FiniteTuple) else FiniteTuple(tuple(tup))


def _shifts(tup) -> tuple[int, ...]:
    if isinstance(tup, GradedModel):
        return tup.shifts
    return tuple(op.shift for op in tup)


def det_margin(shifts: Sequence[int]) -> int:
    """Extra window needed so the grid products are exact on degrees <= N."""
    d = len(shifts)
    return max(shifts) + (d - 1) * (max(shifts) - min(shifts))


def gc_margin(shifts: Sequence[int]) -> int:
    return sum(shifts)


def _graded_ops(tup, margin: int, N: int | None):
    """(operators, N) for a model at window N + margin, or operators as given."""
    if isinstance(tup, GradedModel):
        N = tup.N if N is None else N
        return tup.operators(N + margin), N
    ops = tuple(tup)
    return ops, (ops[0].N if N is None else N)


# ---------------------------------------------------------------- grid

@dataclass
class BlockGrid:
    """entries[i][j] = [T_j*, T_i] (0-based), shift g_i - g_j."""

    entries: list
    finite: bool

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def shifts(self):
        if self.finite:
            return [[0] * self.d for _ in range(self.d)]
        return [[e.shift for e in row] for row in self.entries]

    def hermitian_defect(self) -> float:
        worst = 0.0
        for i in range(self.d):
            for j in range(self.d):
                a, b = self.entries[j][i], self.entries[i][j]
                if self.finite:
                    worst = max(worst, linalg.rel_distance(a, b.conj().T))
                else:
                    worst = max(worst, a.distance(b.adjoint()))
        return worst

    def matrix(self) -> np.ndarray:
        if not self.finite:
            raise CapabilityError("dense grid assembly needs a finite tuple; use piece()")
        return np.block(self.entries)

    def generator_shifts(self) -> list[int]:
        # s_ij = g_i - g_j; recover g up to a constant from row 0
        if self.finite:
            return [0] * self.d
        base = [self.entries[i][0].shift for i in range(self.d)]
        return [b - min(base) for b in base]

    def piece(self, m: int) -> np.ndarray:
        """Grid restricted to the invariant piece (+)_j slice(m + g_j)."""
        g = self.generator_shifts()
        space = self.entries[0][0].space
        rows = []
        for i in range(self.d):
            row = []
            for j in range(self.d):
                src = m + g[j]
                e = self.entries[i][j]
                if src < 0 or src > space.N:
                    row.append(np.zeros((space.dim(m + g[i]), space.dim(src))))
                else:
                    row.append(e.valid_block(src))
            rows.append(row)
        return np.block(rows)

    def piece_degrees(self) -> list[int]:
        """All m whose piece lies inside the exactness window."""
        g = self.generator_shifts()
        N = self.entries[0][0].N
        space = self.entries[0][0].space
        out = []
        for m in range(-max(g), N + 1):
            if any(m + gi > N for gi in g):
                break
            ok = all(m + g[j] < 0 or m + g[i] < 0 or (m + g[j]) in self.entries[i][j].valid
                     for i in range(self.d) for j in range(self.d))
            if ok and sum(space.dim(m + gj) for gj in g) > 0:
                out.append(m)
        return out


def commutation_defect(tup, N: int | None = None) -> float:
    """Largest relative ||T_i T_j - T_j T_i|| on exact data."""
    if isinstance(tup, ShiftModel):
        return tup.cocycle_defect(tup.N if N is None else N)
    if _is_finite(tup):
        mats = list(_finite(tup))
        scale = max(1.0, max(linalg.operator_norm(A) for A in mats)) ** 2
        return max((linalg.frobenius(A @ B - B @ A) / scale
                    for a, A in enumerate(mats) for B in mats[a + 1:]), default=0.0)
    ops, _ = _graded_ops(tup, 0, N)
    worst = 0.0
    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            C = ops[a] @ ops[b] - ops[b] @ ops[a]
            if C.valid:
                worst = max(worst, C.frobenius())
    return worst


def block_grid(tup, N: int | None = None, tol: ToleranceConfig = DEFAULT_TOL, margin: int | None = None) -> BlockGrid:
    """The commutator grid, after checking that the tuple commutes."""
    defect = commutation_defect(tup, N)
    if defect > tol.eq_tol * 10:
        raise ValidationError(f"tuple does not commute (defect {defect:.3e})")
    if _is_finite(tup):
        mats = list(_finite(tup))
        entries = [[Tj.conj().T @ Ti - Ti @ Tj.conj().T for Tj in mats] for Ti in mats]
        grid = BlockGrid(entries, True)
    else:
        m = max(_shifts(tup)) if margin is None else margin
        ops, _ = _graded_ops(tup, m, N)
        entries = [[Tj.H @ Ti - Ti @ Tj.H for Tj in ops] for Ti in ops]
        grid = BlockGrid(entries, False)
    h = grid.hermitian_defect()
    if h > tol.eq_tol * 10:
        raise ValidationError(f"commutator grid is not Hermitian (defect {h:.3e})")
    return grid


# ---------------------------------------------------------------- dEt and GC

def _sum_of_products(entries, index_terms, finite: bool):
    """sum over (coeff, [(r, c), ...]) of coeff * prod_i entries[r][c] (left to right)."""
    cache: dict = {}

    def prod(pairs):
        if pairs in cache:
            return cache[pairs]
        r, c = pairs[-1]
        out = entries[r][c] if len(pairs) == 1 else prod(pairs[:-1]) @ entries[r][c]
        cache[pairs] = out
        return out

    total = None
    for coeff, pairs in index_terms:
        term = prod(tuple(pairs)) * coeff
        total = term if total is None else total + term
    return total


def laplace_terms(d: int):
    """(sgn sigma, [(tau(i), sigma(tau(i)))]) over sigma, tau."""
    perms = list(freealg.signed_permutations(d))
    for s, sigma in perms:
        for _, tau in perms:
            yield s, [(tau[i], sigma[tau[i]]) for i in range(d)]


def product_terms(d: int):
    """(sgn tau sgn eta, [(tau(i), eta(i))]): product of [T*_{eta(i)}, T_{tau(i)}]."""
    perms = list(freealg.signed_permutations(d))
    for st, tau in perms:
        for se, eta in perms:
            yield st * se, [(tau[i], eta[i]) for i in range(d)]


def det_operator(tup, route: str = "LAPLACE", N: int | None = None, tol: ToleranceConfig = DEFAULT_TOL):
    """dEt([[T*, T]]) by the chosen route.

    Graded models are evaluated at window ``N + margin`` and the result is
    required to be exact on degrees ``0..N``.
    """
    route = route.upper()
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
    finite = _is_finite(tup)
    if route == "CLOSED_FORM":
        if finite or not isinstance(tup, GradedModel) or not tup.has_closed_form:
            raise CapabilityError("closed-form dEt is only available for shift models with known eigenvalues")
        N = tup.N if N is None else N
        window = N + det_margin(tup.shifts)
        return GradedOperator.diagonal(tup.space(window), tup.det_eigenvalue)
    if finite:
        grid = block_grid(tup, tol=tol)
    else:
        grid = block_grid(tup, N, tol=tol, margin=det_margin(_shifts(tup)))
    terms = laplace_terms(grid.d) if route == "LAPLACE" else product_terms(grid.d)
    out = _sum_of_products(grid.entries, terms, grid.finite)
    if not finite and isinstance(tup, GradedModel):
        out.require_valid(range((tup.N if N is None else N) + 1))
    return out


def gc_operator(tup, N: int | None = None):
    """GC(T*, T) = S_2d(T_1*, T_1, ..., T_d*, T_d) evaluated word by word."""
    if _is_finite(tup):
        t = _finite(tup)
        return evaluate_finite(freealg.gc_expansion(t.d), t)
    ops, N = _graded_ops(tup, gc_margin(_shifts(tup)), N)
    out = evaluate(freealg.gc_expansion(len(ops)), ops)
    if isinstance(tup, GradedModel):
        out.require_valid(range(N + 1))
    return out


def op_distance(A, B, degrees=None) -> float:
    if isinstance(A, GradedOperator):
        return A.distance(B, degrees)
    return linalg.rel_distance(A, B)


def route_agreement(tup, N: int | None = None, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """All applicable dEt routes and GC agree on the shared exact degrees."""
    results = {"LAPLACE": det_operator(tup, "LAPLACE", N, tol), "PRODUCT": det_operator(tup, "PRODUCT", N, tol)}
    if isinstance(tup, GradedModel) and tup.has_closed_form:
        results["CLOSED_FORM"] = det_operator(tup, "CLOSED_FORM", N, tol)
    results["GC"] = gc_operator(tup, N)
    base = results["LAPLACE"]
    degrees = None
    if isinstance(base, GradedOperator):
        Nq = tup.N if (isinstance(tup, GradedModel) and N is None) else (N if N is not None else base.N)
        degrees = [k for k in range(Nq + 1) if all(k in r.valid for r in results.values())]
        # spaces differ by window; compare block-by-block
        dist = {name: max((linalg.rel_distance(base.valid_block(k), r.valid_block(k)) for k in degrees), default=0.0)
                for name, r in results.items() if name != "LAPLACE"}
    else:
        dist = {name: op_distance(base, r) for name, r in results.items() if name != "LAPLACE"}
    ok = all(v <= tol.eq_tol * 10 for v in dist.values())
    return Verdict("route_agreement", _status(ok), {"distances": dist, "degrees": degrees})


# ---------------------------------------------------------------- hyponormality

def hyponormality_check(grid: BlockGrid, degrees: Iterable[int] | None = None,
                        tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """PSD test of the grid per graded piece (or as one matrix for finite tuples)."""
    if grid.finite:
        res = linalg.is_psd(grid.matrix(), tol)
        return Verdict("hyponormality", _status(res.ok), {"min_eigenvalue": res.min_eigenvalue, "exact": True})
    exact = len(set(grid.generator_shifts())) == 1
    degrees = grid.piece_degrees() if degrees is None else list(degrees)
    per = []
    ok = True
    for m in degrees:
        res = linalg.is_psd(grid.piece(m), tol)
        per.append({"degree": m, "psd": res.ok, "min_eigenvalue": res.min_eigenvalue})
        ok &= res.ok
    if not ok:
        status = FAIL
    else:
        status = PASS if exact else NECESSARY_ONLY
    worst = min((p["min_eigenvalue"] for p in per), default=0.0)
    return Verdict("hyponormality", status,
                   {"exact": exact, "window": grid.entries[0][0].N, "min_eigenvalue": worst, "per_degree": per})


def _sample_directions(d: int, trials: int, seed: int) -> list[np.ndarray]:
    out = [np.eye(d, dtype=complex)[i] for i in range(d)]
    rng = np.random.default_rng(seed)
    while len(out) < max(trials, d):
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        out.append(v / np.linalg.norm(v))
    return out[:max(trials, d)]


def projective_hyponormality_sample(tup, trials: int = 20, seed: int = 0, N: int | None = None,
                                    tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """PSD check of [T_a*, T_a] for T_a = sum a_i T_i over coordinate and random unit a."""
    failures = []
    if _is_finite(tup):
        mats = list(_finite(tup))
        d = len(mats)
        for a in _sample_directions(d, trials, seed):
            Ta = sum(c * M for c, M in zip(a, mats))
            res = linalg.is_psd(Ta.conj().T @ Ta - Ta @ Ta.conj().T, tol)
            if not res.ok:
                failures.append({"alpha": [complex(x) for x in a], "min_eigenvalue": res.min_eigenvalue})
    else:
        shifts = _shifts(tup)
        if len(set(shifts)) != 1:
            return Verdict("projective_hyponormality", NOT_APPLICABLE,
                           {"reason": "generators of unequal degree; T_a is not homogeneous"})
        ops, N = _graded_ops(tup, shifts[0], N)
        d = len(ops)
        for a in _sample_directions(d, trials, seed):
            Ta = ops[0] * a[0]
            for c, op in zip(a[1:], ops[1:]):
                Ta = Ta + op * c
            C = Ta.H @ Ta - Ta @ Ta.H
            for k in sorted(C.valid):
                res = linalg.is_psd(C.valid_block(k), tol)
                if not res.ok:
                    failures.append({"alpha": [complex(x) for x in a], "degree": k,
                                     "min_eigenvalue": res.min_eigenvalue})
                    break
    return Verdict("projective_hyponormality", _status(not failures),
                   {"trials": max(trials, len(_shifts(tup)) if not _is_finite(tup) else trials),
                    "seed": seed, "failures": failures})


# ---------------------------------------------------------------- traces

@dataclass
class TraceSeriesResult:
    model: str
    N: int
    window: int
    route: str
    entries: list            # dicts: k, dim, trace, min_eigenvalue
    partial_sums: list
    closed_form_partial_sum: Optional[float] = None
    closed_form_match: Optional[bool] = None
    divergent: Optional[bool] = None

    @property
    def total(self) -> float:
        return self.partial_sums[-1] if self.partial_sums else 0.0

    @property
    def min_eigenvalue(self) -> float:
        return min((e["min_eigenvalue"] for e in self.entries), default=0.0)

    def as_dict(self) -> dict:
        return {
            "model": self.model, "N": self.N, "window": self.window, "route": self.route,
            "entries": self.entries, "partial_sums": self.partial_sums,
            "closed_form_partial_sum": self.closed_form_partial_sum,
            "closed_form_match": self.closed_form_match,
            "note": "partial sums are lower bounds for the trace when dEt is PSD",
        }


def trace_series(model, N: int | None = None, use_closed_form: bool = False, route: str = "LAPLACE",
                 tol: ToleranceConfig = DEFAULT_TOL) -> TraceSeriesResult:
    """Per-degree traces of dEt on degrees 0..N with partial sums."""
    N = model.N if N is None else N
    route = "CLOSED_FORM" if use_closed_form else route
    D = det_operator(model, route, N, tol)
    D.require_valid(range(N + 1))
    entries, partial, acc = [], [], 0.0
    for k in range(N + 1):
        B = D.valid_block(k)
        tr = float(np.trace(B).real)
        lo = float(linalg.hermitian_eigenvalues(B)[0]) if B.shape[0] else 0.0
        acc += tr
        entries.append({"k": k, "dim": int(B.shape[0]), "trace": tr, "min_eigenvalue": lo})
        partial.append(acc)
    closed = model.telescoped_partial_sum(N) if isinstance(model, GradedModel) else None
    match = None
    if closed is not None:
        match = abs(closed - acc) <= tol.eq_tol * max(1.0, abs(closed))
    return TraceSeriesResult(getattr(model, "name", "tuple"), N, D.N, route, entries, partial, closed, match)


def trace_norm_series(op: GradedOperator, degrees: Iterable[int] | None = None, tol: float = DEFAULT_TOL.eq_tol) -> dict:
    """Per-degree trace norms of a homogeneous operator and a divergence flag.

    Blocks map disjoint slices to disjoint slices, so the trace norm is the
    sum of block trace norms.  The series is flagged divergent when the last
    increment exceeds half of the first (non-decaying increments).
    """
    degrees = sorted(op.valid) if degrees is None else list(degrees)
    inc = [linalg.trace_norm(op.valid_block(k)) for k in degrees]
    partial = list(np.cumsum(inc)) if inc else []
    scale = max(inc, default=0.0)
    divergent = bool(len(inc) >= 2 and inc[-1] > max(inc[0] / 2, tol * max(1.0, scale)))
    return {"degrees": degrees, "increments": [float(x) for x in inc],
            "partial_sums": [float(x) for x in partial], "divergent": divergent,
            "total": float(partial[-1]) if partial else 0.0}


# ---------------------------------------------------------------- BS class

@dataclass
class BsReport:
    model: str
    N_values: list
    records: list                 # per (N, tau) dicts
    rank_records: list            # per (N, j) dicts
    condition_i: str
    condition_ii: str
    theta_min: int
    theta_by_tau: dict
    covariance: Optional[dict] = None
    theta_candidates: Optional[list] = None

    def as_dict(self) -> dict:
        return {
            "model": self.model, "N_values": self.N_values, "records": self.records,
            "rank_records": self.rank_records, "condition_i": self.condition_i,
            "condition_ii": self.condition_ii, "theta_min": self.theta_min,
            "theta_by_tau": self.theta_by_tau, "covariance": self.covariance,
            "theta_candidates": self.theta_candidates,
            "grading": "total degree (P_N is the cutoff at total degree N)",
        }


def permutation_covariance(model: ShiftModel, window: int | None = None) -> dict:
    """max over pi of || Gamma_pi T_{pi(i)} Gamma_pi* - T_i || on the window."""
    from itertools import permutations
    window = model.N if window is None else window
    if not model.grading.is_standard:
        return {"holds": False, "defect": float("inf"), "reason": "grading not permutation invariant"}
    ops = model.operators(window)
    space = ops[0].space
    worst = 0.0
    for perm in permutations(range(model.d)):
        G = permutation_unitary(space, perm)
        # Gamma T_j Gamma* = T_{perm(j)}; with pi = perm^-1 this reads Gamma T_{pi(i)} Gamma* = T_i
        for j in range(model.d):
            T = ops[j]
            for k, B in T.blocks.items():
                lhs = G[k + T.shift] @ B @ G[k].conj().T
                worst = max(worst, linalg.frobenius(lhs - ops[perm[j]].blocks[k]))
    return {"holds": worst <= DEFAULT_TOL.eq_tol, "defect": worst}


@lru_cache(maxsize=None)
def _bs_words(d: int, tau: tuple) -> freealg.FormalSum:
    return freealg.bs_word_sum(d, tau)


def bs_class_check(model: ShiftModel, N_values: Iterable[int], theta_candidates: Sequence[int] | None = None,
                   taus: str = "all", m: int = 1, tol: ToleranceConfig = DEFAULT_TOL,
                   psd_window: int | None = None) -> BsReport:
    """Conditions (i)-(iii) of the BS-class on the computed range of N.

    P_N is the total-degree cutoff, so the operators are rebuilt with the
    standard grading (every generator then has shift 1).  Only the slice of
    total degree N feeds P_N^perp T P_N, so condition (iii) is exact at
    window N + 1.
    """
    if not isinstance(model, ShiftModel):
        raise CapabilityError("bs_class_check needs a graded weighted-shift model")
    d = model.d
    N_values = sorted(set(int(n) for n in N_values))
    std = Grading.standard(d)
    from itertools import permutations
    tau_list = list(permutations(range(d))) if taus == "all" else [tuple(range(d))]
    norms2 = float(np.prod([x ** 2 for x in model.norms]))
    records, rank_records = [], []
    cond_i = True

    def one(N):
        ops = model.operators(N + 1, grading=std)
        out_rec, out_rank = [], []
        ok_i = True
        for j, T in enumerate(ops):
            if T.shift < 1:
                ok_i = False
            blk = T.valid_block(N)
            r = linalg.numerical_rank(blk, tol.rank_tol)
            bound = m * math.comb(N + d - 1, d - 1)
            out_rank.append({"N": N, "j": j + 1, "rank": r, "bound": bound, "ok": r <= bound})
        for tau in tau_list:
            W = evaluate(_bs_words(d, tau), ops)
            Tlast = ops[tau[-1]]
            M = W.valid_block(N + 1) @ Tlast.valid_block(N)
            lhs = linalg.operator_norm(M)
            binom = math.comb(N + d - 1, d - 1)
            ratio = lhs * binom / norms2
            out_rec.append({"N": N, "tau": [t + 1 for t in tau], "lhs": lhs,
                            "rhs_theta1": norms2 / binom, "ratio": ratio})
        return out_rec, out_rank, ok_i

    for rec, rk, ok_i in parallel_map(one, N_values):
        records += rec
        rank_records += rk
        cond_i &= ok_i
    theta_by_tau = {}
    for r in records:
        key = "".join(map(str, r["tau"]))
        theta_by_tau[key] = max(theta_by_tau.get(key, 0.0), r["ratio"])
    theta_min = max([1] + [math.ceil(v - 1e-9) for v in theta_by_tau.values()])
    theta_by_tau = {k: max(1, math.ceil(v - 1e-9)) for k, v in theta_by_tau.items()}
    for r in records:
        r["theta_min"] = max(1, math.ceil(r["ratio"] - 1e-9))
    # condition (ii): PSD dEt on the computed degrees of the model's own grading
    psd_N = max(N_values) if psd_window is None else psd_window
    ts = trace_series(model, psd_N, tol=tol)
    cond_ii = all(linalg.is_psd(np.diag([e["min_eigenvalue"]]), tol).ok for e in ts.entries)
    cov = permutation_covariance(model, max(N_values) + 1) if model.grading.is_standard else None
    if theta_candidates:
        cands = [{"theta": t, "ok": t >= theta_min} for t in theta_candidates]
    else:
        cands = None
    return BsReport(model.name, N_values, records, rank_records,
                    _status(cond_i and all(r["ok"] for r in rank_records)),
                    _status(cond_ii), theta_min, theta_by_tau, cov, cands)


# ---------------------------------------------------------------- trace bounds

def trace_bound_check(model: GradedModel, N: int | None = None, theta: int | None = None,
                      tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Partial trace sum against m theta d! prod ||T_i||^2 and the volume bound."""
    N = model.N if N is None else N
    ts = trace_series(model, N, tol=tol)
    theta = theta if theta is not None else model.facts.theta
    if theta is None:
        return Verdict("trace_bound", NOT_APPLICABLE, {"reason": "no BS constant known for this model", "N": N})
    d = model.d
    norms2 = float(np.prod([x ** 2 for x in model.norms]))
    bound = model.multiplicity * theta * math.factorial(d) * norms2
    s = ts.total
    details = {"N": N, "partial_sum": s, "theta": theta, "bound": bound, "margin": bound - s,
               "psd": ts.min_eigenvalue >= -tol.psd_tol}
    ok = s <= bound + tol.eq_tol * max(1.0, bound)
    if model.facts.volume is not None:
        vb = model.multiplicity * math.factorial(d) / math.pi ** d * model.facts.volume
        details.update({"volume_bound": vb, "volume_margin": vb - s,
                        "volume_bound_respected": s <= vb + tol.eq_tol * max(1.0, vb)})
    return Verdict("trace_bound", _status(ok), details)


def _tensor_expected_block(A: GradedOperator, B: GradedOperator, AB: GradedOperator, k: int,
                           factor: float) -> np.ndarray:
    """factor * (dEt A (x) dEt B) on slice k of the tensor space, in its basis order."""
    space = AB.space
    sa, sb = A.space, B.space
    n = space.dim(k)
    out = np.zeros((n, n), dtype=complex)
    for a in range(0, k + 1):
        la, lb = sa.labels(a), sb.labels(k - a)
        if not la or not lb:
            continue
        idx = np.array([space.index_of(al + be)[1] for al in la for be in lb])
        out[np.ix_(idx, idx)] = factor * np.kron(A.valid_block(a), B.valid_block(k - a))
    return out


def tensor_trace_check(modelA: ShiftModel, modelB: ShiftModel, N: int, factor: float | None = None,
                       tol: float = 1e-12) -> Verdict:
    """dEt(A#B) = c dEt(A) (x) dEt(B) blockwise, trace multiplicativity and the tensor bound.

    The default ``c`` is binom(d1 + d2, d1), the number of interleavings of
    the two index sets in the Laplace sum.  The identity is also evaluated
    with c = 2 and the defect reported.  The trace bound is
    2 d1! d2! m1 m2 prod ||T||^2.
    """
    d1, d2 = modelA.d, modelB.d
    exact = float(math.comb(d1 + d2, d1))
    factor = exact if factor is None else float(factor)
    AB = tensor_hash(modelA, modelB, N)
    D = det_operator(AB, "LAPLACE", N)
    DA = det_operator(modelA, "LAPLACE", N)
    DB = det_operator(modelB, "LAPLACE", N)
    defects = {}
    for c in sorted({factor, exact, 2.0}):
        defects[c] = max(linalg.frobenius(D.valid_block(k) - _tensor_expected_block(DA, DB, D, k, c))
                         for k in range(N + 1))
    tr = [float(np.trace(D.valid_block(k)).real) for k in range(N + 1)]
    ta = [float(np.trace(DA.valid_block(k)).real) for k in range(N + 1)]
    tb = [float(np.trace(DB.valid_block(k)).real) for k in range(N + 1)]
    product = factor * sum(ta[a] * tb[b] for a in range(N + 1) for b in range(N + 1 - a))
    partial = sum(tr)
    normsA = float(np.prod([x ** 2 for x in modelA.norms]))
    normsB = float(np.prod([x ** 2 for x in modelB.norms]))
    bound = (2 * math.factorial(d1) * math.factorial(d2)
             * modelA.multiplicity * modelB.multiplicity * normsA * normsB)
    ok_id = defects[factor] <= tol
    ok_mult = abs(partial - product) <= tol * max(1.0, abs(product)) * 10
    ok_bound = partial <= bound + tol
    return Verdict("tensor_trace", _status(ok_id and ok_mult and ok_bound), {
        "N": N, "factor": factor, "interleaving_factor": exact,
        "identity_defect": defects[factor], "identity_defect_factor_2": defects[2.0],
        "identity_defect_interleaving": defects[exact],
        "partial_sum": partial, "factor_times_product_of_traces": product,
        "bound": bound, "identity": ok_id, "multiplicative": ok_mult, "bound_respected": ok_bound,
    })


# ---------------------------------------------------------------- trace-norm inequalities

def commutator_trace_inequalities(tup, N: int | None = None, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Trace-norm inequalities between the commutators [T_j*, T_i].

    ||[T_j*,T_k]||_1 <= ||[T_k*,T_k]||_1 + ||[T_j*,T_j]||_1 and
    ||[T_j*,T_i]||_1 <= ||[T_i*,T_i]||_1^{1/2} ||[T_j*,T_j]||_1^{1/2};
    for the simple tensor model also ||[(A_j S)*, A_i S]||_1 <= ||A_i||_2 ||A_j||_2.
    """
    finite = _is_finite(tup)
    grid = block_grid(tup, N, tol)
    d = grid.d
    norms = np.zeros((d, d))
    growth = {}
    divergent = False
    for i in range(d):
        for j in range(d):
            e = grid.entries[i][j]
            if finite:
                norms[i, j] = linalg.trace_norm(e)
            else:
                s = trace_norm_series(e, tol=tol.eq_tol)
                norms[i, j] = s["total"]
                if s["divergent"]:
                    divergent = True
                    growth[f"{i + 1}{j + 1}"] = s["partial_sums"]
    if divergent:
        return Verdict("trace_inequalities", NOT_APPLICABLE,
                       {"reason": "commutator trace norms diverge (non-decaying per-degree increments)",
                        "partial_sum_growth": growth, "window": grid.entries[0][0].N})
    slack = tol.eq_tol * max(1.0, float(norms.max()))
    sum_rows, product, tensor = [], [], []
    for i in range(d):
        for j in range(d):
            sum_rows.append({"j": j + 1, "k": i + 1, "lhs": norms[i, j],
                          "rhs": norms[i, i] + norms[j, j], "ok": norms[i, j] <= norms[i, i] + norms[j, j] + slack})
            rhs = math.sqrt(norms[i, i] * norms[j, j])
            product.append({"i": i + 1, "j": j + 1, "lhs": norms[i, j], "rhs": rhs,
                            "ok": norms[i, j] <= rhs + slack})
    if isinstance(tup, SimpleTensor):
        for i, Ai in enumerate(tup.factors):
            for j, Aj in enumerate(tup.factors):
                rhs = linalg.hilbert_schmidt_norm(Ai) * linalg.hilbert_schmidt_norm(Aj)
                exact = linalg.trace_norm(Aj.conj().T @ Ai)
                tensor.append({"i": i + 1, "j": j + 1, "lhs": norms[i, j], "exact": exact, "rhs": rhs,
                               "ok": norms[i, j] <= rhs + slack and abs(norms[i, j] - exact) <= slack * 10})
    ok = all(r["ok"] for r in sum_rows + product + tensor)
    return Verdict("trace_inequalities", _status(ok), {
        "trace_norms": norms.tolist(), "sum_bound": sum_rows, "product_bound": product, "tensor_bound": tensor,
    })


# ---------------------------------------------------------------- Amitsur-Levitzki

def standard_polynomial_value(mats: Sequence[np.ndarray]) -> np.ndarray:
    h = len(mats)
    expr = freealg.standard_polynomial([freealg.T(i + 1) for i in range(h)])
    return evaluate_finite(expr, {freealg.T(i + 1): M for i, M in enumerate(mats)})


def amitsur_levitzki_check(n: int, trials: int = 50, seed: int = 0, tol: float = DEFAULT_TOL.eq_tol) -> Verdict:
    """S_2n vanishes on n x n matrices; S_{2n-1} is reported as a sharpness probe."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rngs = np.random.default_rng(seed).spawn(trials)

    def one(rng):
        mats = [linalg.random_matrix(n, rng) for _ in range(2 * n)]
        scale = math.factorial(2 * n) * float(np.prod([linalg.operator_norm(M) for M in mats]))
        val = linalg.operator_norm(standard_polynomial_value(mats))
        probe = linalg.operator_norm(standard_polynomial_value(mats[:2 * n - 1])) if n > 1 else 0.0
        return val / max(scale, 1e-300), probe

    res = parallel_map(one, rngs)
    worst = max(r[0] for r in res)
    probes = [r[1] for r in res]
    return Verdict("amitsur_levitzki", _status(worst <= tol), {
        "n": n, "trials": trials, "seed": seed, "max_relative_norm": worst,
        "sharpness_probe_min_norm": min(probes), "sharpness_probe_max_norm": max(probes),
    })
