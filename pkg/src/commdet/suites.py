"""Verification suites run by ``commdet verify``.

Each suite returns a list of :class:`~commdet.analysis.Verdict`.  Suites take
the same keyword options (N, seed, trials, tol); N overrides the suite's
default window where that makes sense.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import analysis as an
from . import freealg, linalg, models
from .analysis import FAIL, PASS, Verdict
from .errors import CommdetError
from .linalg import DEFAULT_TOL, ToleranceConfig


@dataclass
class SuiteOptions:
    N: int | None = None
    seed: int = 0
    trials: int = 20
    tol: ToleranceConfig = DEFAULT_TOL

    def window(self, default: int) -> int:
        return default if self.N is None else self.N


def _st(ok: bool) -> str:
    return PASS if ok else FAIL


def _guard(name: str, fn: Callable[[], list]) -> list:
    """Run a check; library errors (e.g. truncation) become a FAIL verdict."""
    try:
        return fn()
    except CommdetError as exc:
        return [Verdict(name, FAIL, {"error": f"{type(exc).__name__}: {exc}"})]


# ---------------------------------------------------------------- hh

def symbolic_certificate(d: int) -> dict:
    det = freealg.normal_form(freealg.det_expansion(d))
    gc = freealg.normal_form(freealg.gc_expansion(d))
    prod = freealg.normal_form(freealg.product_route_expansion(d))
    return {
        "d": d, "equal": det == gc == prod, "terms": len(gc),
        "raw_det_terms": math.factorial(d) ** 2 * 2 ** d, "raw_gc_terms": math.factorial(2 * d),
        "certificate": gc.certificate_lines(),
    }


def suite_hh(opt: SuiteOptions) -> list[Verdict]:
    out = []
    for d in (1, 2, 3):
        cert = symbolic_certificate(d)
        out.append(Verdict(f"symbolic_det_equals_gc_d{d}", _st(cert["equal"]), cert))
    worst = 0.0
    cases = []
    for d in (2, 3):
        for s in range(10):
            tup = models.random_commuting_tuple(4, d, opt.seed + s)
            D = an.det_operator(tup, "LAPLACE", tol=opt.tol)
            G = an.gc_operator(tup)
            rel = linalg.operator_norm(D - G) / (1 + linalg.operator_norm(G))
            worst = max(worst, rel)
            cases.append({"d": d, "seed": opt.seed + s, "relative_error": rel})
    out.append(Verdict("numeric_det_equals_gc", _st(worst <= 1e-10), {"n": 4, "max_relative_error": worst,
                                                                        "cases": cases}))
    h = models.hardy_ball(2, opt.window(8))
    out.append(an.route_agreement(h, tol=opt.tol))
    out[-1].name = "route_agreement_hardy_ball_d2"
    return out


# ---------------------------------------------------------------- al

def suite_al(opt: SuiteOptions) -> list[Verdict]:
    out = []
    for n in (1, 2, 3):
        v = an.amitsur_levitzki_check(n, opt.trials, opt.seed, tol=1e-10)
        v.name = f"amitsur_levitzki_n{n}"
        out.append(v)
    return out


# ---------------------------------------------------------------- ball

def _ball_checks(d: int, N: int, tol: ToleranceConfig) -> list[Verdict]:
    m = models.hardy_ball(d, N)
    ts = an.trace_series(m, N, tol=tol)
    psd = ts.min_eigenvalue >= -1e-12
    worst = 0.0
    for e in ts.entries:
        expect = e["dim"] * m.det_eigenvalue((e["k"],) + (0,) * (d - 1))
        worst = max(worst, abs(e["trace"] - expect) / max(abs(expect), 1e-300))
    closed = ts.closed_form_partial_sum
    tele = abs(ts.total - closed) <= 1e-12 * max(1.0, closed)
    out = [
        Verdict(f"ball_d{d}_dEt_psd", _st(psd), {"N": N, "min_eigenvalue": ts.min_eigenvalue}),
        Verdict(f"ball_d{d}_trace_closed_form", _st(worst <= 1e-12), {"N": N, "max_relative_error": worst}),
        Verdict(f"ball_d{d}_telescoped_partial_sum", _st(tele),
                {"N": N, "partial_sum": ts.total, "closed_form": closed, "limit": 1.0}),
    ]
    g = an.hyponormality_check(an.block_grid(models.hardy_ball(d, min(N, 10))), tol=tol)
    g.name = f"ball_d{d}_hyponormal"
    g.details.pop("per_degree", None)
    out.append(g)
    return out


def suite_ball(opt: SuiteOptions) -> list[Verdict]:
    N = opt.window(20)
    out = []
    for d in (2, 3):
        out += _guard(f"ball_d{d}", lambda d=d: _ball_checks(d, N, opt.tol))
    ts = an.trace_series(models.hardy_ball(2, N), N, tol=opt.tol)
    out.append(Verdict("ball_d2_partial_sum_within_10pct_of_1", _st(abs(ts.total - 1) <= 0.1),
                       {"N": N, "partial_sum": ts.total}))
    g = an.hyponormality_check(an.block_grid(models.bergman_ball(2, 1.5, 10)), tol=opt.tol)
    out.append(Verdict("bergman_lambda_1.5_not_hyponormal", _st(g.status == FAIL),
                       {"lambda": 1.5, "min_eigenvalue": g.details["min_eigenvalue"]}))
    out.append(an.trace_bound_check(models.hardy_ball(2, N), N, tol=opt.tol))
    return out


# ---------------------------------------------------------------- spherical

def suite_spherical(opt: SuiteOptions) -> list[Verdict]:
    N = opt.window(40)
    d = 2
    m = models.spherical_shift(d, "ratio(k+1,k+2)", N)
    ts = an.trace_series(m, N, tol=opt.tol)
    closed = ts.closed_form_partial_sum
    out = [
        Verdict("spherical_partial_sum_within_0.1_of_1", _st(abs(ts.total - 1) <= 0.1),
                {"N": N, "partial_sum": ts.total, "target": 1.0}),
        Verdict("spherical_telescoped_partial_sum", _st(abs(ts.total - closed) <= 1e-10 * max(1, closed)),
                {"N": N, "partial_sum": ts.total, "closed_form": closed}),
        Verdict("spherical_dEt_psd", _st(ts.min_eigenvalue >= -opt.tol.psd_tol), {"min_eigenvalue": ts.min_eigenvalue}),
    ]
    delta = models.parse_delta("ratio(k+1,k+2)")
    worst = min(m.det_eigenvalue((k, 0)) - (delta(k - 1) ** (2 * d) if k else 0.0)
                * models.hardy_ball_eigenvalue(d, k) for k in range(N + 1))
    out.append(Verdict("spherical_monotone_delta_comparison", _st(worst >= -1e-15), {"min_slack": worst}))
    return out


# ---------------------------------------------------------------- polydisc

def suite_polydisc(opt: SuiteOptions) -> list[Verdict]:
    N = opt.window(6)
    out = []
    for d, expect in ((2, 2.0), (3, 6.0)):
        ts = an.trace_series(models.hardy_polydisc(d, N), N, tol=opt.tol)
        out.append(Verdict(f"polydisc_d{d}_trace", _st(abs(ts.total - expect) <= 1e-12),
                           {"N": N, "partial_sum": ts.total, "expected": expect}))
    g = an.hyponormality_check(an.block_grid(models.hardy_polydisc(2, N)), tol=opt.tol)
    g.name = "polydisc_d2_hyponormal"
    g.details.pop("per_degree", None)
    out.append(g)
    out.append(an.trace_bound_check(models.hardy_polydisc(2, N), N, tol=opt.tol))
    return out


# ---------------------------------------------------------------- symmetrized bidisc

def symmetrized_eigen_checks(N: int = 10) -> dict:
    full = models.symmetrized_bidisc(N)
    D = an.det_operator(full, "LAPLACE", N)
    sp = D.space
    v0 = np.zeros(sp.dim(0), dtype=complex)
    v0[sp.index_of((0, 0))[1]] = 1
    w0 = D.valid_block(0) @ v0
    v1 = np.zeros(sp.dim(1), dtype=complex)
    v1[sp.index_of((1, 0))[1]] = 1
    v1[sp.index_of((0, 1))[1]] = 1
    w1 = D.valid_block(1) @ v1
    anti = models.symmetrized_bidisc(N, restricted=True)
    Da = an.det_operator(anti, "LAPLACE", N)
    diag = {}
    for k in range(N + 1):
        B = Da.valid_block(k)
        for p, n in enumerate(Da.space.labels(k)):
            diag[n] = float(B[p, p].real)
    return {"eig_one": float(np.linalg.norm(w0 - 2 * v0)), "eig_z": float(np.linalg.norm(w1 + v1)),
            "anti_diag": diag}


def suite_symmetrized(opt: SuiteOptions) -> list[Verdict]:
    N = opt.window(10)
    chk = symmetrized_eigen_checks(N)
    diag = chk["anti_diag"]
    off = max((abs(v) for n, v in diag.items() if n != (1, 0)), default=0.0)
    out = [
        Verdict("symmetrized_eigenvalue_2_on_1x1", _st(chk["eig_one"] <= 1e-12), {"residual": chk["eig_one"]}),
        Verdict("symmetrized_eigenvalue_minus1", _st(chk["eig_z"] <= 1e-12), {"residual": chk["eig_z"]}),
        Verdict("antisymmetric_diagonal", _st(abs(diag[(1, 0)] - 1) <= 1e-12 and off <= 1e-12),
                {"N": N, "value_at_(1,0)": diag[(1, 0)], "max_other": off}),
    ]
    ts = an.trace_series(models.symmetrized_bidisc(N, True), N, tol=opt.tol)
    out.append(Verdict("antisymmetric_trace", _st(abs(ts.total - 1) <= 1e-12), {"N": N, "partial_sum": ts.total}))
    g = an.hyponormality_check(an.block_grid(models.symmetrized_bidisc(N)), tol=opt.tol)
    g.name = "symmetrized_hyponormal"
    g.details.pop("per_degree", None)
    out.append(g)
    return out


# ---------------------------------------------------------------- ellipsoid

def suite_ellipsoid(opt: SuiteOptions) -> list[Verdict]:
    lam = 4
    N_trace = opt.window(40)
    m30 = models.ellipsoid_bergman(lam, 30)
    ts30 = an.trace_series(m30, 30, tol=opt.tol)
    out = [Verdict("ellipsoid_dEt_psd", _st(ts30.min_eigenvalue >= -opt.tol.psd_tol),
                   {"N": 30, "min_eigenvalue": ts30.min_eigenvalue})]
    D = an.det_operator(m30, "LAPLACE", 30)
    worst = 0.0
    for k in range(31):
        B = D.valid_block(k)
        for p, a in enumerate(D.space.labels(k)):
            worst = max(worst, abs(B[p, p].real - m30.det_eigenvalue(a)))
        worst = max(worst, linalg.frobenius(B - np.diag(np.diag(B))))
    out.append(Verdict("ellipsoid_chi_closed_form", _st(worst <= 1e-10), {"N": 30, "max_error": worst}))
    bs = an.bs_class_check(models.ellipsoid_bergman(lam, 20), range(1, 21), tol=opt.tol)
    out.append(Verdict("ellipsoid_theta_at_most_2", _st(bs.theta_min <= 2),
                       {"theta_min": bs.theta_min, "N_range": [1, 20], "theta_by_tau": bs.theta_by_tau}))
    ts = an.trace_series(models.ellipsoid_bergman(lam, N_trace), N_trace, tol=opt.tol)
    out.append(Verdict("ellipsoid_trace_window", _st(0.60 <= ts.total <= 0.667),
                       {"N": N_trace, "partial_sum": ts.total, "interval": [0.60, 0.667]}))
    return out


# ---------------------------------------------------------------- bs

def suite_bs(opt: SuiteOptions) -> list[Verdict]:
    Nmax = opt.window(20)
    out = []
    for d in (2, 3):
        rep = an.bs_class_check(models.hardy_ball(d, Nmax), range(1, Nmax + 1), tol=opt.tol)
        out.append(Verdict(f"bs_d{d}_condition_i", rep.condition_i,
                           {"rank_records": [r for r in rep.rank_records if r["N"] in (1, Nmax)]}))
        out.append(Verdict(f"bs_d{d}_condition_ii", rep.condition_ii, {}))
        out.append(Verdict(f"bs_d{d}_condition_iii_theta_1", _st(rep.theta_min == 1),
                           {"theta_min": rep.theta_min, "theta_by_tau": rep.theta_by_tau,
                            "N_range": [1, Nmax], "covariance": rep.covariance}))
    return out


# ---------------------------------------------------------------- tensor

def suite_tensor(opt: SuiteOptions) -> list[Verdict]:
    N = opt.window(10)
    out = []
    pairs = {
        "shift#shift": (models.unilateral_shift(N), models.unilateral_shift(N)),
        "hardy_ball2#shift": (models.hardy_ball(2, N), models.unilateral_shift(N)),
    }
    for name, (A, B) in pairs.items():
        v = an.tensor_trace_check(A, B, N, factor=2, tol=1e-12)
        v.name = f"tensor_{name}_factor_2"
        out.append(v)
        v = an.tensor_trace_check(A, B, N, tol=1e-12)
        v.name = f"tensor_{name}_interleaving_factor"
        out.append(v)
    zero = models.weighted_shift("zero", 1, N, lambda i, a: 0.0)
    v = an.tensor_trace_check(models.hardy_ball(2, N), zero, N)
    out.append(Verdict("tensor_trivial_factor_zero", _st(abs(v.details["partial_sum"]) <= 1e-15),
                       {"partial_sum": v.details["partial_sum"]}))
    return out


# ---------------------------------------------------------------- dnormal

def suite_dnormal(opt: SuiteOptions) -> list[Verdict]:
    worst = 0.0
    for s in range(opt.trials):
        d = 2 + s % 2
        tup = models.random_dnormal_tuple(2, d, opt.seed + s)
        worst = max(worst, linalg.operator_norm(an.det_operator(tup, "LAPLACE", tol=opt.tol)))
    out = [Verdict("dnormal_dEt_zero", _st(worst <= 1e-12), {"instances": opt.trials, "max_norm": worst})]
    rng = np.random.default_rng(opt.seed)
    e1 = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    e2 = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    J = models.dnormal_jordan(e1, e2, 1, 1)
    g = an.hyponormality_check(an.block_grid(J), tol=opt.tol)
    out.append(Verdict("jordan_grid_not_psd", _st(g.details["min_eigenvalue"] < -0.1),
                       {"min_eigenvalue": g.details["min_eigenvalue"]}))
    out.append(Verdict("jordan_dEt_zero", _st(linalg.operator_norm(an.det_operator(J)) <= 1e-12),
                       {"norm": linalg.operator_norm(an.det_operator(J))}))
    p = an.projective_hyponormality_sample(J, trials=opt.trials, seed=opt.seed, tol=opt.tol)
    out.append(Verdict("jordan_not_projectively_hyponormal", _st(p.status == FAIL),
                       {"first_failure": p.details["failures"][:1]}))
    return out


# ---------------------------------------------------------------- ineq

def suite_ineq(opt: SuiteOptions) -> list[Verdict]:
    out = []
    for s in range(5):
        st = models.simpletensor(models.random_commuting_normals(4, 3, opt.seed + s), opt.window(3))
        v = an.commutator_trace_inequalities(st, tol=opt.tol)
        v.name = f"simpletensor_seed{opt.seed + s}"
        out.append(v)
    v = an.commutator_trace_inequalities(models.hardy_ball(2, 40), tol=opt.tol)
    v.name = "hardy_ball_d2_divergent"
    out.append(v)
    return out


SUITES: dict[str, Callable[[SuiteOptions], list[Verdict]]] = {
    "hh": suite_hh, "al": suite_al, "ball": suite_ball, "spherical": suite_spherical,
    "polydisc": suite_polydisc, "symmetrized": suite_symmetrized, "ellipsoid": suite_ellipsoid,
    "bs": suite_bs, "tensor": suite_tensor, "dnormal": suite_dnormal, "ineq": suite_ineq,
}


def run_suite(name: str, opt: SuiteOptions | None = None) -> list[Verdict]:
    opt = opt or SuiteOptions()
    return _guard(name, lambda: SUITES[name](opt))
