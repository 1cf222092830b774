"""Acceptance criteria, each run at its stated tolerance.

Every criterion prints one ``CRITERION n: PASS|FAIL`` line (collected in the
terminal summary by conftest.py, or printed directly when this file is run
as a script).  Two criteria do not hold as stated; they are evaluated
unchanged and marked as strict expected failures, so they are reported as
FAIL and would turn the run red if they ever started passing.
"""
from __future__ import annotations

import math
import time

import numpy as np
import pytest

from commdet import analysis as an
from commdet import freealg, linalg, models as M

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str) -> bool:
    RESULTS[n] = (bool(ok), detail)
    print(f"CRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


# ---------------------------------------------------------------- criteria

def criterion_1():
    t0 = time.perf_counter()
    same = all(freealg.normal_form(freealg.det_expansion(d)) == freealg.normal_form(freealg.gc_expansion(d))
               for d in (1, 2, 3))
    dt = time.perf_counter() - t0
    return same and dt < 10, f"normal forms equal for d=1,2,3 in {dt:.2f}s"


def criterion_2():
    worst = 0.0
    for d in (2, 3):
        for seed in range(20):
            tup = M.random_commuting_tuple(4, d, seed)
            D, G = an.det_operator(tup), an.gc_operator(tup)
            worst = max(worst, linalg.operator_norm(D - G) / (1 + linalg.operator_norm(G)))
    return worst <= 1e-10, f"max ||dEt-GC||/(1+||GC||) = {worst:.2e} over 40 tuples"


def criterion_3():
    vs = [an.amitsur_levitzki_check(n, 50, 7, tol=1e-10) for n in (1, 2, 3)]
    worst = max(v.details["max_relative_norm"] for v in vs)
    return all(v.status == an.PASS for v in vs), f"max ||S_2n||/scale = {worst:.2e}"


def criterion_4():
    t0 = time.perf_counter()
    ok = True
    notes = []
    N = 20
    for d in (2, 3):
        m = M.hardy_ball(d, N)
        ts = an.trace_series(m, N)
        ok &= ts.min_eigenvalue >= -1e-12
        rel = max(abs(e["trace"] - e["dim"] * m.det_eigenvalue((e["k"],) + (0,) * (d - 1)))
                  / abs(e["dim"] * m.det_eigenvalue((e["k"],) + (0,) * (d - 1))) for e in ts.entries)
        ok &= rel <= 1e-12
        closed = math.prod(N + j for j in range(1, d)) / (N + d) ** (d - 1)
        ok &= abs(ts.total - closed) <= 1e-12
        if d == 2:
            ok &= abs(ts.total - 1) <= 0.1
        notes.append(f"d={d}: min eig {ts.min_eigenvalue:.2e}, rel {rel:.1e}, sum {ts.total:.6f}")
    dt = time.perf_counter() - t0
    return ok and dt < 30, "; ".join(notes) + f"; {dt:.1f}s"


def criterion_5():
    N, d = 40, 2
    ts = an.trace_series(M.spherical_shift(d, "ratio(k+1,k+2)", N), N)
    delta_N = (N + 1) / (N + 2)
    closed = delta_N ** (2 * d) * (N + 1) / (N + 2)
    near_one = abs(ts.total - 1) <= 0.1
    tele = abs(ts.total - closed) <= 1e-10
    return near_one and tele, (f"partial sum {ts.total:.6f}, closed form {closed:.6f} "
                               f"(within 0.1 of 1: {near_one}; telescoped match: {tele})")


def criterion_6():
    t2 = an.trace_series(M.hardy_polydisc(2, 6), 6).total
    t3 = an.trace_series(M.hardy_polydisc(3, 6), 6).total
    return abs(t2 - 2) <= 1e-12 and abs(t3 - 6) <= 1e-12, f"d=2 trace {t2!r}, d=3 trace {t3!r}"


def criterion_7():
    from commdet.suites import symmetrized_eigen_checks
    chk = symmetrized_eigen_checks(10)
    diag = chk["anti_diag"]
    off = max(abs(v) for n, v in diag.items() if n != (1, 0))
    total = an.trace_series(M.symmetrized_bidisc(10, True), 10).total
    ok = (chk["eig_one"] <= 1e-12 and chk["eig_z"] <= 1e-12 and abs(diag[(1, 0)] - 1) <= 1e-12
          and off <= 1e-12 and abs(total - 1) <= 1e-12)
    return ok, (f"residuals {chk['eig_one']:.1e}/{chk['eig_z']:.1e}, <dEt e_(1,0), e_(1,0)> = {diag[(1, 0)]!r}, "
                f"max other {off:.1e}, trace {total!r}")


def criterion_8():
    lam = 4
    m30 = M.ellipsoid_bergman(lam, 30)
    D = an.det_operator(m30, "LAPLACE", 30)
    psd = all(linalg.is_psd(D.valid_block(k), linalg.ToleranceConfig(psd_tol=1e-12)).ok for k in range(31))
    chi = 0.0
    for k in range(31):
        B = D.valid_block(k)
        expect = np.diag([m30.det_eigenvalue(a) for a in D.space.labels(k)])
        chi = max(chi, float(np.max(np.abs(B - expect))))
    theta = an.bs_class_check(M.ellipsoid_bergman(lam, 20), range(1, 21)).theta_min
    s = an.trace_series(M.ellipsoid_bergman(lam, 40), 40).total
    ok = psd and chi <= 1e-10 and theta <= 2 and 0.60 <= s <= 0.667
    return ok, f"psd {psd}, chi error {chi:.1e}, theta_min {theta}, partial sum at 40 = {s:.5f}"


def criterion_9():
    ok = True
    notes = []
    for d in (2, 3):
        m = M.hardy_ball(d, 20)
        taus = "all" if d == 2 else "identity"
        rep = an.bs_class_check(m, range(1, 21), taus=taus)
        ok &= rep.condition_i == an.PASS
        ok &= all(r["rank"] <= r["bound"] for r in rep.rank_records)
        ok &= rep.theta_min == 1
        if d == 3:
            ok &= bool(rep.covariance and rep.covariance["holds"])
        full = an.bs_class_check(m, range(1, 21), taus="all")
        ok &= full.theta_min == 1
        notes.append(f"d={d}: theta_min {rep.theta_min} ({taus}), all-tau {full.theta_min}, "
                     f"covariance {rep.covariance['holds']}")
    return ok, "; ".join(notes)


PSD_MODELS = [
    lambda: M.hardy_ball(2, 20), lambda: M.hardy_ball(3, 12), lambda: M.hardy_polydisc(2, 8),
    lambda: M.hardy_polydisc(3, 6), lambda: M.spherical_shift(2, "ratio(k+1,k+2)", 20),
    lambda: M.ellipsoid_bergman(4, 30),
]


def criterion_10():
    ok = True
    notes = []
    for make in PSD_MODELS:
        m = make()
        ts = an.trace_series(m)
        theta = m.facts.theta
        bound = m.multiplicity * theta * math.factorial(m.d) * math.prod(x ** 2 for x in m.norms)
        ok &= max(ts.partial_sums) <= bound + 1e-12
        notes.append(f"{m.name}(d={m.d}) {ts.total:.4f}<={bound:g}")
    return ok, ", ".join(notes)


def criterion_11():
    N = 10
    a = an.tensor_trace_check(M.unilateral_shift(N), M.unilateral_shift(N), N, factor=2, tol=1e-12)
    b = an.tensor_trace_check(M.hardy_ball(2, N), M.unilateral_shift(N), N, factor=2, tol=1e-12)
    ok = a.status == an.PASS and b.status == an.PASS
    return ok, (f"shift#shift defect {a.details['identity_defect']:.1e}; hardy_ball(2)#shift defect "
                f"{b.details['identity_defect']:.2f} with factor 2, "
                f"{b.details['identity_defect_interleaving']:.1e} with factor binom(3,2)=3; "
                f"bounds respected {a.details['bound_respected'] and b.details['bound_respected']}")


def criterion_12():
    worst = 0.0
    for seed in range(20):
        tup = M.random_dnormal_tuple(2, 2 + seed % 2, seed)
        worst = max(worst, linalg.operator_norm(an.det_operator(tup)))
    rng = np.random.default_rng(0)
    J = M.dnormal_jordan(rng.standard_normal(3) + 1j * rng.standard_normal(3),
                         rng.standard_normal(3) + 1j * rng.standard_normal(3), 1, 1)
    lo = an.hyponormality_check(an.block_grid(J)).details["min_eigenvalue"]
    return worst <= 1e-12 and lo < -0.1, f"max ||dEt|| = {worst:.1e}; Jordan grid min eigenvalue {lo:.3f}"


def criterion_13():
    ok = True
    for seed in range(5):
        st_ = M.simpletensor(M.random_commuting_normals(4, 3, seed), 3)
        v = an.commutator_trace_inequalities(st_)
        ok &= v.status == an.PASS and len(v.details["tensor_bound"]) == 9
    return ok, "sum, product and Hilbert-Schmidt bounds hold for 5 instances"


def criterion_14():
    g = an.block_grid(M.hardy_ball(2, 41))
    s = an.trace_norm_series(g.entries[0][0], range(41))
    inc = s["increments"]
    increasing = all(b > a for a, b in zip(s["partial_sums"], s["partial_sums"][1:]))
    status = an.commutator_trace_inequalities(M.hardy_ball(2, 40)).status
    ok = increasing and inc[-1] > inc[0] / 2 and status == an.NOT_APPLICABLE
    return ok, f"increments {inc[0]:.3f} -> {inc[-1]:.3f}, sum at 40 = {s['partial_sums'][-1]:.2f}, {status}"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 15)}
UNATTAINABLE = {
    5: "the telescoped closed form at N=40 is (41/42)^5 = 0.886, which is not within 0.1 of 1",
    11: "for d1 + d2 = 3 the block-diagonal grid gives factor binom(3, 2) = 3, not 2",
}


@pytest.mark.parametrize("n", [
    pytest.param(n, marks=pytest.mark.xfail(strict=True, reason=UNATTAINABLE[n])) if n in UNATTAINABLE else n
    for n in CRITERIA
])
def test_criterion(n):
    ok, detail = CRITERIA[n]()
    assert record(n, ok, detail), detail


if __name__ == "__main__":
    for n, fn in CRITERIA.items():
        record(n, *fn())
