import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from commdet import analysis as an
from commdet import linalg, models as M
from commdet.errors import CapabilityError, TruncationError, ValidationError

from oracles import HARDY2_DEGREE0, HARDY2_DEGREE1, dense_det, dense_gc, det_diagonal_oracle, hardy_exact


# -- grid and hyponormality

def test_polydisc_grid_is_diagonal_of_projections():
    g = an.block_grid(M.hardy_polydisc(2, 6))
    assert g.entries[0][1].is_zero(1e-15) and g.entries[1][0].is_zero(1e-15)
    B = g.entries[0][0]
    for k in sorted(B.valid):
        # P (x) I: projection onto alpha_1 = 0
        diag = [1.0 if a[0] == 0 else 0.0 for a in B.space.labels(k)]
        assert np.allclose(B.valid_block(k), np.diag(diag))


def test_hardy_grid_entry():
    g = an.block_grid(M.hardy_ball(2, 6))
    assert g.entries[0][0].valid_block(0)[0, 0] == pytest.approx(0.5)
    assert g.hermitian_defect() <= 1e-15


def test_non_commuting_input_rejected():
    A = np.array([[0, 1], [0, 0]], dtype=complex)
    with pytest.raises(ValidationError):
        an.block_grid([A, A.T])


@pytest.mark.parametrize("model,ok", [
    (M.hardy_ball(2, 8), True), (M.hardy_polydisc(2, 8), True), (M.bergman_ball(2, 1.5, 8), False),
    (M.bergman_ball(2, 2.5, 8), True), (M.bergman_ball(3, 2.5, 6), False),
], ids=repr)
def test_hyponormality(model, ok):
    assert (an.hyponormality_check(an.block_grid(model)).status == an.PASS) is ok


def test_mixed_grading_is_necessary_only():
    v = an.hyponormality_check(an.block_grid(M.symmetrized_bidisc(8)))
    assert v.status == an.NECESSARY_ONLY and not v.details["exact"]


def test_jordan_grid_fails_and_projective_witness():
    J = M.dnormal_jordan([1, 2j], [0.5, 3], 1, 1)
    assert an.hyponormality_check(an.block_grid(J)).status == an.FAIL
    p = an.projective_hyponormality_sample(J, trials=5, seed=1)
    assert p.status == an.FAIL
    assert np.allclose(p.details["failures"][0]["alpha"], [1, 0])


def test_projective_passes_for_joint_and_normal():
    assert an.projective_hyponormality_sample(M.hardy_ball(2, 6), 10, 3).status == an.PASS
    normals = M.random_commuting_normals(3, 2, 0)
    assert an.projective_hyponormality_sample(list(normals), 10, 3).status == an.PASS
    assert an.projective_hyponormality_sample(M.symmetrized_bidisc(4), 3, 0).status == an.NOT_APPLICABLE


# -- dEt and GC

def test_hardy_d2_eigenvalues():
    D = an.det_operator(M.hardy_ball(2, 4))
    assert D.valid_block(0)[0, 0] == pytest.approx(float(HARDY2_DEGREE0), abs=1e-15)
    assert np.allclose(np.diag(D.valid_block(1)), float(HARDY2_DEGREE1), atol=1e-15)


@pytest.mark.parametrize("d,K", [(2, 6), (3, 4)])
def test_det_matches_dense_oracle(d, K):
    diag, pos, Dd = det_diagonal_oracle(d, K, lambda i, a: math.sqrt((a[i] + 1) / (sum(a) + d)), margin=3)
    D = an.det_operator(M.hardy_ball(d, K))
    for k in range(K + 1):
        labels = D.space.labels(k)
        idx = [pos[a] for a in labels]
        assert np.allclose(D.valid_block(k), Dd[np.ix_(idx, idx)], atol=1e-14)
        for a in labels:
            assert diag[a] == pytest.approx(float(hardy_exact(d, k)), abs=1e-14)


def test_ellipsoid_chi_matches_dense_oracle():
    lam = 4

    def w(i, a):
        s = a[0] + 2 * a[1] + lam
        return math.sqrt((a[0] + 1) / s) if i == 0 else math.sqrt((2 * a[1] + 2) * (2 * a[1] + 3) / (s * (s + 1)))

    diag, _, _ = det_diagonal_oracle(2, 8, w, (1, 2), margin=4)
    m = M.ellipsoid_bergman(lam, 8)
    for a, v in diag.items():
        assert m.det_eigenvalue(a) == pytest.approx(v, abs=1e-13)
    assert m.det_eigenvalue((0, 0)) == pytest.approx(3 / 20)


@pytest.mark.parametrize("model", [
    M.hardy_ball(2, 8), M.hardy_ball(3, 5), M.spherical_shift(2, "ratio(k+1,k+2)", 8), M.hardy_polydisc(3, 4),
    M.ellipsoid_bergman(4, 10), M.bergman_ball(2, 1.5, 8), M.symmetrized_bidisc(6), M.symmetrized_bidisc(6, True),
    M.tensor_hash(M.hardy_ball(2, 5), M.unilateral_shift(5)),
], ids=repr)
def test_route_agreement_models(model):
    v = an.route_agreement(model)
    assert v.status == an.PASS, v.details


def test_closed_form_capability():
    with pytest.raises(CapabilityError):
        an.det_operator(M.symmetrized_bidisc(4), "CLOSED_FORM")
    with pytest.raises(CapabilityError):
        an.det_operator(M.random_commuting_tuple(3, 2, 0), "CLOSED_FORM")


def test_gc_truncation_error_for_short_window():
    ops = M.hardy_ball(2, 2).operators(2)
    with pytest.raises(TruncationError):
        an.gc_operator(ops).require_valid(range(3))


def test_normal_tuple_gc_vanishes():
    normals = M.random_commuting_normals(4, 3, 2)
    assert linalg.operator_norm(an.gc_operator(list(normals))) <= 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 3))
def test_det_equals_gc_random_tuples(seed, d):
    tup = M.random_commuting_tuple(4, d, seed)
    D = an.det_operator(tup, "LAPLACE")
    G = an.gc_operator(tup)
    assert linalg.operator_norm(D - G) <= 1e-10 * (1 + linalg.operator_norm(G))
    assert linalg.operator_norm(D - an.det_operator(tup, "PRODUCT")) <= 1e-10 * (1 + linalg.operator_norm(D))
    assert linalg.rel_distance(D, dense_det(list(tup))) <= 1e-12
    assert linalg.rel_distance(G, dense_gc(list(tup))) <= 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_gc_self_adjoint_for_arbitrary_tuples(seed, d):
    rng = np.random.default_rng(seed)
    mats = [linalg.random_matrix(3, rng) for _ in range(d)]
    G = an.gc_operator(mats)
    assert linalg.hermitian_defect(G) <= 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_det_unitary_covariance(seed):
    tup = M.random_commuting_tuple(4, 2, seed)
    U = linalg.random_unitary(4, np.random.default_rng(seed + 1))
    lhs = an.det_operator(tup.conjugate_by(U))
    rhs = U @ an.det_operator(tup) @ U.conj().T
    assert linalg.rel_distance(lhs, rhs) <= 1e-10
    assert linalg.hermitian_defect(lhs) <= 1e-10


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 3))
def test_dnormal_det_zero(seed, d):
    tup = M.random_dnormal_tuple(2, d, seed)
    assert linalg.operator_norm(an.det_operator(tup)) <= 1e-12
    assert linalg.operator_norm(an.gc_operator(tup)) <= 1e-12


# -- traces

def test_hardy_trace_small_windows():
    assert an.trace_series(M.hardy_ball(2, 0), 0).total == pytest.approx(1 / 2)
    assert an.trace_series(M.hardy_ball(2, 1), 1).total == pytest.approx(2 / 3)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("N", [0, 3, 11, 20])
def test_telescoping(d, N):
    ts = an.trace_series(M.hardy_ball(d, N), N, use_closed_form=True)
    assert ts.closed_form_match
    assert ts.partial_sums == sorted(ts.partial_sums)


def test_partial_sums_are_prefix_sums():
    ts = an.trace_series(M.ellipsoid_bergman(4, 12), 12)
    assert np.allclose(np.cumsum([e["trace"] for e in ts.entries]), ts.partial_sums)


def test_polydisc_and_symmetrized_traces():
    assert an.trace_series(M.hardy_polydisc(2, 4), 4).total == pytest.approx(2, abs=1e-12)
    assert an.trace_series(M.symmetrized_bidisc(5, True), 5).total == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("model", [
    M.hardy_ball(2, 10), M.hardy_ball(3, 8), M.spherical_shift(2, "ratio(k+1,k+2)", 10),
    M.spherical_shift(3, [0.2, 0.5, 0.5, 0.9, 0.95, 1, 1, 1, 1, 1, 1, 1], 8),
    M.ellipsoid_bergman(4, 16), M.ellipsoid_bergman(6, 12), M.hardy_polydisc(2, 6),
    M.symmetrized_bidisc(8, True),
], ids=repr)
def test_psd_persistence(model):
    assert an.trace_series(model).min_eigenvalue >= -1e-12


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(0.05, 1.0), min_size=9, max_size=9), st.integers(2, 3))
def test_monotone_delta_comparison(raw, d):
    delta = sorted(raw)
    m = M.spherical_shift(d, delta, 7)
    for k in range(1, 8):
        lhs = m.det_eigenvalue((k,) + (0,) * (d - 1))
        assert lhs >= delta[k - 1] ** (2 * d) * M.hardy_ball_eigenvalue(d, k) - 1e-14
        assert lhs >= -1e-14


def test_trace_window_error():
    D = an.det_operator(M.hardy_ball(2, 3), N=3)
    with pytest.raises(TruncationError):
        D.valid_block(D.N)


def test_trace_norm_divergence_flag():
    g = an.block_grid(M.hardy_ball(2, 41))
    s = an.trace_norm_series(g.entries[0][0], range(41))
    assert s["divergent"] and s["increments"][-1] > s["increments"][0] / 2


# -- BS class

def test_bs_hardy_d2():
    rep = an.bs_class_check(M.hardy_ball(2, 12), range(1, 13))
    assert rep.theta_min == 1 and rep.condition_i == an.PASS and rep.condition_ii == an.PASS
    assert rep.covariance["holds"]
    for r in rep.rank_records:
        assert r["rank"] == math.comb(r["N"] + 1, 1)


def test_bs_ellipsoid_theta():
    assert an.bs_class_check(M.ellipsoid_bergman(4, 10), range(1, 11)).theta_min <= 2


def test_bs_polydisc_theta_grows():
    rep = an.bs_class_check(M.hardy_polydisc(2, 8), range(1, 9))
    assert rep.theta_min > 2


def test_bs_needs_shift_model():
    with pytest.raises(CapabilityError):
        an.bs_class_check(M.symmetrized_bidisc(4), [1])


# -- bounds and inequalities

def test_trace_bounds():
    v = an.trace_bound_check(M.hardy_ball(2, 20))
    assert v.status == an.PASS and v.details["bound"] == 2
    assert v.details["volume_bound"] == pytest.approx(1)
    p = an.trace_bound_check(M.hardy_polydisc(2, 5))
    assert p.details["partial_sum"] == pytest.approx(p.details["bound"])
    assert an.trace_bound_check(M.bergman_ball(2, 1.5, 4)).status == an.NOT_APPLICABLE


def test_tensor_identity():
    v = an.tensor_trace_check(M.unilateral_shift(6), M.unilateral_shift(6), 6, factor=2)
    assert v.status == an.PASS and v.details["partial_sum"] == pytest.approx(2)
    w = an.tensor_trace_check(M.hardy_ball(2, 6), M.unilateral_shift(6), 6)
    assert w.status == an.PASS and w.details["factor"] == 3
    assert w.details["identity_defect_factor_2"] > 0.1


def test_simpletensor_inequalities():
    st_ = M.simpletensor(M.random_commuting_normals(4, 3, 11), 3)
    v = an.commutator_trace_inequalities(st_)
    assert v.status == an.PASS
    for r in v.details["tensor_bound"]:
        assert r["lhs"] == pytest.approx(r["exact"])


def test_divergent_commutators_not_applicable():
    assert an.commutator_trace_inequalities(M.hardy_ball(2, 40)).status == an.NOT_APPLICABLE
    assert an.commutator_trace_inequalities(M.hardy_polydisc(2, 20)).status == an.NOT_APPLICABLE


def test_finite_inequalities():
    v = an.commutator_trace_inequalities(M.random_commuting_tuple(4, 3, 0))
    assert v.status == an.PASS


@pytest.mark.parametrize("n", [1, 2, 3])
def test_amitsur_levitzki(n):
    v = an.amitsur_levitzki_check(n, 10, 7)
    assert v.status == an.PASS
    if n == 2:
        assert v.details["sharpness_probe_min_norm"] > 1e-3
