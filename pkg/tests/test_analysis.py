import random
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from coneproc import analysis as an
from coneproc import cone as cn
from coneproc import process as pr
from coneproc.cone import PolyCone
from coneproc.exactnum import AlgebraicPoint, UniPoly
from coneproc.linalg import Mat, Subspace
from coneproc.sweep import sweep

X3 = Mat.from_rows([[0, 1, 0, 0], [0, 0, 1, -1]])
Y3 = Mat.from_rows([[1, 0, 0, -1], [0, 1, -1, 0]])
EX3 = pr.DataSet.from_trajectories(2, [[(0, 0), (1, 0), (0, 1), (0, -1), (-1, 0)]])
EX2 = pr.DataSet.from_pairs(1, [((0,), (1,)), ((1,), (-1,))])
lam = UniPoly.x()


def cone(*vs):
    return PolyCone.from_generators(len(vs[0]), vs)


# ------------------------------------------------------------ subspace chains


def test_yx_iteration_example3():
    r = an.linproc_forward_iterate(X3, Y3, "preimage_then_image", 2)
    assert r.subspace == Subspace.full(2)
    assert r.steps_to_stabilize == 1


def test_wz_iteration_with_two_row_hrep():
    # the two-row [Z -W] with rows (1,0,0,0) and (1,0,0,-1)
    Z = Mat.from_rows([[1, 0], [1, 0]])
    W = Mat.from_rows([[0, 0], [0, 1]])
    r = an.linproc_forward_iterate(W, Z, "image_then_preimage", 2)
    assert r.subspace == Subspace.span(2, [(1, 0)])


def test_wz_iteration_example2():
    Z, W = Mat.from_rows([[1], [1]]), Mat.from_rows([[0], [-1]])
    r = an.linproc_forward_iterate(W, Z, "image_then_preimage", 1)
    assert r.subspace.dim == 0


def test_backward_iteration_is_monotone():
    r = an.linproc_backward_iterate(Y3, X3, "preimage_then_image", 2)
    dims = [s.dim for s in r.chain]
    assert dims == sorted(dims)
    assert all(a <= b for a, b in zip(r.chain, r.chain[1:]))


def test_nullcontrollable_linear_examples():
    ident = pr.LinearProcess(2, Subspace.span(4, [(1, 0, 1, 0), (0, 1, 0, 1)]))
    assert an.nullcontrollable_subspace(ident).subspace.dim == 0
    zero_map = pr.LinearProcess(2, Subspace.span(4, [(1, 0, 0, 0), (0, 1, 0, 0)]))
    r = an.nullcontrollable_subspace(zero_map)
    assert r.subspace == Subspace.full(2) and r.steps_to_stabilize == 1


# --------------------------------------------------------------- assumptions


def test_assumption_13_examples():
    ok2, _ = an.check_assumption_13(pr.from_data(EX2))
    assert not ok2
    strict = pr.ConvexProcess.from_generators(1, [(1, 0), (-1, 0)])
    assert an.check_assumption_13(strict)[0]
    # a two-row H-rep would give lineality R x {0}; the data cone is
    # pointed, so R_- = {0} and only the half-plane domain remains
    ok3, ev = an.check_assumption_13(pr.from_data(EX3))
    assert not ok3 and ev["R_minus"]["basis"] == []


def test_assumption_14_examples():
    subs = an.process_subspaces(pr.from_data(EX3))
    assert subs["R_plus"].subspace == Subspace.full(2)
    ok, ev = an.check_assumption_14(pr.from_data(EX3))
    assert ev["R_plus_full"] is True
    assert ok == ev["image_plus_N_minus_full"]
    assert not an.check_assumption_14(pr.ConvexProcess.zero(2))[0]
    assert an.check_assumption_14(pr.ConvexProcess.full(2))[0]


# ---------------------------------------------------------------- eigen test


def test_eigen_example3_nonneg():
    cert = an.eigen_free(X3, Y3, "nonneg")
    assert cert.outcome == "FREE"
    assert [c.value for c in cert.critical_points] == [0, 1]
    assert [p.value for p in cert.tested_points] == [0, Fraction(1, 2), 1, 2]
    assert all(cert.tested_full)
    minors = {str(p) for p in cert.minors.values()}
    for expected in (UniPoly([1]), -lam - 1, lam, lam * lam + lam, 1 - lam * lam):
        assert str(expected) in minors


def test_eigen_example3_positive():
    cert = an.eigen_free(X3, Y3, "positive")
    assert cert.outcome == "FREE"
    assert [c.value for c in cert.critical_points] == [1]


def test_eigen_one_dimensional_witnesses():
    cert = an.eigen_free(Mat.from_rows([[0]]), Mat.from_rows([[-1]]))
    assert cert.outcome == "WITNESS" and cert.witness_lambda.value == 0
    assert cert.witness_xi == (1,)
    cert = an.eigen_free(Mat.from_rows([[1]]), Mat.from_rows([[1]]))
    assert cert.outcome == "WITNESS"
    assert an.verify_witness(Mat.from_rows([[1]]), Mat.from_rows([[1]]), cert.witness_lambda, cert.witness_xi)
    # float cross-check: one column never positively spans R
    _, upper, _ = sweep([[1]], [[1]], 3.0)
    assert (upper <= 1e-6).all()


def test_eigen_algebraic_witness():
    X = Mat.from_rows([[-2, 1, -2], [1, -1, -1]])
    Y = Mat.from_rows([[0, -2, 2], [2, 1, -2]])
    cert = an.eigen_free(X, Y)
    assert cert.outcome == "WITNESS"
    w = cert.witness_lambda
    assert not w.is_rational
    assert abs(float(w) - 0.387426) < 1e-5
    assert an.verify_witness(X, Y, w, cert.witness_xi_poly)
    # float sweep: full just below the witness, not full at it
    lams, upper, _ = sweep(X.to_json(), Y.to_json(), 0.5, step=1e-3)
    assert (upper[lams < float(w) - 2e-3] > 1e-6).all()
    assert upper[np.argmin(abs(lams - float(w)))] < 1e-2


def test_verify_witness_rejects_bad_vectors():
    one = AlgebraicPoint.rational(0)
    X, Y = Mat.from_rows([[0]]), Mat.from_rows([[-1]])
    assert an.verify_witness(X, Y, one, (1,))
    assert not an.verify_witness(X, Y, one, (-1,))
    assert not an.verify_witness(X, Y, one, (0,))


def test_eigen_zero_minors_give_rank_witness():
    X = Mat.from_rows([[1, 1], [1, 1]])
    Y = Mat.from_rows([[1, 2], [1, 2]])
    cert = an.eigen_free(X, Y)
    assert cert.outcome == "WITNESS"
    assert an.verify_witness(X, Y, cert.witness_lambda, cert.witness_xi)


def test_thread_cap_does_not_change_outcome(monkeypatch):
    monkeypatch.setenv("CONEPROC_THREADS", "4")
    cert = an.eigen_free(X3, Y3)
    assert cert.outcome == "FREE" and all(cert.tested_full)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2), st.integers(1, 4), st.randoms(use_true_random=False),
       st.fractions(min_value=0, max_value=4, max_denominator=6))
def test_chirotope_agrees_with_double_description(n, T, rnd, q):
    X = Mat.from_rows([[rnd.randint(-2, 2) for _ in range(T)] for _ in range(n)])
    Y = Mat.from_rows([[rnd.randint(-2, 2) for _ in range(T)] for _ in range(n)])
    pencil = an._Pencil(X, Y)
    pt = AlgebraicPoint.rational(q)
    assert an._algebraic_full(pencil, pt) == an._rational_full(X, Y, q)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2), st.integers(1, 4), st.randoms(use_true_random=False))
def test_every_witness_verifies(n, T, rnd):
    X = Mat.from_rows([[rnd.randint(-2, 2) for _ in range(T)] for _ in range(n)])
    Y = Mat.from_rows([[rnd.randint(-2, 2) for _ in range(T)] for _ in range(n)])
    cert = an.eigen_free(X, Y, rnd.choice(["nonneg", "positive"]))
    if cert.outcome == "WITNESS":
        xi = cert.witness_xi if cert.witness_xi is not None else cert.witness_xi_poly
        assert an.verify_witness(X, Y, cert.witness_lambda, xi)
        if cert.mode == "positive":
            assert float(cert.witness_lambda) > 0


# ------------------------------------------------------------------- oracles


def test_oracle_example2():
    res = an.oracle_reach(pr.from_data(EX2))
    assert res.reached_full and len(res.chain) == 3
    assert cn.cone_equal(res.chain[1], PolyCone.orthant(1))


def test_oracles_on_sandwich_process():
    g = pr.ConvexProcess.from_generators(1, [(0, 1), (1, 1)])
    f = an.oracle_feasible(g)
    r = an.oracle_reach(g)
    nc = an.oracle_nullc(g)
    assert f.stabilized and cn.cone_equal(f.last, PolyCone.orthant(1))
    assert r.stabilized and cn.cone_equal(r.last, PolyCone.orthant(1))
    assert nc.stabilized and cn.cone_equal(nc.last, PolyCone.zero(1))
    assert cn.cone_contains(r.last, f.last)


def test_oracles_on_zero_successor_process():
    h = pr.ConvexProcess.from_generators(1, [(1, 0), (-1, 0)])
    nc = an.oracle_nullc(h)
    assert cn.is_full_cone(nc.chain[1])
    f = an.oracle_feasible(h)
    assert f.stabilized and cn.is_full_cone(f.last)
    r = an.oracle_reach(h)
    assert r.stabilized and cn.cone_equal(r.last, PolyCone.zero(1))


def test_oracles_on_zero_process():
    z = pr.ConvexProcess.zero(2)
    for res in (an.oracle_reach(z), an.oracle_nullc(z), an.oracle_feasible(z)):
        assert cn.cone_equal(res.last, PolyCone.zero(2))
        assert res.stabilized
    assert an.oracle_reach(z).fixed_at == 0
    assert an.oracle_feasible(z).fixed_at == 1


# ------------------------------------------------------------------ verdicts


def test_verdicts():
    assert an.reachability_verdict(pr.ConvexProcess.full(2)).status == "HOLDS"
    assert an.nullcontrollability_verdict(pr.ConvexProcess.full(2)).status == "HOLDS"
    g = an.reachability_verdict(pr.ConvexProcess.from_generators(1, [(0, 1), (1, 1)]))
    assert g.status == "ASSUMPTIONS_NOT_MET"
    assert cn.cone_equal(g.oracles["reach"].last, PolyCone.orthant(1))
    h = an.nullcontrollability_verdict(pr.ConvexProcess.from_generators(1, [(1, 0), (-1, 0)]))
    assert cn.is_full_cone(h.oracles["nullc"].chain[1])


def test_orthogonal_process_law():
    rnd = random.Random(7)
    for _ in range(20):
        n = rnd.randint(1, 3)
        vs = [[rnd.randint(-2, 2) for _ in range(2 * n)] for _ in range(rnd.randint(0, 2 * n))]
        assert an.orthogonal_process_check(pr.LinearProcess(n, Subspace.span(2 * n, vs)))
