"""Reachability and null-controllability analysis of polyhedral convex processes.

Three kinds of evidence are produced here:

* subspace iterations for the minimal and maximal linear processes,
* an exact decision of whether ``xi^T (Y - lam X) <= 0`` has a nonzero
  solution for some ``lam`` in ``[0, inf)`` or ``(0, inf)``,
* finite-horizon oracles that iterate the process on cones.

The eigenvalue test rests on one observation: on any open interval of
``lam`` containing no root of a nonzero n x n minor of ``Y - lam X``, every
such minor keeps its sign, so the chirotope of the columns is constant and
so is the fullness of their conic hull. Testing each critical point and one
rational point per interval between them therefore decides the whole range.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from . import cone as cn
from . import process as pr
from .cone import PolyCone
from .exactnum import (
    AlgebraicPoint,
    RefinementCapError,
    UniPoly,
    common_real_roots,
    format_rational,
    interpolate,
    rational_above,
    rational_below,
    rational_between,
    sign,
    sign_at,
)
from .linalg import (
    DimensionError,
    Mat,
    Subspace,
    determinant,
    is_full,
    map_image,
    orthogonal_complement,
    preimage,
)

# ----------------------------------------------------------- subspace chains


@dataclass(frozen=True)
class LinIterResult:
    subspace: Subspace
    steps_to_stabilize: int
    chain: tuple

    def to_json(self) -> dict:
        return {
            "subspace": self.subspace.to_json(),
            "steps_to_stabilize": self.steps_to_stabilize,
            "chain_dims": [s.dim for s in self.chain],
        }


def iterate_from(start: Subspace, step: Callable[[Subspace], Subspace], max_steps: int) -> LinIterResult:
    """Apply ``step`` until the chain stops changing (at most ``max_steps`` times)."""
    chain = [start]
    for _ in range(max_steps):
        nxt = step(chain[-1])
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return LinIterResult(chain[-1], len(chain) - 1, tuple(chain))


def linproc_iterate(P: Mat, Q: Mat, variant: str, n: int) -> LinIterResult:
    """Iterate from {0} in R^n.

    ``variant="preimage_then_image"``: S -> Q (P^-1 S)   (e.g. Y X^-1, X Y^-1)
    ``variant="image_then_preimage"``: S -> P^-1 (Q S)   (e.g. W^-1 Z, Z^-1 W)
    """
    if variant == "preimage_then_image":
        if P.nrows != n or Q.nrows != n or P.cols != Q.cols:
            raise DimensionError("P and Q must both be n x T")
        step = lambda s: map_image(Q, preimage(P, s))  # noqa: E731
    elif variant == "image_then_preimage":
        if P.cols != n or Q.cols != n or P.nrows != Q.nrows:
            raise DimensionError("P and Q must both be l x n")
        step = lambda s: preimage(P, map_image(Q, s))  # noqa: E731
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return iterate_from(Subspace.zero(n), step, n)


def linproc_forward_iterate(P: Mat, Q: Mat, variant: str, n: int) -> LinIterResult:
    """Reachable subspace: (Y X^-1)^n {0} with (X, Y), or (W^-1 Z)^n {0} with (W, Z)."""
    return linproc_iterate(P, Q, variant, n)


def linproc_backward_iterate(P: Mat, Q: Mat, variant: str, n: int) -> LinIterResult:
    """Null-controllable subspace: (X Y^-1)^n {0} with (Y, X), or (Z^-1 W)^n {0} with (Z, W)."""
    return linproc_iterate(P, Q, variant, n)


def data_subspaces(X: Mat, Y: Mat, Z: Mat, W: Mat, n: int) -> dict[str, LinIterResult]:
    """R_-, R_+, N_-, N_+ of H_D from the data matrices."""
    return {
        "R_minus": linproc_forward_iterate(W, Z, "image_then_preimage", n),
        "R_plus": linproc_forward_iterate(X, Y, "preimage_then_image", n),
        "N_minus": linproc_backward_iterate(Z, W, "image_then_preimage", n),
        "N_plus": linproc_backward_iterate(Y, X, "preimage_then_image", n),
    }


def reachable_subspace(L: pr.LinearProcess) -> LinIterResult:
    """R(L) = L^n(0)."""
    return iterate_from(Subspace.zero(L.n), L.apply, L.n)


def nullcontrollable_subspace(L: pr.LinearProcess) -> LinIterResult:
    """N(L) = (L^-1)^n(0)."""
    inv = L.inverse()
    return iterate_from(Subspace.zero(L.n), inv.apply, L.n)


def feasible_subspace(L: pr.LinearProcess) -> LinIterResult:
    """F(L) = L^-n(R^n); the chain is non-increasing."""
    inv = L.inverse()
    return iterate_from(Subspace.full(L.n), inv.apply, L.n)


def process_subspaces(h: pr.ConvexProcess) -> dict[str, LinIterResult]:
    """R_-, R_+, N_-, N_+ from the lineality space and span of the graph."""
    lo, hi = pr.minimal_linear(h), pr.maximal_linear(h)
    return {
        "R_minus": reachable_subspace(lo),
        "R_plus": reachable_subspace(hi),
        "N_minus": nullcontrollable_subspace(lo),
        "N_plus": nullcontrollable_subspace(hi),
    }


# -------------------------------------------------------------- assumptions


def check_assumption_13(h: pr.ConvexProcess, subspaces: dict | None = None) -> tuple[bool, dict]:
    """dom H + R_- = R^n."""
    subs = subspaces or process_subspaces(h)
    dom = pr.domain(h)
    total = cn.cone_sum(dom, PolyCone.from_subspace(subs["R_minus"].subspace))
    ok = cn.is_full_cone(total)
    return ok, {"holds": ok, "domain": dom.to_json(), "R_minus": subs["R_minus"].subspace.to_json()}


def check_assumption_14(h: pr.ConvexProcess, subspaces: dict | None = None) -> tuple[bool, dict]:
    """R_+ = im H + N_- = R^n."""
    subs = subspaces or process_subspaces(h)
    r_plus_full = is_full(subs["R_plus"].subspace)
    img = pr.image_set(h)
    total = cn.cone_sum(img, PolyCone.from_subspace(subs["N_minus"].subspace))
    im_full = cn.is_full_cone(total)
    ok = r_plus_full and im_full
    return ok, {
        "holds": ok,
        "R_plus_full": r_plus_full,
        "image_plus_N_minus_full": im_full,
        "image": img.to_json(),
        "N_minus": subs["N_minus"].subspace.to_json(),
    }


# ------------------------------------------------------------ eigen test


def pencil_minor(X: Mat, Y: Mat, rows: Sequence[int], cols: Sequence[int]) -> UniPoly:
    """det of the (rows, cols) submatrix of Y - lam X as a polynomial in lam."""
    k = len(rows)
    if k == 0:
        return UniPoly([1])
    pts = []
    for t in range(k + 1):
        lam = Fraction(t)
        m = [[Y.rows[i][j] - lam * X.rows[i][j] for j in cols] for i in rows]
        pts.append((lam, determinant(m)))
    return interpolate(pts)


def pencil_at(X: Mat, Y: Mat, lam: Fraction) -> list[tuple]:
    """Columns of Y - lam X."""
    return [tuple(y - lam * x for x, y in zip(xc, yc)) for xc, yc in zip(X.columns(), Y.columns())]


def _perm_sign(S: Sequence[int], j: int) -> int:
    """Sign of the permutation sorting (S..., j) where S is sorted."""
    return -1 if sum(1 for s in S if s > j) % 2 else 1


def full_by_signs(signs: dict, n: int, T: int) -> bool:
    """Whether the columns positively span R^n, from the signs of all n x n minors.

    Full iff some minor is nonzero and every (n-1)-subset S of columns either
    spans no hyperplane with the others or has columns strictly on both sides.
    """
    if not any(signs.values()):
        return False
    for S in combinations(range(T), n - 1):
        seen = set()
        for j in range(T):
            if j in S:
                continue
            key = tuple(sorted(S + (j,)))
            s = signs[key] * _perm_sign(S, j)
            if s:
                seen.add(s)
        if len(seen) == 1:
            return False
    return True


@dataclass
class EigenCertificate:
    mode: str
    outcome: str
    critical_points: list = field(default_factory=list)
    tested_points: list = field(default_factory=list)
    tested_full: list = field(default_factory=list)
    witness_lambda: AlgebraicPoint | None = None
    witness_xi: tuple | None = None
    witness_xi_poly: tuple | None = None
    minors: dict = field(default_factory=dict)
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "outcome": self.outcome,
            "critical_points": [p.to_json() for p in self.critical_points],
            "tested_points": [
                {"lambda": p.to_json(), "full": f} for p, f in zip(self.tested_points, self.tested_full)
            ],
        }
        if self.witness_lambda is not None:
            w = {"lambda": self.witness_lambda.to_json()}
            if self.witness_xi is not None:
                w["xi"] = [format_rational(x) for x in self.witness_xi]
            if self.witness_xi_poly is not None:
                w["xi_polynomials"] = [[format_rational(c) for c in p.coeffs] for p in self.witness_xi_poly]
            out["witness"] = w
        if self.note:
            out["note"] = self.note
        return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CONEPROC_THREADS", "1")))
    except ValueError:
        return 1


class _Pencil:
    """Minor polynomials of Y - lam X, computed on demand."""

    def __init__(self, X: Mat, Y: Mat):
        self.X, self.Y = X, Y
        self.n, self.T = X.shape
        self._minors: dict = {}

    def minor(self, rows: tuple, cols: tuple) -> UniPoly:
        key = (rows, cols)
        if key not in self._minors:
            self._minors[key] = pencil_minor(self.X, self.Y, rows, cols)
        return self._minors[key]

    def maximal_minors(self) -> dict:
        rows = tuple(range(self.n))
        return {cols: self.minor(rows, cols) for cols in combinations(range(self.T), self.n)}


def _rational_full(X: Mat, Y: Mat, lam: Fraction) -> bool:
    n = X.nrows
    return cn.is_full_cone(PolyCone.from_generators(n, pencil_at(X, Y, lam)))


def _rational_witness(X: Mat, Y: Mat, lam: Fraction) -> tuple:
    n = X.nrows
    pol = cn.polar(PolyCone.from_generators(n, pencil_at(X, Y, lam)), "negative").canonical()
    return pol.generators[0]


def _algebraic_full(pencil: _Pencil, pt: AlgebraicPoint) -> bool:
    signs = {cols: sign_at(p, pt) for cols, p in pencil.maximal_minors().items()}
    return full_by_signs(signs, pencil.n, pencil.T)


def _algebraic_witness(pencil: _Pencil, pt: AlgebraicPoint) -> tuple:
    """xi(lam) as polynomials with xi(pt) != 0 and xi(pt)^T (Y - pt X) <= 0."""
    n, T = pencil.n, pencil.T
    all_rows = tuple(range(n))
    signs = {cols: sign_at(p, pt) for cols, p in pencil.maximal_minors().items()}
    if any(signs.values()):
        for S in combinations(range(T), n - 1):
            seen = set()
            for j in range(T):
                if j not in S:
                    s = signs[tuple(sorted(S + (j,)))] * _perm_sign(S, j)
                    if s:
                        seen.add(s)
            if len(seen) == 1:
                s = seen.pop()
                xi = []
                for i in range(n):
                    rows = tuple(r for r in all_rows if r != i)
                    cof = pencil.minor(rows, S) * (1 if (i + n - 1) % 2 == 0 else -1)
                    xi.append(cof * (-s))
                return tuple(xi)
        raise AssertionError("no separating hyperplane found at a non-full point")
    # rank-deficient: left-kernel vector from a maximal nonvanishing minor
    best = ((), ())
    for k in range(n - 1, 0, -1):
        found = None
        for R in combinations(all_rows, k):
            for C in combinations(range(T), k):
                if sign_at(pencil.minor(R, C), pt) != 0:
                    found = (R, C)
                    break
            if found:
                break
        if found:
            best = found
            break
    R, C = best
    i = next(r for r in all_rows if r not in R)
    K = tuple(sorted(R + (i,)))
    r = len(R)
    xi = [UniPoly() for _ in range(n)]
    for pos, k in enumerate(K):
        rows = tuple(x for x in K if x != k)
        xi[k] = pencil.minor(rows, C) * (1 if (pos + r) % 2 == 0 else -1)
    return tuple(xi)


def verify_witness(X: Mat, Y: Mat, lam: AlgebraicPoint, xi: Sequence) -> bool:
    """Exact check that xi != 0 and xi^T (Y - lam X) <= 0.

    ``xi`` holds rationals (rational lam) or polynomials in lam.
    """
    n, T = X.shape
    if lam.is_rational and not any(isinstance(v, UniPoly) for v in xi):
        xi = [Fraction(v) for v in xi]
        if not any(xi):
            return False
        return all(
            sum(xi[i] * (Y.rows[i][j] - lam.value * X.rows[i][j]) for i in range(n)) <= 0
            for j in range(T)
        )
    polys = [v if isinstance(v, UniPoly) else UniPoly([v]) for v in xi]
    if all(sign_at(p, lam) == 0 for p in polys):
        return False
    for j in range(T):
        col = UniPoly()
        for i in range(n):
            col = col + polys[i] * UniPoly([Y.rows[i][j], -X.rows[i][j]])
        if sign_at(col, lam) > 0:
            return False
    return True


def eigen_free(Xm: Mat, Ym: Mat, mode: str = "nonneg") -> EigenCertificate:
    """Decide whether xi^T (Y - lam X) <= 0 forces xi = 0 for every lam in range.

    ``mode="nonneg"`` covers lam >= 0, ``mode="positive"`` covers lam > 0.
    FREE means no nonzero xi exists anywhere in range; WITNESS carries the
    smallest tested lam admitting one, with such a xi.
    """
    if mode not in ("nonneg", "positive"):
        raise ValueError("mode must be 'nonneg' or 'positive'")
    if Xm.shape != Ym.shape:
        raise DimensionError("X and Y must have the same shape")
    n, T = Xm.shape
    pencil = _Pencil(Xm, Ym)
    cert = EigenCertificate(mode=mode, outcome="FREE")
    try:
        minors = pencil.maximal_minors()
        cert.minors = minors
        nonzero = [p for p in minors.values() if not p.is_zero()]
        if not nonzero:
            lam = Fraction(0 if mode == "nonneg" else 1)
            cert.outcome = "WITNESS"
            cert.tested_points = [AlgebraicPoint.rational(lam)]
            cert.tested_full = [False]
            cert.witness_lambda = cert.tested_points[0]
            cert.witness_xi = _rational_witness(Xm, Ym, lam)
            cert.note = "Y - lam X has rank < n for every lam"
            return cert
        crit = common_real_roots(nonzero, 0)
        if mode == "positive":
            crit = [c for c in crit if not (c.is_rational and c.value == 0)]
        cert.critical_points = crit
        cands: list[AlgebraicPoint] = []
        if mode == "nonneg":
            if not (crit and crit[0].is_rational and crit[0].value == 0):
                cands.append(AlgebraicPoint.rational(0))
        else:
            left = rational_below(crit[0], 0) if crit else Fraction(1)
            cands.append(AlgebraicPoint.rational(left))
        for i, c in enumerate(crit):
            cands.append(c)
            if i + 1 < len(crit):
                cands.append(AlgebraicPoint.rational(rational_between(c, crit[i + 1])))
        if crit:
            cands.append(AlgebraicPoint.rational(rational_above(crit[-1])))
        else:
            cands.append(AlgebraicPoint.rational(cands[0].value + 1))

        def test(pt: AlgebraicPoint) -> bool:
            if pt.is_rational:
                return _rational_full(Xm, Ym, pt.value)
            return _algebraic_full(pencil, pt)

        workers = _threads()
        if workers > 1 and len(cands) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(test, cands))
        else:
            results = [test(c) for c in cands]
        cert.tested_points = cands
        cert.tested_full = results
        if all(results):
            return cert
        first = results.index(False)
        pt = cands[first]
        cert.outcome = "WITNESS"
        cert.witness_lambda = pt
        if pt.is_rational:
            cert.witness_xi = _rational_witness(Xm, Ym, pt.value)
        else:
            cert.witness_xi_poly = _algebraic_witness(pencil, pt)
        return cert
    except RefinementCapError as exc:
        cert.outcome = "INDETERMINATE"
        cert.note = str(exc)
        return cert


# ---------------------------------------------------------------- oracles


@dataclass
class OracleResult:
    kind: str
    chain: list
    reached_full: bool = False
    stabilized: bool = False
    fixed_at: int | None = None

    @property
    def last(self) -> PolyCone:
        return self.chain[-1]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "chain": [c.describe() for c in self.chain],
            "chain_cones": [c.to_json() for c in self.chain],
            "reached_full": self.reached_full,
            "stabilized": self.stabilized,
            "fixed_at": self.fixed_at,
        }


def _run_chain(kind: str, step, start: PolyCone, q_max: int, stop_at_full: bool) -> OracleResult:
    res = OracleResult(kind, [start])
    for q in range(1, q_max + 1):
        nxt = step(res.chain[-1])
        if cn.cone_equal(nxt, res.chain[-1]):
            res.stabilized = True
            res.fixed_at = q - 1
            break
        res.chain.append(nxt)
        if stop_at_full and cn.is_full_cone(nxt):
            res.reached_full = True
            break
    if cn.is_full_cone(res.chain[-1]):
        res.reached_full = True
    return res


def oracle_reach(h: pr.ConvexProcess, q_max: int | None = None) -> OracleResult:
    """R_q = H(R_{q-1}) from R_0 = {0}; every R_q is contained in R(H)."""
    q_max = 2 * h.n if q_max is None else q_max
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    return _run_chain("reach", lambda s: pr.apply(h, s), PolyCone.zero(h.n), q_max, True)


def oracle_nullc(h: pr.ConvexProcess, q_max: int | None = None) -> OracleResult:
    """N_q = H^-1(N_{q-1}) from N_0 = {0}; every N_q is contained in N(H)."""
    q_max = 2 * h.n if q_max is None else q_max
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    inv = pr.inverse(h)
    return _run_chain("nullc", lambda s: pr.apply(inv, s), PolyCone.zero(h.n), q_max, True)


def oracle_feasible(h: pr.ConvexProcess, q_max: int | None = None) -> OracleResult:
    """D_q = {x : H(x) ∩ D_{q-1} != ∅} from D_0 = R^n.

    Each D_q contains F(H). A fixed point D_{q+1} = D_q gives every point of
    D_q a successor in D_q, hence an infinite trajectory, so D_q = F(H);
    ``stabilized`` then certifies the feasible set.
    """
    q_max = 2 * h.n if q_max is None else q_max
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    inv = pr.inverse(h)
    # one extra step so that a fixed point reached at q_max is recognised
    return _run_chain("feasible", lambda s: pr.apply(inv, s), PolyCone.full(h.n), q_max + 1, False)


# ---------------------------------------------------------------- verdicts


@dataclass
class AnalysisVerdict:
    property: str
    status: str
    reason: str
    evidence: dict = field(default_factory=dict)
    eigen: EigenCertificate | None = None
    oracles: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"property": self.property, "status": self.status, "reason": self.reason,
               "evidence": self.evidence}
        if self.eigen is not None:
            out["eigen"] = self.eigen.to_json()
        if self.oracles:
            out["oracles"] = {k: v.to_json() for k, v in self.oracles.items()}
        return out


def _oracle_summary(h: pr.ConvexProcess, q_max: int | None) -> dict:
    return {
        "reach": oracle_reach(h, q_max),
        "nullc": oracle_nullc(h, q_max),
        "feasible": oracle_feasible(h, q_max),
    }


def reachability_verdict(h: pr.ConvexProcess, q_max: int | None = None, with_oracles: bool = True) -> AnalysisVerdict:
    subs = process_subspaces(h)
    ok13, ev13 = check_assumption_13(h, subs)
    evidence = {"assumption_13": ev13, "R_plus": subs["R_plus"].subspace.to_json()}
    oracles = _oracle_summary(h, q_max) if with_oracles else {}
    if not ok13:
        return AnalysisVerdict("reachability", "ASSUMPTIONS_NOT_MET", "dom H + R_- != R^n", evidence, None, oracles)
    X, Y = h.graph_xy()
    eig = eigen_free(X, Y, "nonneg")
    if eig.outcome == "INDETERMINATE":
        return AnalysisVerdict("reachability", "INDETERMINATE", eig.note, evidence, eig, oracles)
    if not is_full(subs["R_plus"].subspace):
        return AnalysisVerdict("reachability", "FAILS", "R_+ != R^n", evidence, eig, oracles)
    if eig.outcome == "WITNESS":
        return AnalysisVerdict("reachability", "FAILS", "H^- has a nonnegative eigenvalue", evidence, eig, oracles)
    return AnalysisVerdict("reachability", "HOLDS", "R_+ = R^n and H^- has no nonnegative eigenvalue",
                           evidence, eig, oracles)


def nullcontrollability_verdict(h: pr.ConvexProcess, q_max: int | None = None,
                                with_oracles: bool = True) -> AnalysisVerdict:
    subs = process_subspaces(h)
    ok13, ev13 = check_assumption_13(h, subs)
    ok14, ev14 = check_assumption_14(h, subs)
    evidence = {"assumption_13": ev13, "assumption_14": ev14}
    oracles = _oracle_summary(h, q_max) if with_oracles else {}
    if oracles:
        # N_q - R_q under-approximates N(H) - R(H); fullness proves condition 2
        diff = cn.cone_sum(oracles["nullc"].last, cn.negate(oracles["reach"].last))
        evidence["N_minus_R_full_within_horizon"] = cn.is_full_cone(diff)
    if not (ok13 and ok14):
        failed = [name for name, ok in (("dom H + R_- = R^n", ok13), ("R_+ = im H + N_- = R^n", ok14)) if not ok]
        return AnalysisVerdict("null-controllability", "ASSUMPTIONS_NOT_MET",
                               "failed: " + "; ".join(failed), evidence, None, oracles)
    X, Y = h.graph_xy()
    eig = eigen_free(X, Y, "positive")
    if eig.outcome == "INDETERMINATE":
        return AnalysisVerdict("null-controllability", "INDETERMINATE", eig.note, evidence, eig, oracles)
    if eig.outcome == "WITNESS":
        return AnalysisVerdict("null-controllability", "FAILS", "H^- has a positive eigenvalue",
                               evidence, eig, oracles)
    return AnalysisVerdict("null-controllability", "HOLDS", "H^- has no positive eigenvalue",
                           evidence, eig, oracles)


def orthogonal_process_check(L: pr.LinearProcess) -> bool:
    """F(L^⊥) = R(L)^⊥ and R(L^⊥) = F(L)^⊥."""
    Lp = L.orth()
    return (feasible_subspace(Lp).subspace == orthogonal_complement(reachable_subspace(L).subspace)
            and reachable_subspace(Lp).subspace == orthogonal_complement(feasible_subspace(L).subspace))
