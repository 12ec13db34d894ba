"""Informativity of state data for reachability and null-controllability."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import cone as cn
from . import process as pr
from .analysis import (
    EigenCertificate,
    OracleResult,
    data_subspaces,
    eigen_free,
    oracle_reach,
)
from .cone import PolyCone
from .exactnum import format_rational
from .linalg import Mat, is_full, orthogonal_complement


@dataclass(frozen=True)
class DecideOptions:
    q_max: int | None = None  # oracle horizon; 2n when None
    fallback: bool = True


@dataclass
class InformativityReport:
    property: str
    verdict: str
    path: str
    reason: str
    matrices: dict
    assumption_13: dict
    subspaces: dict
    eigen: EigenCertificate | None = None
    assumption_14: dict | None = None
    oracle: OracleResult | None = None
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "property": self.property,
            "verdict": self.verdict,
            "path": self.path,
            "reason": self.reason,
            "matrices": {k: v.to_json() for k, v in self.matrices.items()},
            "assumption_13": self.assumption_13,
            "subspaces": {k: v.to_json() for k, v in self.subspaces.items()},
            "eigen": None if self.eigen is None else self.eigen.to_json(),
        }
        if self.assumption_14 is not None:
            out["assumption_14"] = self.assumption_14
        if self.oracle is not None:
            out["oracle"] = self.oracle.to_json()
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class _Common:
    """Objects shared by both decisions on one dataset."""

    def __init__(self, d: pr.DataSet):
        if d.T == 0:
            raise ValueError("dataset has no nonzero pairs")
        self.d = d
        self.h = pr.from_data(d)
        self.X, self.Y = d.X, d.Y
        self.Z, self.W = self.h.zw()
        self.subs = data_subspaces(self.X, self.Y, self.Z, self.W, d.n)
        self.dom = PolyCone.from_generators(d.n, self.X.columns())
        self.img = PolyCone.from_generators(d.n, self.Y.columns())

    def matrices(self) -> dict[str, Mat]:
        return {"X": self.X, "Y": self.Y, "Z": self.Z, "W": self.W}

    def hypothesis_13(self) -> dict:
        total = cn.cone_sum(self.dom, PolyCone.from_subspace(self.subs["R_minus"].subspace))
        return {
            "holds": cn.is_full_cone(total),
            "statement": "X R_+^T + (W^-1 Z)^n {0} = R^n",
            "domain": self.dom.to_json(),
            "R_minus": self.subs["R_minus"].subspace.to_json(),
        }

    def hypothesis_14(self) -> dict:
        r_plus = is_full(self.subs["R_plus"].subspace)
        total = cn.cone_sum(self.img, PolyCone.from_subspace(self.subs["N_minus"].subspace))
        im_full = cn.is_full_cone(total)
        return {
            "holds": r_plus and im_full,
            "statement": "(Y X^-1)^n {0} = Y R_+^T + (Z^-1 W)^n {0} = R^n",
            "R_plus_full": r_plus,
            "image_plus_N_minus_full": im_full,
            "image": self.img.to_json(),
            "N_minus": self.subs["N_minus"].subspace.to_json(),
        }


def _eigen_witness(cert: EigenCertificate) -> dict:
    w = {"kind": "eigenpair", "lambda": cert.witness_lambda.to_json()}
    if cert.witness_xi is not None:
        w["xi"] = [format_rational(x) for x in cert.witness_xi]
    else:
        w["xi_polynomials"] = [[format_rational(c) for c in p.coeffs] for p in cert.witness_xi_poly]
    return w


def decide_reachability(d: pr.DataSet, opts: DecideOptions = DecideOptions()) -> InformativityReport:
    """Is every convex process consistent with ``d`` reachable?

    Under X R_+^T + R_- = R^n the answer is exact (R_+ = R^n and no
    nonnegative eigenvalue of the dual). Otherwise, if allowed, the oracle
    iterates H_D from the origin: reaching R^n proves R(H) = R^n for every
    consistent H, since their graphs contain that of H_D.
    """
    c = _Common(d)
    hyp = c.hypothesis_13()
    report = InformativityReport(
        property="reachability", verdict="INCONCLUSIVE_ASSUMPTIONS", path="THEOREM", reason="",
        matrices=c.matrices(), assumption_13=hyp, subspaces=c.subs,
    )
    if hyp["holds"]:
        cert = eigen_free(c.X, c.Y, "nonneg")
        report.eigen = cert
        r_plus = c.subs["R_plus"].subspace
        if cert.outcome == "INDETERMINATE":
            report.verdict, report.reason = "INDETERMINATE", cert.note
        elif not is_full(r_plus):
            report.verdict, report.reason = "NOT_INFORMATIVE", "(Y X^-1)^n {0} != R^n"
            normal = orthogonal_complement(r_plus).basis[0]
            report.witness = {"kind": "reachable_subspace_normal",
                              "xi": [format_rational(x) for x in normal]}
        elif cert.outcome == "WITNESS":
            report.verdict, report.reason = "NOT_INFORMATIVE", "nonnegative eigenvalue of H_D^-"
            report.witness = _eigen_witness(cert)
        else:
            report.verdict, report.reason = "INFORMATIVE", "(Y X^-1)^n {0} = R^n and no nonnegative eigenvalue"
        return report
    report.reason = "X R_+^T + (W^-1 Z)^n {0} != R^n"
    if opts.fallback:
        orc = oracle_reach(c.h, opts.q_max)
        report.oracle = orc
        if orc.reached_full:
            report.verdict, report.path = "INFORMATIVE", "ORACLE_FALLBACK"
            report.reason = f"R(H_D) = R^n reached in {len(orc.chain) - 1} steps"
        else:
            report.reason += "; oracle did not reach R^n within the horizon"
    return report


def decide_nullcontrollability(d: pr.DataSet, opts: DecideOptions = DecideOptions()) -> InformativityReport:
    """Is every convex process consistent with ``d`` null-controllable?

    Only the exact characterization is used; when its hypotheses fail the
    verdict is INCONCLUSIVE_ASSUMPTIONS.
    """
    c = _Common(d)
    hyp13 = c.hypothesis_13()
    hyp14 = c.hypothesis_14()
    report = InformativityReport(
        property="null-controllability", verdict="INCONCLUSIVE_ASSUMPTIONS", path="THEOREM", reason="",
        matrices=c.matrices(), assumption_13=hyp13, assumption_14=hyp14, subspaces=c.subs,
    )
    if not (hyp13["holds"] and hyp14["holds"]):
        failed = [h["statement"] for h in (hyp13, hyp14) if not h["holds"]]
        report.reason = "failed: " + "; ".join(failed)
        return report
    cert = eigen_free(c.X, c.Y, "positive")
    report.eigen = cert
    if cert.outcome == "INDETERMINATE":
        report.verdict, report.reason = "INDETERMINATE", cert.note
    elif cert.outcome == "WITNESS":
        report.verdict, report.reason = "NOT_INFORMATIVE", "positive eigenvalue of H_D^-"
        report.witness = _eigen_witness(cert)
    else:
        report.verdict, report.reason = "INFORMATIVE", "no positive eigenvalue of H_D^-"
    return report


def consistency_check(d: pr.DataSet, h: pr.ConvexProcess) -> bool:
    """D ⊆ graph H."""
    if d.n != h.n:
        raise ValueError(f"data in R^{d.n} but process on R^{h.n}")
    return pr.consistent(h, d.pairs)
