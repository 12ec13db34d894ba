"""Cross-check the exact eigenvalue test against a floating-point sweep.

    python3 scripts/eigen_sweep_check.py --cases 200 --max-n 3 --max-t 6 --seed 1
"""
import argparse
import random
import time
from dataclasses import dataclass

import numpy as np

from coneproc.analysis import eigen_free, verify_witness
from coneproc.linalg import Mat
from coneproc.sweep import sweep


@dataclass(frozen=True)
class SweepConfig:
    cases: int = 100
    max_n: int = 3
    max_t: int = 6
    entry_bound: int = 3
    step: float = 1e-3
    margin: float = 1e-6
    seed: int = 77


def interval_conclusions(cert):
    crit = [float(p) for p in cert.critical_points]
    for pt, full in zip(cert.tested_points, cert.tested_full):
        if not pt.is_rational or any(p.is_rational and p.value == pt.value for p in cert.critical_points):
            continue
        x = float(pt.value)
        yield (max([a for a in crit if a < x], default=-np.inf),
               min([a for a in crit if a > x], default=np.inf), full)


def run(cfg: SweepConfig) -> int:
    rnd = random.Random(cfg.seed)
    bad = 0
    t0 = time.perf_counter()
    for case in range(cfg.cases):
        n, T = rnd.randint(1, cfg.max_n), rnd.randint(1, cfg.max_t)
        rows = lambda: [[rnd.randint(-cfg.entry_bound, cfg.entry_bound) for _ in range(T)] for _ in range(n)]  # noqa: E731
        X, Y = Mat.from_rows(rows()), Mat.from_rows(rows())
        cert = eigen_free(X, Y)
        if cert.outcome == "WITNESS":
            xi = cert.witness_xi if cert.witness_xi is not None else cert.witness_xi_poly
            if not verify_witness(X, Y, cert.witness_lambda, xi):
                bad += 1
                print(f"case {case}: witness does not verify")
        intervals = list(interval_conclusions(cert))
        if all(p.is_zero() for p in cert.minors.values()):
            intervals = [(-np.inf, np.inf, False)]
        top = max([float(p) for p in cert.critical_points], default=0.0) + 1.0
        lams, upper, capped = sweep(X.to_json(), Y.to_json(), top, step=cfg.step)
        for lo, hi, full in intervals:
            mask = (lams > lo) & (lams < hi)
            if full and (upper[mask] < -cfg.margin).any() or not full and (capped[mask] > cfg.margin).any():
                bad += 1
                print(f"case {case}: disagreement on ({lo:.6g}, {hi:.6g}), exact full={full}")
    print(f"{cfg.cases} cases, {bad} problems, {time.perf_counter() - t0:.1f} s")
    return 1 if bad else 0


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in SweepConfig().__dict__.items():
        p.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    return run(SweepConfig(**vars(p.parse_args())))


if __name__ == "__main__":
    raise SystemExit(main())
