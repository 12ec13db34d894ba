"""Floating-point cross-check for the exact eigenvalue test.

For each ``lam`` on a grid this computes, in floats,

    margin(lam) = min over unit xi of max_j  xi . (y_j - lam x_j)

which is positive exactly when the columns of ``Y - lam X`` positively span
R^n. The minimum is found by enumerating stationary points: at a minimiser
the active columns S tie, and xi minimises xi . m_s on the unit sphere of
the orthogonal complement of span{m_i - m_s : i in S}. Every candidate is a
genuine unit vector, so the result is an upper bound; it is exact except in
degenerate ties, where the margin is additionally capped at 0.

Nothing here shares code with the exact path (no cone conversion, no
minors).
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

DEGENERATE_TOL = 1e-9


def pencil_stack(X: np.ndarray, Y: np.ndarray, lams: np.ndarray) -> np.ndarray:
    """Array of shape (L, n, T) holding Y - lam X for each lam."""
    return Y[None, :, :] - lams[:, None, None] * X[None, :, :]


def fullness_margin(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(upper_bound, capped) margins for a stack M of shape (L, n, T)."""
    L, n, T = M.shape
    best = np.full(L, np.inf)
    cap = np.full(L, np.inf)
    if T == 0:
        return np.zeros(L), np.zeros(L)
    eye = np.eye(n)[None, :, :]
    for k in range(1, n + 1):
        for S in combinations(range(T), k):
            ms = M[:, :, S[0]]
            if k > 1:
                D = M[:, :, list(S[1:])] - ms[:, :, None]
                P = eye - D @ np.linalg.pinv(D)
            else:
                P = np.broadcast_to(eye, (L, n, n))
            v = np.einsum("lij,lj->li", P, ms)
            norm = np.linalg.norm(v, axis=1)
            ok = norm > DEGENERATE_TOL
            cap = np.where(ok, cap, 0.0)
            safe = np.where(ok, norm, 1.0)
            for sgn in (1.0, -1.0):
                xi = sgn * v / safe[:, None]
                vals = np.einsum("li,lij->lj", xi, M).max(axis=1)
                best = np.where(ok, np.minimum(best, vals), best)
            # degenerate ties: also probe the complement's spanning directions
            if not ok.all():
                for c in range(n):
                    col = P[:, :, c]
                    cn = np.linalg.norm(col, axis=1)
                    good = (~ok) & (cn > DEGENERATE_TOL)
                    csafe = np.where(good, cn, 1.0)
                    for sgn in (1.0, -1.0):
                        xi = sgn * col / csafe[:, None]
                        vals = np.einsum("li,lij->lj", xi, M).max(axis=1)
                        best = np.where(good, np.minimum(best, vals), best)
    return best, np.minimum(best, cap)


def sweep(X, Y, lam_max: float, step: float = 1e-3, lam_min: float = 0.0):
    """Grid of lam values with their (upper_bound, capped) margins."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    lams = np.arange(lam_min, lam_max + step / 2, step)
    upper, capped = fullness_margin(pencil_stack(X, Y, lams))
    return lams, upper, capped
