"""Convex processes represented by their graph cones in Q^n x Q^n.

Coordinates of a graph are ordered ``(x, y)`` with ``y in H(x)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import cone as cn
from .cone import PolyCone
from .linalg import DimensionError, Mat, Subspace, image, kernel, orthogonal_complement, vec


def _block(n: int, top_left: int, top_right: int, bottom_left: int, bottom_right: int) -> Mat:
    """2n x 2n matrix whose n x n blocks are scalar multiples of the identity."""
    rows = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            if i < n and j < n:
                c = top_left
            elif i < n:
                c = top_right
            elif j < n:
                c = bottom_left
            else:
                c = bottom_right
            row.append(Fraction(c) if (i % n) == (j % n) else Fraction(0))
        rows.append(tuple(row))
    return Mat(tuple(rows), 2 * n)


def rotation(n: int) -> Mat:
    """[[0, I], [-I, 0]], mapping (x, y) to (y, -x)."""
    return _block(n, 0, 1, -1, 0)


def swap(n: int) -> Mat:
    """[[0, I], [I, 0]], mapping (x, y) to (y, x)."""
    return _block(n, 0, 1, 1, 0)


def first_block(n: int) -> Mat:
    """[I 0]."""
    return Mat(tuple(tuple(Fraction(int(i == j)) for j in range(2 * n)) for i in range(n)), 2 * n)


def second_block(n: int) -> Mat:
    """[0 I]."""
    return Mat(tuple(tuple(Fraction(int(i + n == j)) for j in range(2 * n)) for i in range(n)), 2 * n)


@dataclass(frozen=True)
class DataSet:
    """Measured one-step pairs (x_t, y_t), deduplicated, zero pair dropped."""

    n: int
    pairs: tuple

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[Sequence, Sequence]]) -> "DataSet":
        seen = set()
        out = []
        for x, y in pairs:
            x, y = vec(x), vec(y)
            if len(x) != n or len(y) != n:
                raise DimensionError(f"pair ({list(map(str, x))}, {list(map(str, y))}) is not in R^{n} x R^{n}")
            if not any(x) and not any(y):
                continue
            if (x, y) in seen:
                continue
            seen.add((x, y))
            out.append((x, y))
        return cls(n, tuple(out))

    @classmethod
    def from_trajectories(cls, n: int, trajectories: Iterable[Sequence[Sequence]],
                          pairs: Iterable[tuple[Sequence, Sequence]] = ()) -> "DataSet":
        """A q-step trajectory contributes the q pairs (x_k, x_{k+1})."""
        collected = []
        for traj in trajectories:
            states = [vec(s) for s in traj]
            collected.extend(zip(states[:-1], states[1:]))
        collected.extend(pairs)
        return cls.from_pairs(n, collected)

    @property
    def T(self) -> int:
        return len(self.pairs)

    @property
    def X(self) -> Mat:
        return Mat.from_columns([x for x, _ in self.pairs], self.n)

    @property
    def Y(self) -> Mat:
        return Mat.from_columns([y for _, y in self.pairs], self.n)

    def stacked(self) -> Mat:
        return self.X.vstack(self.Y)


@dataclass(frozen=True)
class LinearProcess:
    n: int
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient != 2 * self.n:
            raise DimensionError("graph of a linear process on R^n lives in R^2n")

    def apply(self, s: Subspace) -> Subspace:
        """L(S) = [0 I](graph ∩ (S × R^n))."""
        from .linalg import map_image, preimage, subspace_intersect

        if s.ambient != self.n:
            raise DimensionError("subspace dimension does not match the process")
        inside = preimage(first_block(self.n), s)
        return map_image(second_block(self.n), subspace_intersect(self.graph, inside))

    def inverse(self) -> "LinearProcess":
        from .linalg import map_image

        return LinearProcess(self.n, map_image(swap(self.n), self.graph))

    def orth(self) -> "LinearProcess":
        """L^⊥, the (negative = positive) dual of a linear process."""
        from .linalg import map_image

        return LinearProcess(self.n, map_image(rotation(self.n), orthogonal_complement(self.graph)))

    def as_convex(self) -> "ConvexProcess":
        return ConvexProcess(self.n, PolyCone.from_subspace(self.graph))


class ConvexProcess:
    """Set-valued map H on Q^n whose graph is a polyhedral cone in Q^2n.

    ``data`` keeps the (X, Y) matrices when the process was built from
    measurements, so that Z, W and the iteration formulas refer to them.
    """

    __slots__ = ("n", "graph", "data", "_cache")

    def __init__(self, n: int, graph: PolyCone, data: DataSet | None = None):
        if graph.ambient != 2 * n:
            raise DimensionError(f"graph lives in R^{graph.ambient}, expected R^{2 * n}")
        self.n = n
        self.graph = graph
        self.data = data
        self._cache = {}

    def __repr__(self):
        return f"ConvexProcess(n={self.n}, graph={self.graph!r})"

    # -- constructors
    @classmethod
    def zero(cls, n: int) -> "ConvexProcess":
        return cls(n, PolyCone.zero(2 * n))

    @classmethod
    def full(cls, n: int) -> "ConvexProcess":
        return cls(n, PolyCone.full(2 * n))

    @classmethod
    def from_generators(cls, n: int, generators: Iterable[Sequence]) -> "ConvexProcess":
        return cls(n, PolyCone.from_generators(2 * n, generators))

    @classmethod
    def from_inequalities(cls, n: int, rows: Iterable[Sequence]) -> "ConvexProcess":
        return cls(n, PolyCone.from_inequalities(2 * n, rows))

    def graph_xy(self) -> tuple[Mat, Mat]:
        """(X, Y) with graph = [X; Y] R_+^T; the data matrices when present."""
        if self.data is not None:
            return self.data.X, self.data.Y
        gens = self.graph.generators
        return (Mat.from_columns([g[: self.n] for g in gens], self.n),
                Mat.from_columns([g[self.n:] for g in gens], self.n))

    def zw(self) -> tuple[Mat, Mat]:
        """(Z, W) from the inequality rows [Z  -W] of the graph."""
        rows = self.graph.canonical().inequalities
        Z = Mat(tuple(tuple(r[: self.n]) for r in rows), self.n)
        W = Mat(tuple(tuple(-x for x in r[self.n:]) for r in rows), self.n)
        return Z, W


def from_data(d: DataSet) -> ConvexProcess:
    """H_D: graph = cone of the measured pairs = [X; Y] R_+^T."""
    return ConvexProcess(d.n, PolyCone.from_generators(2 * d.n, [tuple(x) + tuple(y) for x, y in d.pairs]), data=d)


def from_constrained_linear(A: Mat, B: Mat, C: PolyCone) -> ConvexProcess:
    """H(x) = {Ax + Bu : (x, u) in C}."""
    n, m = A.nrows, B.cols
    if A.cols != n or B.nrows != n or C.ambient != n + m:
        raise DimensionError("A must be n x n, B n x m and C a cone in R^(n+m)")
    top = Mat.identity(n).hstack(Mat.zeros(n, m))
    return ConvexProcess(n, cn.linear_image(top.vstack(A.hstack(B)), C))


def domain(h: ConvexProcess) -> PolyCone:
    return cn.linear_image(first_block(h.n), h.graph)


def image_set(h: ConvexProcess) -> PolyCone:
    return cn.linear_image(second_block(h.n), h.graph)


def negative_dual(h: ConvexProcess) -> ConvexProcess:
    """graph(H^-) = [[0, I], [-I, 0]] (graph H)^-."""
    if "neg" not in h._cache:
        h._cache["neg"] = ConvexProcess(h.n, cn.linear_image(rotation(h.n), cn.polar(h.graph, "negative")))
    return h._cache["neg"]


def positive_dual(h: ConvexProcess) -> ConvexProcess:
    """graph(H^+) = [[0, I], [-I, 0]] (graph H)^+."""
    if "pos" not in h._cache:
        h._cache["pos"] = ConvexProcess(h.n, cn.linear_image(rotation(h.n), cn.polar(h.graph, "positive")))
    return h._cache["pos"]


def inverse(h: ConvexProcess) -> ConvexProcess:
    g = h.graph
    s = swap(h.n)
    swapped = lambda vs: [s.apply(v) for v in vs]  # noqa: E731
    return ConvexProcess(h.n, PolyCone(
        2 * h.n,
        generators=None if g._gens is None else swapped(g._gens),
        inequalities=None if g._ineqs is None else swapped(g._ineqs),
    ))


def apply(h: ConvexProcess, s: PolyCone) -> PolyCone:
    """H(S) = [0 I](graph H ∩ (S × R^n))."""
    if s.ambient != h.n:
        raise DimensionError(f"set lives in R^{s.ambient}, process acts on R^{h.n}")
    restricted = cn.intersect(h.graph, cn.product_with_full(s, h.n, first=True))
    return cn.linear_image(second_block(h.n), restricted)


def minimal_linear(h: ConvexProcess) -> LinearProcess:
    """L_-: graph = lin(graph H)."""
    return LinearProcess(h.n, cn.lineality(h.graph))


def maximal_linear(h: ConvexProcess) -> LinearProcess:
    """L_+: graph = Lin(graph H)."""
    return LinearProcess(h.n, cn.linear_span(h.graph))


def data_minimal_linear(h: ConvexProcess) -> LinearProcess:
    """L_-(H_D) from the closed form ker [Z -W]."""
    Z, W = h.zw()
    if Z.nrows == 0:
        return LinearProcess(h.n, Subspace.full(2 * h.n))
    return LinearProcess(h.n, kernel(Z.hstack(-W)))


def data_maximal_linear(h: ConvexProcess) -> LinearProcess:
    """L_+(H_D) from the closed form im [X; Y]."""
    X, Y = h.graph_xy()
    return LinearProcess(h.n, image(X.vstack(Y)))


def data_negative_dual_forms(h: ConvexProcess) -> tuple[PolyCone, PolyCone]:
    """The two closed forms of graph(H_D^-): [W^T; Z^T] R_+^l and {[Y^T -X^T] v <= 0}."""
    n = h.n
    Z, W = h.zw()
    gens = [tuple(w) + tuple(z) for w, z in zip(W.rows, Z.rows)]
    X, Y = h.graph_xy()
    rows = [tuple(-a for a in y) + tuple(x) for x, y in zip(X.columns(), Y.columns())]
    return PolyCone(2 * n, generators=gens), PolyCone(2 * n, inequalities=rows)


def consistent(h: ConvexProcess, pairs: Iterable[tuple[Sequence, Sequence]]) -> bool:
    return all(cn.member(h.graph, tuple(vec(x)) + tuple(vec(y))) for x, y in pairs)
