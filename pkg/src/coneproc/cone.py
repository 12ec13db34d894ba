"""Polyhedral convex cones with generator and inequality descriptions.

A cone in Q^n is ``cone(G) = {G mu : mu >= 0}`` (generators are the columns
of G, stored here as a tuple of vectors) or ``{x : a_i . x >= 0}``.
Conversion between the two goes through the double description method
(:func:`double_description`), which works on primitive integer vectors.

Every cone built here is finitely generated and therefore closed, so the
closure operators appearing in polar identities are no-ops.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import format_rational
from .linalg import (
    DimensionError,
    Mat,
    Subspace,
    dot,
    integer_cleared,
    kernel,
    rank,
    vec,
)

IntVec = tuple  # tuple[int, ...]


def _idot(a: IntVec, b: IntVec) -> int:
    return sum(x * y for x, y in zip(a, b))


def _primitive(v: Iterable[int]) -> IntVec:
    v = tuple(v)
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return v


def _int_rank(rows: list[IntVec], d: int) -> int:
    if not rows:
        return 0
    return rank(Mat(tuple(tuple(Fraction(x) for x in r) for r in rows), d))


def double_description(rows: Sequence[IntVec], d: int) -> tuple[list[IntVec], list[IntVec]]:
    """Minimal generators of ``{x in Q^d : a . x >= 0 for every row a}``.

    Returns ``(lineality_basis, rays)``: the cone equals
    ``span(lineality_basis) + cone(rays)`` and no ray is redundant.
    Constraints are inserted one at a time. While the new row is not
    orthogonal to the current lineality space the cone is cut along a
    lineality direction; otherwise the classic step keeps the rays on the
    nonnegative side and combines adjacent pairs straddling the hyperplane.
    Two rays are adjacent iff the inserted rows active at both have rank
    ``d - dim(lineality) - 2``.
    """
    lin: list[IntVec] = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays: list[IntVec] = []
    inserted: list[IntVec] = []
    for a in rows:
        a = _primitive(a)
        if len(a) != d:
            raise DimensionError("inequality row has wrong length")
        if not any(a):
            continue
        lvals = [_idot(a, l) for l in lin]
        k = next((i for i, v in enumerate(lvals) if v != 0), None)
        if k is not None:
            l0, s = lin[k], lvals[k]
            if s < 0:
                l0, s = tuple(-x for x in l0), -s
            newlin = []
            for i, l in enumerate(lin):
                if i == k:
                    continue
                w = _primitive(s * x - lvals[i] * y for x, y in zip(l, l0))
                if any(w):
                    newlin.append(w)
            newrays = []
            for r in rays:
                v = _idot(a, r)
                newrays.append(_primitive(s * x - v * y for x, y in zip(r, l0)) if v else r)
            newrays.append(_primitive(l0))
            lin, rays = newlin, newrays
            inserted.append(a)
            continue
        vals = [_idot(a, r) for r in rays]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            inserted.append(a)
            continue
        pos = [i for i, v in enumerate(vals) if v > 0]
        keep = [rays[i] for i, v in enumerate(vals) if v >= 0]
        target = d - len(lin) - 2
        zero_sets = {
            i: frozenset(j for j, b in enumerate(inserted) if _idot(b, rays[i]) == 0)
            for i in pos + neg
        }
        for p in pos:
            for q in neg:
                common = zero_sets[p] & zero_sets[q]
                if len(common) < target:
                    continue
                if _int_rank([inserted[j] for j in common], d) != target:
                    continue
                vp, vq = vals[p], vals[q]
                keep.append(_primitive(vp * x - vq * y for x, y in zip(rays[q], rays[p])))
        rays = keep
        inserted.append(a)
    return lin, rays


def _clean(vectors: Iterable[Sequence], d: int) -> tuple:
    """Primitive integer vectors as Fractions, zeros removed, first occurrence kept."""
    seen = set()
    out = []
    for v in vectors:
        v = vec(v)
        if len(v) != d:
            raise DimensionError(f"vector of length {len(v)} in R^{d}")
        iv = integer_cleared(v)
        if not any(iv) or iv in seen:
            continue
        seen.add(iv)
        out.append(tuple(Fraction(x) for x in iv))
    return tuple(out)


def _dd_generators(rows: Sequence[Sequence], d: int) -> tuple:
    lin, rays = double_description([integer_cleared(r) for r in rows], d)
    gens = []
    for l in lin:
        gens.append(l)
        gens.append(tuple(-x for x in l))
    gens.extend(rays)
    return tuple(tuple(Fraction(x) for x in g) for g in gens)


class PolyCone:
    """Finitely generated convex cone in Q^ambient.

    At least one description is supplied; the other is derived on first use.
    The derived description is assigned in a single attribute store, so a
    concurrent reader sees either nothing or the finished tuple.
    """

    __slots__ = ("ambient", "_gens", "_ineqs")

    def __init__(self, ambient: int, generators=None, inequalities=None):
        if generators is None and inequalities is None:
            raise ValueError("a cone needs generators or inequalities")
        self.ambient = ambient
        self._gens = None if generators is None else _clean(generators, ambient)
        self._ineqs = None if inequalities is None else _clean(inequalities, ambient)

    @classmethod
    def from_generators(cls, ambient: int, generators: Iterable[Sequence]) -> "PolyCone":
        return cls(ambient, generators=list(generators))

    @classmethod
    def from_inequalities(cls, ambient: int, rows: Iterable[Sequence]) -> "PolyCone":
        return cls(ambient, inequalities=list(rows))

    @classmethod
    def zero(cls, n: int) -> "PolyCone":
        return cls(n, generators=[])

    @classmethod
    def full(cls, n: int) -> "PolyCone":
        return cls(n, inequalities=[])

    @classmethod
    def orthant(cls, n: int) -> "PolyCone":
        unit = Mat.identity(n).rows
        return cls(n, generators=unit, inequalities=unit)

    @classmethod
    def from_subspace(cls, s: Subspace) -> "PolyCone":
        from .linalg import orthogonal_complement

        comp = orthogonal_complement(s).basis
        return cls(
            s.ambient,
            generators=[v for b in s.basis for v in (b, tuple(-x for x in b))],
            inequalities=[v for b in comp for v in (b, tuple(-x for x in b))],
        )

    @property
    def generators(self) -> tuple:
        if self._gens is None:
            self._gens = _dd_generators(self._ineqs, self.ambient)
        return self._gens

    @property
    def inequalities(self) -> tuple:
        if self._ineqs is None:
            self._ineqs = _dd_generators(self._gens, self.ambient)
        return self._ineqs

    def generator_matrix(self) -> Mat:
        return Mat.from_columns(self.generators, self.ambient)

    def inequality_matrix(self) -> Mat:
        return Mat(self.inequalities, self.ambient)

    def rep_pair(self) -> "ConeRepPair":
        return ConeRepPair(self.generator_matrix(), self.inequality_matrix())

    def canonical(self) -> "PolyCone":
        """Unique description: lineality basis (both signs) plus extreme rays
        orthogonal to it, and likewise for the inequalities."""
        gens = _canonical_generators(self.generators, self.ambient)
        ineqs = _canonical_generators(self.inequalities, self.ambient)
        out = PolyCone(self.ambient, generators=gens, inequalities=ineqs)
        return out

    def __repr__(self):
        parts = [f"ambient={self.ambient}"]
        if self._gens is not None:
            parts.append(f"generators={[[str(x) for x in g] for g in self._gens]}")
        if self._ineqs is not None:
            parts.append(f"inequalities={[[str(x) for x in a] for a in self._ineqs]}")
        return f"PolyCone({', '.join(parts)})"

    def describe(self) -> str:
        """Short human label for 1-D and subspace-like cones, else generators."""
        if is_full_cone(self):
            return f"R^{self.ambient}" if self.ambient > 1 else "R"
        gens = self.canonical().generators
        if not gens:
            return "{0}"
        return "cone{" + ", ".join("(" + ", ".join(str(x) for x in g) + ")" for g in gens) + "}"

    def to_json(self) -> dict:
        c = self.canonical()
        return {
            "ambient": self.ambient,
            "generators": [[format_rational(x) for x in g] for g in c.generators],
            "inequalities": [[format_rational(x) for x in a] for a in c.inequalities],
        }


class ConeRepPair:
    """Generator matrix (columns) together with the inequality matrix (rows)."""

    def __init__(self, vrep: Mat, hrep: Mat):
        self.vrep = vrep
        self.hrep = hrep

    def __repr__(self):
        return f"ConeRepPair(vrep={self.vrep}, hrep={self.hrep})"


def _canonical_generators(gens: Sequence, d: int) -> tuple:
    from .linalg import orthogonal_complement

    full = PolyCone(d, generators=gens)
    lin_space = kernel(Mat(full.inequalities, d)) if full.inequalities else Subspace.full(d)
    comp = orthogonal_complement(lin_space)
    # extreme rays of the pointed part cone(gens) ∩ lin_space^⊥
    pointed = PolyCone(
        d,
        inequalities=list(full.inequalities)
        + [v for b in lin_space.basis for v in (b, tuple(-x for x in b))],
    )
    rays = sorted(integer_cleared(g) for g in pointed.generators) if comp.dim else []
    out = [v for b in lin_space.basis for v in (b, tuple(-x for x in b))]
    out.extend(tuple(Fraction(x) for x in r) for r in rays)
    return tuple(out)


# ------------------------------------------------------------------ operations


def _check_ambient(a: PolyCone, b: PolyCone) -> None:
    if a.ambient != b.ambient:
        raise DimensionError(f"ambient dimensions differ: {a.ambient} vs {b.ambient}")


def polar(c: PolyCone, sign: str = "negative") -> PolyCone:
    """Negative polar {y : <x, y> <= 0 on c} or positive polar (>= 0)."""
    if sign not in ("negative", "positive"):
        raise ValueError("sign must be 'negative' or 'positive'")
    if c._ineqs is not None and c._gens is None:
        rows = c._ineqs if sign == "positive" else tuple(tuple(-x for x in a) for a in c._ineqs)
        return PolyCone(c.ambient, generators=rows)
    gens = c.generators
    if sign == "positive":
        return PolyCone(c.ambient, generators=c.inequalities, inequalities=gens)
    neg_rows = [tuple(-x for x in g) for g in gens]
    return PolyCone(c.ambient, generators=_dd_generators(neg_rows, c.ambient), inequalities=neg_rows)


def vrep_to_hrep(c: PolyCone) -> ConeRepPair:
    return ConeRepPair(c.generator_matrix(), Mat(polar(c, "positive").generators, c.ambient))


def hrep_to_vrep(c: PolyCone) -> ConeRepPair:
    gens = _dd_generators(c.inequalities, c.ambient)
    return ConeRepPair(Mat.from_columns(gens, c.ambient), c.inequality_matrix())


def member(c: PolyCone, v: Sequence) -> bool:
    v = vec(v)
    if len(v) != c.ambient:
        raise DimensionError(f"vector of length {len(v)} for a cone in R^{c.ambient}")
    return all(dot(a, v) >= 0 for a in c.inequalities)


def intersect(a: PolyCone, b: PolyCone) -> PolyCone:
    _check_ambient(a, b)
    return PolyCone(a.ambient, inequalities=a.inequalities + b.inequalities)


def cone_sum(a: PolyCone, b: PolyCone) -> PolyCone:
    _check_ambient(a, b)
    return PolyCone(a.ambient, generators=a.generators + b.generators)


def negate(c: PolyCone) -> PolyCone:
    neg = lambda vs: [tuple(-x for x in v) for v in vs]  # noqa: E731
    return PolyCone(
        c.ambient,
        generators=None if c._gens is None else neg(c._gens),
        inequalities=None if c._ineqs is None else neg(c._ineqs),
    )


def linear_image(m: Mat, c: PolyCone) -> PolyCone:
    if m.cols != c.ambient:
        raise DimensionError(f"{m.shape} matrix applied to a cone in R^{c.ambient}")
    return PolyCone(m.nrows, generators=[m.apply(g) for g in c.generators])


def linear_preimage(m: Mat, c: PolyCone) -> PolyCone:
    if m.nrows != c.ambient:
        raise DimensionError(f"preimage under {m.shape} matrix of a cone in R^{c.ambient}")
    cols = m.columns()
    return PolyCone(m.cols, inequalities=[tuple(dot(a, col) for col in cols) for a in c.inequalities])


def lineality(c: PolyCone) -> Subspace:
    """lin(C) = C ∩ -C, the kernel of the inequality matrix."""
    if not c.inequalities:
        return Subspace.full(c.ambient)
    return kernel(Mat(c.inequalities, c.ambient))


def linear_span(c: PolyCone) -> Subspace:
    """Lin(C) = C - C, the span of the generators."""
    return Subspace.span(c.ambient, c.generators)


def is_full_cone(c: PolyCone) -> bool:
    if c._ineqs is not None:
        return not c._ineqs
    return not c.inequalities


def cone_contains(a: PolyCone, b: PolyCone) -> bool:
    """True iff b ⊆ a."""
    _check_ambient(a, b)
    return all(member(a, g) for g in b.generators)


def cone_equal(a: PolyCone, b: PolyCone) -> bool:
    return cone_contains(a, b) and cone_contains(b, a)


def product_with_full(s: PolyCone, n: int, first: bool = True) -> PolyCone:
    """S × R^n (first=True) or R^n × S as an inequality cone."""
    pad = (Fraction(0),) * n
    rows = [tuple(a) + pad if first else pad + tuple(a) for a in s.inequalities]
    return PolyCone(s.ambient + n, inequalities=rows)
