"""Dense exact matrices and the lattice of linear subspaces of Q^n."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import format_rational, to_rational

Vector = tuple  # tuple[Fraction, ...]


def vec(values: Iterable) -> Vector:
    return tuple(to_rational(v) for v in values)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def integer_cleared(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of v with coprime integer entries (zero stays zero)."""
    den = 1
    for x in v:
        d = Fraction(x).denominator
        den = den * d // math.gcd(den, d)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Mat:
    """Row-major exact matrix; ``cols`` is explicit so 0-row matrices keep a width."""

    rows: tuple
    cols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "Mat":
        rs = tuple(vec(r) for r in rows)
        if cols is None:
            if not rs:
                raise DimensionError("cannot infer the width of an empty matrix")
            cols = len(rs[0])
        if any(len(r) != cols for r in rs):
            raise DimensionError("ragged matrix rows")
        return cls(rs, cols)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable], nrows: int) -> "Mat":
        cs = [vec(c) for c in columns]
        if any(len(c) != nrows for c in cs):
            raise DimensionError("column length does not match row count")
        return cls(tuple(tuple(c[i] for c in cs) for i in range(nrows)), len(cs))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, r: int, c: int) -> "Mat":
        return cls(tuple((Fraction(0),) * c for _ in range(r)), c)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.cols)

    def columns(self) -> list[Vector]:
        return [tuple(r[j] for r in self.rows) for j in range(self.cols)]

    def T(self) -> "Mat":
        return Mat(tuple(self.columns()), self.nrows)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(dot(r, v) for r in self.rows)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        return Mat(tuple(tuple(dot(r, c) for c in ocols) for r in self.rows), other.cols)

    def __neg__(self) -> "Mat":
        return Mat(tuple(tuple(-x for x in r) for r in self.rows), self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return Mat(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.cols)

    def scale(self, c) -> "Mat":
        c = Fraction(c)
        return Mat(tuple(tuple(c * x for x in r) for r in self.rows), self.cols)

    def hstack(self, other: "Mat") -> "Mat":
        if self.nrows != other.nrows:
            raise DimensionError("row count mismatch in hstack")
        return Mat(tuple(a + b for a, b in zip(self.rows, other.rows)), self.cols + other.cols)

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise DimensionError("column count mismatch in vstack")
        return Mat(self.rows + other.rows, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def to_json(self) -> list:
        return [[format_rational(x) for x in r] for r in self.rows]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"


def rref(m: Mat) -> tuple[Mat, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns (0-based)."""
    a = [list(r) for r in m.rows]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Mat(tuple(tuple(row) for row in a), m.cols), r, pivots


def rank(m: Mat) -> int:
    return rref(m)[1]


def determinant(rows: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^ambient in canonical form.

    ``basis`` holds the rows of the reduced echelon form of any spanning set,
    each scaled to coprime integers, so two subspaces are equal exactly when
    their bases are.
    """

    ambient: int
    basis: tuple = field(default=())

    @classmethod
    def span(cls, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        vs = [vec(v) for v in vectors]
        if any(len(v) != ambient for v in vs):
            raise DimensionError("spanning vector has wrong length")
        if not vs:
            return cls(ambient, ())
        red, r, _ = rref(Mat(tuple(vs), ambient))
        return cls(ambient, tuple(tuple(Fraction(x) for x in integer_cleared(row)) for row in red.rows[:r]))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(n, Mat.identity(n).rows)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Mat:
        """Matrix whose columns are the basis vectors."""
        return Mat.from_columns(self.basis, self.ambient)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient:
            raise DimensionError("vector has wrong length")
        return Subspace.span(self.ambient, list(self.basis) + [v]).dim == self.dim

    def __le__(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return all(other.contains(b) for b in self.basis)

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "basis": [[format_rational(x) for x in b] for b in self.basis]}

    def __str__(self):
        if self.dim == self.ambient:
            return f"R^{self.ambient}"
        if self.dim == 0:
            return "{0}"
        return "span{" + ", ".join("(" + ", ".join(str(x) for x in b) + ")" for b in self.basis) + "}"


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient != b.ambient:
        raise DimensionError(f"ambient dimensions differ: {a.ambient} vs {b.ambient}")


def kernel(m: Mat) -> Subspace:
    red, r, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    vs = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red.rows[i][f]
        vs.append(v)
    return Subspace.span(m.cols, vs)


def image(m: Mat) -> Subspace:
    return Subspace.span(m.nrows, m.columns())


def orthogonal_complement(s: Subspace) -> Subspace:
    if s.dim == 0:
        return Subspace.full(s.ambient)
    return kernel(Mat(s.basis, s.ambient))


def preimage(m: Mat, s: Subspace) -> Subspace:
    """{v : m v in s}."""
    if s.ambient != m.nrows:
        raise DimensionError(f"subspace of R^{s.ambient} but matrix has {m.nrows} rows")
    comp = orthogonal_complement(s)
    if comp.dim == 0:
        return Subspace.full(m.cols)
    return kernel(Mat(comp.basis, m.nrows) @ m)


def map_image(m: Mat, s: Subspace) -> Subspace:
    """m applied to s."""
    if s.ambient != m.cols:
        raise DimensionError(f"subspace of R^{s.ambient} but matrix has {m.cols} columns")
    return Subspace.span(m.nrows, [m.apply(b) for b in s.basis])


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    return Subspace.span(a.ambient, a.basis + b.basis)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    duals = orthogonal_complement(a).basis + orthogonal_complement(b).basis
    if not duals:
        return Subspace.full(a.ambient)
    return kernel(Mat(duals, a.ambient))


def is_full(s: Subspace) -> bool:
    return s.dim == s.ambient


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    _check_same(a, b)
    return a.basis == b.basis
