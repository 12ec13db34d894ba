"""Exact scalars, rational univariate polynomials and certified real roots.

Scalars are :class:`fractions.Fraction`. Polynomials are immutable
:class:`UniPoly` values (coefficients lowest degree first). Real roots are
returned as :class:`AlgebraicPoint` values: either an exact rational, or a
square-free defining polynomial together with an isolating interval.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]

REFINEMENT_CAP = 10**6


class RefinementCapError(RuntimeError):
    """Raised when interval refinement exceeds the safety cap."""


def to_rational(value) -> Fraction:
    """Convert an int, Fraction or exact string ("3", "-1/2", "0.25")."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"binary float {value!r} is not exact; pass a string")
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(q: Fraction) -> Union[int, str]:
    """Serialize as a bare int when integral, else as a "p/q" string."""
    q = Fraction(q)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def sign(q: Number) -> int:
    return (q > 0) - (q < 0)


class UniPoly:
    """Polynomial in one variable with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # construction helpers
    @classmethod
    def constant(cls, c: Number) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and k > 0) else str(mag)
            if k == 1:
                body += "λ"
            elif k > 1:
                body += f"λ^{k}"
            terms.append(("-" if c < 0 else "+", body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, body in terms[1:]:
            out += f" {s} {body}"
        return out

    # arithmetic
    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __call__(self, x: Number) -> Fraction:
        return poly_eval(self, x)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        lc = other.lc
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lc
            quot[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.lc
        return UniPoly(c / lc for c in self.coeffs)

    def integerized(self) -> list[int]:
        """Primitive integer coefficient list with positive leading term."""
        if self.is_zero():
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return ints

    def compose_affine(self, a: Number, b: Number) -> "UniPoly":
        """p(a + b*t) as a polynomial in t (Horner)."""
        lin = UniPoly([a, b])
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * lin + UniPoly([c])
        return out


def _as_poly(v) -> UniPoly:
    if isinstance(v, UniPoly):
        return v
    return UniPoly([v])


def poly_eval(p: UniPoly, x: Number) -> Fraction:
    """Exact Horner evaluation."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree(p: UniPoly) -> UniPoly:
    """Monic square-free part p / gcd(p, p')."""
    if p.is_zero():
        raise ValueError("identically zero")
    if p.degree == 0:
        return UniPoly([1])
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def squarefree_union(polys: Iterable[UniPoly]) -> UniPoly:
    """Monic square-free polynomial whose roots are all roots of the inputs."""
    acc = UniPoly([1])
    for p in polys:
        if p.is_zero():
            continue
        s = squarefree(p)
        g = poly_gcd(acc, s)
        acc = (acc * (s // g)).monic()
    return acc


def interpolate(points: Sequence[tuple[Number, Number]]) -> UniPoly:
    """Lagrange interpolation through distinct abscissae."""
    out = UniPoly()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        term = UniPoly([yi])
        for j, (xj, _) in enumerate(points):
            if j != i:
                term = term * UniPoly([Fraction(-xj) / (Fraction(xi) - xj), Fraction(1) / (Fraction(xi) - xj)])
        out = out + term
    return out


# ---------------------------------------------------------------- root isolation


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: UniPoly) -> list[Fraction]:
    """All distinct rational roots, ascending (rational-root theorem)."""
    if p.is_zero():
        raise ValueError("identically zero")
    ints = p.integerized()
    roots = []
    while ints and ints[0] == 0:
        ints = ints[1:]
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(ints) <= 1:
        return sorted(roots)
    q = UniPoly(ints)
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            if math.gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and poly_eval(q, cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def cauchy_bound(p: UniPoly) -> Fraction:
    """Every real root has absolute value strictly below this bound."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def descartes_count(p: UniPoly, lo: Fraction, hi: Fraction) -> int:
    """Sign variations bounding the number of roots in the open interval (lo, hi).

    Uses the Moebius transform x = (lo + hi*s)/(1 + s), s in (0, inf).
    """
    d = p.degree
    # q(t) = p(lo + (hi - lo) t), t in (0,1); then reverse and shift by 1.
    q = p.compose_affine(lo, hi - lo)
    cs = list(q.coeffs) + [Fraction(0)] * (d + 1 - len(q.coeffs))
    rev = cs[::-1]
    # Taylor shift rev(s) -> rev(s + 1)
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            rev[j] += rev[j + 1]
    variations = 0
    last = 0
    for c in rev:
        s = sign(c)
        if s == 0:
            continue
        if last and s != last:
            variations += 1
        last = s
    return variations


@dataclass(frozen=True)
class AlgebraicPoint:
    """A real number: exact rational, or a root of a square-free polynomial.

    For the algebraic kind the defining polynomial changes sign strictly
    across ``[lo, hi]`` and has exactly one root there.
    """

    kind: str
    value: Fraction | None = None
    poly: UniPoly | None = None
    lo: Fraction | None = None
    hi: Fraction | None = None

    @classmethod
    def rational(cls, q: Number) -> "AlgebraicPoint":
        return cls("rational", value=Fraction(q))

    @classmethod
    def algebraic(cls, poly: UniPoly, lo: Number, hi: Number) -> "AlgebraicPoint":
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise ValueError("isolating interval must have lo < hi")
        if sign(poly_eval(poly, lo)) * sign(poly_eval(poly, hi)) >= 0:
            raise ValueError("defining polynomial must change sign on the interval")
        return cls("algebraic", poly=poly, lo=lo, hi=hi)

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def refined(self) -> "AlgebraicPoint":
        """Bisect the isolating interval once (rational points are returned as is)."""
        if self.is_rational:
            return self
        mid = (self.lo + self.hi) / 2
        fm = poly_eval(self.poly, mid)
        if fm == 0:
            return AlgebraicPoint.rational(mid)
        if sign(fm) == sign(poly_eval(self.poly, self.lo)):
            return AlgebraicPoint("algebraic", poly=self.poly, lo=mid, hi=self.hi)
        return AlgebraicPoint("algebraic", poly=self.poly, lo=self.lo, hi=mid)

    def bounds(self) -> tuple[Fraction, Fraction]:
        if self.is_rational:
            return self.value, self.value
        return self.lo, self.hi

    def __float__(self):
        if self.is_rational:
            return float(self.value)
        pt = self
        while pt.kind == "algebraic" and pt.hi - pt.lo > Fraction(1, 2**60):
            pt = pt.refined()
        lo, hi = pt.bounds()
        return float((lo + hi) / 2)

    def to_json(self):
        if self.is_rational:
            return {"kind": "rational", "value": format_rational(self.value)}
        return {
            "kind": "algebraic",
            "poly": [format_rational(c) for c in self.poly.coeffs],
            "interval": [format_rational(self.lo), format_rational(self.hi)],
            "approx": f"{float(self):.12g}",
        }

    def __str__(self):
        if self.is_rational:
            return str(self.value)
        return f"root of {self.poly} in [{self.lo}, {self.hi}] (~{float(self):.6g})"


def _isolate_open(p: UniPoly, lo: Fraction, hi: Fraction, out: list, budget: list) -> None:
    """Collect isolating intervals for roots of square-free p in (lo, hi).

    p is assumed to have no roots at rational bisection points it meets; any
    such root is recorded as rational.
    """
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        budget[0] += 1
        if budget[0] > REFINEMENT_CAP:
            raise RefinementCapError("root isolation exceeded the bisection cap")
        v = descartes_count(p, a, b)
        if v == 0:
            continue
        if v == 1:
            out.append(AlgebraicPoint.algebraic(p, a, b))
            continue
        mid = (a + b) / 2
        if poly_eval(p, mid) == 0:
            out.append(AlgebraicPoint.rational(mid))
        stack.append((mid, b))
        stack.append((a, mid))


def isolate_real_roots(p: UniPoly, lower: Number = 0) -> list[AlgebraicPoint]:
    """Every distinct real root of p in [lower, inf), ascending.

    Rational roots are found exactly first; the remaining roots are isolated
    by Descartes bisection on the square-free, rational-root-free cofactor.
    """
    if p.is_zero():
        raise ValueError("identically zero")
    lower = Fraction(lower)
    sf = squarefree(p)
    rats = rational_roots(sf)
    rest = sf
    for r in rats:
        rest = rest // UniPoly([-r, 1])
    points = [AlgebraicPoint.rational(r) for r in rats if r >= lower]
    if rest.degree >= 1:
        bound = cauchy_bound(rest)
        lo = max(lower, -bound)
        if lo < bound:
            found: list[AlgebraicPoint] = []
            _isolate_open(rest, lo, bound, found, [0])
            points.extend(found)
    return sort_points(points)


def same_point(a: AlgebraicPoint, b: AlgebraicPoint) -> bool:
    """Whether two isolated points are the same real number."""
    if a.is_rational and b.is_rational:
        return a.value == b.value
    if a.is_rational:
        a, b = b, a
    if b.is_rational:
        r = b.value
        return a.lo <= r <= a.hi and poly_eval(a.poly, r) == 0
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return False
    g = poly_gcd(a.poly, b.poly)
    if g.degree < 1:
        return False
    # g divides a.poly, so it has at most one (simple) root in a's interval
    glo, ghi = poly_eval(g, lo), poly_eval(g, hi)
    return glo == 0 or ghi == 0 or sign(glo) != sign(ghi)


def common_real_roots(polys: Iterable[UniPoly], lower: Number = 0) -> list[AlgebraicPoint]:
    """Distinct real roots in [lower, inf) of any nonzero input, ascending.

    Each polynomial is isolated on its own and equal roots are merged, which
    avoids the coefficient growth of working with their product.
    """
    seen: set = set()
    points: list[AlgebraicPoint] = []
    for p in polys:
        if p.is_zero() or p.degree < 1:
            continue
        key = p.monic().coeffs
        if key in seen:
            continue
        seen.add(key)
        for pt in isolate_real_roots(p, lower):
            if not any(same_point(pt, q) for q in points):
                points.append(pt)
    return sort_points(points)


def _separate(a: AlgebraicPoint, b: AlgebraicPoint) -> tuple[AlgebraicPoint, AlgebraicPoint]:
    """Refine two distinct points until their closed bounds are disjoint."""
    steps = 0
    while True:
        alo, ahi = a.bounds()
        blo, bhi = b.bounds()
        if ahi < blo or bhi < alo:
            return a, b
        if a.is_rational and b.is_rational:
            raise ValueError("points coincide")
        steps += 1
        if steps > REFINEMENT_CAP:
            raise RefinementCapError("could not separate points")
        if not a.is_rational and (b.is_rational or ahi - alo >= bhi - blo):
            a = a.refined()
        else:
            b = b.refined()


def sort_points(points: Sequence[AlgebraicPoint]) -> list[AlgebraicPoint]:
    """Sort pairwise distinct points ascending, leaving their bounds disjoint."""
    pts = list(points)
    # insertion sort; lists are short
    for i in range(1, len(pts)):
        j = i
        while j > 0:
            left, right = _separate(pts[j - 1], pts[j])
            if right.bounds()[1] < left.bounds()[0]:
                pts[j - 1], pts[j] = right, left
                j -= 1
            else:
                pts[j - 1], pts[j] = left, right
                break
    # make every neighbouring pair disjoint
    for i in range(1, len(pts)):
        pts[i - 1], pts[i] = _separate(pts[i - 1], pts[i])
    return pts


def sign_at(p: UniPoly, pt: AlgebraicPoint) -> int:
    """Exact sign of p at the real number pt.

    Zero is decided by a gcd with the defining polynomial; nonzero signs by
    refining the interval until p has no root on it.
    """
    if pt.is_rational:
        return sign(poly_eval(p, pt.value))
    if p.is_zero():
        return 0
    g = poly_gcd(p, pt.poly)
    if g.degree >= 1:
        # g | poly, so g has at most one root in the interval, and it is simple.
        glo, ghi = poly_eval(g, pt.lo), poly_eval(g, pt.hi)
        if glo == 0 or ghi == 0 or sign(glo) != sign(ghi):
            return 0
    cur = pt
    for _ in range(REFINEMENT_CAP):
        if cur.is_rational:
            return sign(poly_eval(p, cur.value))
        if (poly_eval(p, cur.lo) != 0 and poly_eval(p, cur.hi) != 0
                and descartes_count(p, cur.lo, cur.hi) == 0):
            return sign(poly_eval(p, (cur.lo + cur.hi) / 2))
        cur = cur.refined()
    raise RefinementCapError("sign refinement exceeded the bisection cap")


def rational_between(a: AlgebraicPoint, b: AlgebraicPoint) -> Fraction:
    """A rational strictly between a < b (bounds assumed disjoint)."""
    a, b = _separate(a, b)
    return (a.bounds()[1] + b.bounds()[0]) / 2


def rational_above(a: AlgebraicPoint) -> Fraction:
    """A rational strictly greater than a."""
    return math.floor(a.bounds()[1]) + 1


def rational_below(a: AlgebraicPoint, floor: Number = 0) -> Fraction:
    """A rational strictly between ``floor`` and a, where floor < a."""
    floor = Fraction(floor)
    cur = a
    while cur.bounds()[0] <= floor:
        if cur.is_rational:
            break
        cur = cur.refined()
    return (floor + cur.bounds()[0]) / 2
