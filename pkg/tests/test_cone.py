from fractions import Fraction
from itertools import product

from hypothesis import given, settings, strategies as st

from coneproc import cone as cn
from coneproc.cone import PolyCone, double_description
from coneproc.linalg import Mat, Subspace, dot, kernel

D2 = PolyCone.from_generators(2, [(0, 1), (1, -1)])
X3 = [(0, 0, 1, 0), (1, 0, 0, 1), (0, 1, 0, -1), (0, -1, -1, 0)]


def gens(*vs):
    return PolyCone.from_generators(len(vs[0]), vs)


def test_polar_examples():
    assert cn.cone_equal(cn.polar(PolyCone.orthant(2), "negative"), gens((-1, 0), (0, -1)))
    assert cn.cone_equal(cn.polar(D2, "positive"), gens((1, 0), (1, 1)))
    for eta in [(1, 0), (1, 1)]:
        assert all(dot(eta, d) >= 0 for d in D2.generators)
    assert cn.polar(PolyCone.full(2)).canonical().generators == ()


def test_example3_hrep_contains_reported_rows():
    c = PolyCone.from_generators(4, X3)
    rows = {tuple(a) for a in c.canonical().inequalities}
    assert (1, 0, 0, 0) in rows and (1, 0, 0, -1) in rows
    # the data cone is simplicial in R^4, so it has exactly four facets
    assert len(rows) == 4


def test_single_ray_hrep():
    c = gens((1, 1))
    assert len(c.inequalities) == 3
    for v in product(range(-2, 3), repeat=2):
        assert cn.member(c, v) == (v[0] == v[1] and v[0] >= 0)


def test_orthant_round_trip():
    o = PolyCone.orthant(3)
    assert cn.cone_equal(PolyCone.from_inequalities(3, o.generators), o)
    assert cn.cone_equal(PolyCone.from_generators(3, o.inequalities), o)


def test_membership_examples():
    assert cn.member(D2, (0, 0))
    assert cn.member(D2, (1, -1))
    assert not cn.member(PolyCone.orthant(2), (-1, 0))


def test_intersection_and_sum_examples():
    o = PolyCone.orthant(2)
    assert cn.cone_equal(cn.intersect(o, PolyCone.full(2)), o)
    assert cn.cone_equal(cn.intersect(o, cn.negate(o)), PolyCone.zero(2))
    restricted = cn.intersect(PolyCone.from_generators(2, D2.generators),
                              cn.product_with_full(PolyCone.orthant(1), 1))
    assert cn.cone_equal(restricted, D2)
    assert cn.cone_equal(cn.cone_sum(o, PolyCone.zero(2)), o)
    axis = cn.cone_sum(gens((1, 0)), gens((-1, 0)))
    assert cn.lineality(axis) == Subspace.span(2, [(1, 0)])
    half = gens((1, 0), (0, 1), (0, -1))
    line = PolyCone.from_subspace(Subspace.span(2, [(1, 0)]))
    assert cn.is_full_cone(cn.cone_sum(half, line))


def test_linear_maps():
    o = PolyCone.orthant(2)
    assert cn.cone_equal(cn.linear_image(Mat.identity(2), o), o)
    assert cn.is_full_cone(cn.linear_image(Mat.from_rows([[1, -1]]), o))
    pre = cn.linear_preimage(Mat.from_rows([[0], [-1]]), PolyCone.orthant(2))
    assert cn.cone_equal(pre, gens((-1,)))
    for y in range(-3, 4):
        assert cn.member(pre, (y,)) == (y <= 0)


def test_lineality_and_span():
    s = Subspace.span(3, [(1, 2, 0)])
    c = PolyCone.from_subspace(s)
    assert cn.lineality(c) == s and cn.linear_span(c) == s
    o = PolyCone.orthant(2)
    assert cn.lineality(o).dim == 0 and cn.linear_span(o) == Subspace.full(2)
    data = PolyCone.from_generators(4, X3)
    assert cn.linear_span(data) == Subspace.full(4)
    # a two-row H-rep would leave 2-dimensional lineality, but the data cone is pointed
    assert kernel(Mat.from_rows([[1, 0, 0, 0], [1, 0, 0, -1]])).dim == 2
    assert cn.lineality(data).dim == 0


def test_fullness_examples():
    assert cn.is_full_cone(gens((1, 0), (-1, 0), (0, 1), (0, -1)))
    assert not cn.is_full_cone(PolyCone.orthant(2))
    X = Mat.from_rows([[0, 1, 0, 0], [0, 0, 1, -1]])
    Y = Mat.from_rows([[1, 0, 0, -1], [0, 1, -1, 0]])
    M = Y - X.scale(Fraction(1, 2))
    assert cn.is_full_cone(PolyCone.from_generators(2, M.columns()))


def test_containment_examples():
    o = PolyCone.orthant(2)
    assert cn.cone_contains(o, o)
    assert cn.cone_contains(PolyCone.full(2), D2)
    assert not cn.cone_contains(o, gens((-1, 0)))


def test_double_description_raw_output():
    lin, rays = double_description([(1, 0), (0, 1)], 2)
    assert lin == [] and sorted(rays) == [(0, 1), (1, 0)]
    lin, rays = double_description([(1, 0)], 2)
    assert len(lin) == 1 and rays == [(1, 0)]


# ---------------------------------------------------------------- properties

vec3 = st.lists(st.integers(-3, 3), min_size=3, max_size=3).map(tuple)
vec2 = st.lists(st.integers(-3, 3), min_size=2, max_size=2).map(tuple)


def _caratheodory_member(gens_, v):
    """A planar cone point is a nonnegative combination of at most two independent generators."""
    if not any(v):
        return True
    gs = [g for g in gens_ if any(g)]
    for g in gs:
        if g[0] * v[1] - g[1] * v[0] == 0 and g[0] * v[0] + g[1] * v[1] > 0:
            return True
    for i, a in enumerate(gs):
        for b in gs[i + 1:]:
            det = a[0] * b[1] - a[1] * b[0]
            if det == 0:
                continue
            x = Fraction(v[0] * b[1] - v[1] * b[0], det)
            y = Fraction(a[0] * v[1] - a[1] * v[0], det)
            if x >= 0 and y >= 0:
                return True
    return False


@settings(max_examples=80, deadline=None)
@given(st.lists(vec2, min_size=0, max_size=4))
def test_dd_matches_planar_oracle(gs):
    c = PolyCone.from_generators(2, gs)
    h = PolyCone.from_inequalities(2, c.inequalities)
    for v in product(range(-3, 4), repeat=2):
        expect = _caratheodory_member(gs, v)
        assert cn.member(h, v) == expect, (gs, v)


@settings(max_examples=60, deadline=None)
@given(st.lists(vec3, min_size=0, max_size=5))
def test_double_polar_and_vh_consistency(gs):
    c = PolyCone.from_generators(3, gs)
    assert cn.cone_equal(cn.polar(cn.polar(c)), c)
    assert cn.cone_equal(cn.polar(cn.polar(c, "positive"), "positive"), c)
    for g in c.generators:
        assert all(dot(a, g) >= 0 for a in c.inequalities)
    h = PolyCone.from_inequalities(3, c.inequalities)
    assert cn.cone_equal(h, c)
    for v in product(range(-2, 3), repeat=3):
        assert cn.member(h, v) == cn.member(c, v)


@settings(max_examples=60, deadline=None)
@given(st.lists(vec3, max_size=4), st.lists(vec3, max_size=4))
def test_polar_of_sum_is_intersection_of_polars(ga, gb):
    a, b = PolyCone.from_generators(3, ga), PolyCone.from_generators(3, gb)
    assert cn.cone_equal(cn.polar(cn.cone_sum(a, b)), cn.intersect(cn.polar(a), cn.polar(b)))
    assert cn.cone_contains(cn.cone_sum(a, b), a)
    assert cn.cone_contains(a, cn.intersect(a, b))


@settings(max_examples=60, deadline=None)
@given(st.lists(vec3, max_size=5))
def test_canonical_form_is_idempotent_and_unique(gs):
    c = PolyCone.from_generators(3, gs)
    once = c.canonical()
    assert once.canonical().generators == once.generators
    assert once.canonical().inequalities == once.inequalities
    shuffled = PolyCone.from_generators(3, list(reversed(gs)) + [tuple(2 * x for x in g) for g in gs])
    assert shuffled.canonical().generators == once.generators
    assert c.to_json() == shuffled.to_json()
