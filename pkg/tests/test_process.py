from hypothesis import given, settings, strategies as st

from coneproc import cone as cn
from coneproc import process as pr
from coneproc.cone import PolyCone
from coneproc.linalg import Mat, Subspace, kernel

EX3 = pr.DataSet.from_trajectories(2, [[(0, 0), (1, 0), (0, 1), (0, -1), (-1, 0)]])
EX2 = pr.DataSet.from_pairs(1, [((0,), (1,)), ((1,), (-1,))])


def cone(*vs):
    return PolyCone.from_generators(len(vs[0]), vs)


def test_from_data_example3():
    h = pr.from_data(EX3)
    X, Y = h.graph_xy()
    assert X.to_json() == [[0, 1, 0, 0], [0, 0, 1, -1]]
    assert Y.to_json() == [[1, 0, 0, -1], [0, 1, -1, 0]]
    Z, W = h.zw()
    rows = {tuple(z) + tuple(-w for w in wr) for z, wr in zip(Z.rows, W.rows)}
    assert {(1, 0, 0, 0), (1, 0, 0, -1)} <= rows


def test_from_data_example2_and_empty():
    h = pr.from_data(EX2)
    assert cn.cone_equal(h.graph, cone((0, 1), (1, -1)))
    Z, W = h.zw()
    assert Z.to_json() == [[1], [1]] and W.to_json() == [[0], [-1]]
    empty = pr.from_data(pr.DataSet.from_pairs(2, []))
    assert cn.cone_equal(empty.graph, PolyCone.zero(4))


def test_dataset_drops_zero_and_duplicate_pairs():
    d = pr.DataSet.from_pairs(1, [((0,), (0,)), ((1,), (2,)), ((1,), (2,))])
    assert d.T == 1


def test_constrained_linear():
    n = 2
    h = pr.from_constrained_linear(Mat.zeros(n, n), Mat.identity(n), PolyCone.orthant(2 * n))
    assert cn.cone_equal(h.graph, PolyCone.orthant(4))
    h = pr.from_constrained_linear(Mat.identity(n), Mat.zeros(n, 1), PolyCone.full(n + 1))
    assert cn.cone_equal(h.graph, PolyCone.from_subspace(Subspace.span(4, [(1, 0, 1, 0), (0, 1, 0, 1)])))
    g = pr.from_constrained_linear(Mat.from_rows([[0]]), Mat.from_rows([[1]]), cone((0, 1), (1, 1)))
    assert cn.cone_equal(g.graph, cone((0, 1), (1, 1)))


def test_domain_and_image():
    dom3 = pr.domain(pr.from_data(EX3))
    assert cn.cone_equal(dom3, cone((1, 0), (0, 1), (0, -1)))
    h2 = pr.from_data(EX2)
    assert cn.cone_equal(pr.domain(h2), PolyCone.orthant(1))
    assert cn.is_full_cone(pr.image_set(h2))
    z = pr.ConvexProcess.zero(2)
    assert cn.cone_equal(pr.domain(z), PolyCone.zero(2))
    assert cn.cone_equal(pr.image_set(z), PolyCone.zero(2))


def test_negative_dual_examples():
    assert cn.is_full_cone(pr.negative_dual(pr.ConvexProcess.zero(2)).graph)
    diag = pr.ConvexProcess(2, PolyCone.from_subspace(Subspace.span(4, [(1, 0, 1, 0), (0, 1, 0, 1)])))
    dual = pr.negative_dual(diag)
    assert cn.cone_equal(dual.graph, diag.graph)
    h2 = pr.from_data(EX2)
    assert cn.cone_equal(pr.negative_dual(h2).graph, cone((0, 1), (-1, 1)))
    first, second = pr.data_negative_dual_forms(h2)
    assert cn.cone_equal(first, second)
    assert cn.cone_equal(first, pr.negative_dual(h2).graph)


def test_inverse():
    g = pr.ConvexProcess.from_generators(1, [(0, 1), (1, 1)])
    gi = pr.inverse(g)
    assert cn.cone_equal(gi.graph, cone((1, 0), (1, 1)))
    assert cn.cone_equal(pr.inverse(gi).graph, g.graph)
    assert cn.cone_equal(pr.inverse(pr.ConvexProcess.zero(1)).graph, PolyCone.zero(2))


def test_apply_examples():
    h2 = pr.from_data(EX2)
    assert cn.cone_equal(pr.apply(h2, PolyCone.zero(1)), PolyCone.orthant(1))
    assert cn.is_full_cone(pr.apply(h2, PolyCone.orthant(1)))
    h3 = pr.from_data(EX3)
    assert cn.cone_equal(pr.apply(h3, PolyCone.full(2)), pr.image_set(h3))


def test_orientation_is_x_then_y():
    # H(x) = [2x, inf) for x >= 0; reading the graph backwards would give [0, x/2]
    h = pr.ConvexProcess.from_generators(1, [(1, 2), (0, 1)])
    img = pr.apply(h, cone((1,)))
    assert cn.cone_equal(img, PolyCone.orthant(1))
    at_one = cn.intersect(h.graph, PolyCone.from_inequalities(2, [(1, 0), (-1, 0)]))
    assert cn.member(h.graph, (1, 2)) and not cn.member(h.graph, (1, 1))
    assert cn.member(pr.inverse(h).graph, (2, 1)) and not cn.member(pr.inverse(h).graph, (1, 1))
    assert cn.cone_equal(at_one, cone((0, 1)))


def test_minimal_and_maximal_linear():
    diag = pr.LinearProcess(1, Subspace.span(2, [(1, 1)]))
    h = diag.as_convex()
    assert pr.minimal_linear(h).graph == diag.graph == pr.maximal_linear(h).graph
    h3 = pr.from_data(EX3)
    assert pr.maximal_linear(h3).graph == Subspace.full(4)
    # the data cone is simplicial, so its lineality is trivial rather than the
    # kernel of the two rows shown for this example
    assert pr.minimal_linear(h3).graph.dim == 0
    assert kernel(Mat.from_rows([[1, 0, 0, 0], [1, 0, 0, -1]])).dim == 2
    o = pr.ConvexProcess(1, PolyCone.orthant(2))
    assert pr.minimal_linear(o).graph.dim == 0 and pr.maximal_linear(o).graph == Subspace.full(2)


def test_consistency():
    assert pr.consistent(pr.from_data(EX2), EX2.pairs)
    assert not pr.consistent(pr.ConvexProcess.zero(1), EX2.pairs)
    assert pr.consistent(pr.ConvexProcess.full(1), EX2.pairs)


# ---------------------------------------------------------------- properties


@st.composite
def processes(draw, max_n=2, max_gens=4):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, max_gens))
    gens = draw(st.lists(st.lists(st.integers(-3, 3), min_size=2 * n, max_size=2 * n), min_size=k, max_size=k))
    return pr.ConvexProcess.from_generators(n, gens)


@settings(max_examples=50, deadline=None)
@given(processes())
def test_linear_sandwich(h):
    lo, hi = pr.minimal_linear(h), pr.maximal_linear(h)
    assert cn.cone_contains(h.graph, PolyCone.from_subspace(lo.graph))
    assert cn.cone_contains(PolyCone.from_subspace(hi.graph), h.graph)


@settings(max_examples=50, deadline=None)
@given(processes())
def test_dual_identities(h):
    neg, pos = pr.negative_dual(h), pr.positive_dual(h)
    assert cn.cone_equal(pr.negative_dual(pos).graph, h.graph)
    assert cn.cone_equal(pos.graph, cn.negate(neg.graph))
    assert cn.cone_equal(pr.apply(h, PolyCone.zero(h.n)), cn.polar(pr.domain(neg)))
    assert pr.minimal_linear(neg).graph == pr.maximal_linear(h).orth().graph


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_data_formulas_match_cone_computations(data):
    n = data.draw(st.integers(1, 2))
    pairs = data.draw(st.lists(
        st.tuples(st.lists(st.integers(-2, 2), min_size=n, max_size=n),
                  st.lists(st.integers(-2, 2), min_size=n, max_size=n)),
        min_size=1, max_size=4))
    d = pr.DataSet.from_pairs(n, pairs)
    h = pr.from_data(d)
    assert pr.data_minimal_linear(h).graph == pr.minimal_linear(h).graph
    assert pr.data_maximal_linear(h).graph == pr.maximal_linear(h).graph
    first, second = pr.data_negative_dual_forms(h)
    assert cn.cone_equal(first, pr.negative_dual(h).graph)
    assert cn.cone_equal(second, pr.negative_dual(h).graph)
    assert pr.consistent(h, d.pairs)
