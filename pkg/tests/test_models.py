import random

import networkx as nx
import pytest

from quadinv.descriptors import INF, Base, BaseClass, Cdvf, RationalFnField, SemiGlobal, laurent, validate
from quadinv.calculus import au_set, m_invariant, possible_m, u_invariant
from quadinv.errors import GraphError, HypothesisRequired
from quadinv.layers import (
    BLACK,
    WHITE,
    RootedComponentTree,
    TreeVertex,
    attainable_au,
    build_component_tree,
    field_layer,
    layer,
    m_from_layer,
    make_fully_arboreal_example,
    make_layer_example,
    random_graph,
    random_semiglobal,
)
from quadinv.models import (
    LEAF,
    Model,
    Nested,
    ReductionGraph,
    betti1,
    canonical_graph,
    is_tree,
    loop_model,
    to_dot,
    tree_model,
    two_components_two_points,
)

import independent

ALG = BaseClass.algclosed()
FIN = BaseClass.finite(3)


def test_is_tree_examples():
    assert is_tree(ReductionGraph(3, ((0, 1), (1, 2))))
    assert not is_tree(two_components_two_points())
    assert is_tree(ReductionGraph(1))


def test_disconnected_graph_raises():
    with pytest.raises(GraphError):
        is_tree(ReductionGraph(2))


def test_tree_iff_betti_zero_against_union_find():
    rng = random.Random(3)
    for _ in range(300):
        g = random_graph(rng.randint(1, 5), rng.random() < 0.5, rng)
        assert g.violations() == []
        assert is_tree(g) == (betti1(g) == 0) == independent.union_find_is_tree(g.vertex_count, g.edges)


def test_graph_violations():
    assert ReductionGraph(2, ((0, 5),)).violations() == ["edge (0,5) has an endpoint outside 0..1"]
    assert ReductionGraph(3, ((0, 1),)).violations() == ["graph is not connected"]
    assert ReductionGraph(2, ((0, 1),), "cc").violations() == ["edge (0,1) joins two vertices of the same kind"]
    assert ReductionGraph(2, ((0, 1),), "cx").violations()


def test_model_graph_flag_disagreement():
    K = Cdvf(Base(BaseClass.finite(5)))
    m = Model((LEAF, LEAF), graph=two_components_two_points(), tree_flag=True)
    assert "tree flag disagrees with the graph" in [v.message for v in validate(SemiGlobal(K, m))]
    m = Model((LEAF,), graph=two_components_two_points())
    assert validate(SemiGlobal(K, m))


def test_nested_needs_cdvf_residue():
    m = tree_model(Nested(tree_model(LEAF)))
    assert validate(SemiGlobal(laurent(Base(FIN)), m))
    assert validate(SemiGlobal(laurent(Base(FIN), 2), m)) == []


def test_component_tree_examples():
    K = laurent(Base(FIN), 2)
    t = build_component_tree(SemiGlobal(K, loop_model(LEAF, LEAF)))
    assert t.root.color == BLACK and [c.color for c in t.root.children] == [WHITE, WHITE]
    assert len(t) == 3
    t = build_component_tree(SemiGlobal(K, tree_model(Nested(loop_model(LEAF)))))
    assert t.root.color == WHITE and t.root.children[0].color == BLACK
    assert t.root.children[0].level == 2
    assert layer(build_component_tree(make_layer_example(3, 2, FIN))) == 2


def test_layer_examples():
    assert layer(RootedComponentTree(TreeVertex(WHITE, 1, (TreeVertex(WHITE, 2),)))) == INF
    assert layer(RootedComponentTree(TreeVertex(BLACK, 1))) == 1
    assert layer(RootedComponentTree(TreeVertex(WHITE, 1, (TreeVertex(BLACK, 2),)))) == 2


def test_rational_function_field_is_fully_arboreal():
    f = RationalFnField(laurent(Base(FIN), 2))
    assert field_layer(f) == INF
    assert m_from_layer(f) == 16 == m_invariant(f)


def test_m_from_layer_examples():
    assert m_from_layer(make_layer_example(3, 2, FIN)) == 4
    for n in (1, 2, 3):
        assert m_from_layer(make_fully_arboreal_example(n, ALG)) == 2 ** (n + 1)
        assert m_from_layer(make_fully_arboreal_example(n, FIN)) == 2 ** (n + 2)
    with pytest.raises(HypothesisRequired):
        m_from_layer(make_layer_example(2, 1, BaseClass.custom(1, False)))


def test_layer_example_values():
    f = make_layer_example(1, 1, FIN)
    assert not f.model.is_tree and field_layer(f) == 1
    f = make_layer_example(3, 2, ALG)
    assert field_layer(f) == 2 and m_invariant(f) == 4
    f = make_layer_example(2, 2, FIN)
    assert (field_layer(f), m_invariant(f), u_invariant(f)) == (2, 4, 16)
    with pytest.raises(ValueError):
        make_layer_example(2, 3, FIN)
    with pytest.raises(ValueError):
        make_layer_example(2, 0, FIN)


def test_layer_in_terms_of_components():
    rng = random.Random(11)
    seen = 0
    for _ in range(400):
        f = random_semiglobal(3, FIN, rng)
        j = field_layer(f)
        if j == INF or j == 1:
            continue
        sub = [field_layer(SemiGlobal(f.over.residue, c.model)) for c in f.model.components if isinstance(c, Nested)]
        assert j == 1 + min(x for x in sub if x != INF)
        seen += 1
    assert seen > 20


def test_attainable_one_local():
    assert set(attainable_au(1, ALG)) == {frozenset({4}), frozenset({2, 4})}
    assert set(attainable_au(1, FIN)) == {frozenset({8}), frozenset({2, 8})}


def test_attainable_is_canonical():
    a = attainable_au(3, ALG)
    assert a == attainable_au(3, ALG)
    assert len(set(a)) == len(a)


def test_attainable_min_is_possible_m_custom_base():
    base = BaseClass.custom(2, True)
    for n in range(1, 4):
        assert {min(u) for u in attainable_au(n, base)} == possible_m(n, base)


def test_random_fields_land_in_attainable():
    rng = random.Random(5)
    for base in (ALG, FIN):
        for n in (1, 2, 3):
            allowed = set(attainable_au(n, base))
            for _ in range(100):
                assert au_set(random_semiglobal(n, base, rng)) in allowed


def test_canonical_graph_realises_flag():
    for comps in ((LEAF,), (LEAF, LEAF), (LEAF, LEAF, LEAF)):
        for m in (tree_model(*comps), loop_model(*comps)):
            g = canonical_graph(m)
            assert g.violations() == []
            assert g.kinds.count("c") == len(comps)
            assert is_tree(g) == m.is_tree


def test_dot_export():
    dot = to_dot(two_components_two_points(), "x")
    lines = dot.splitlines()
    assert lines[0] == "graph x {" and lines[-1] == "}"
    assert [l for l in lines if "--" in l] == ["  0 -- 2;", "  0 -- 3;", "  1 -- 2;", "  1 -- 3;"]


def test_is_tree_against_networkx_on_simple_graphs():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(1, 7)
        g = nx.gnm_random_graph(n, rng.randint(0, n * (n - 1) // 2), seed=rng.randrange(10**6))
        if not nx.is_connected(g):
            continue
        rg = ReductionGraph(n, tuple(g.edges()))
        assert is_tree(rg) == nx.is_tree(g)
