import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given

from graphvn import fixtures
from graphvn.errors import GraphFormatError, GraphInvalid, NonComposable, UnknownEdge
from graphvn.graph import (WeightedGraph, closed_walks, compose, format_rational, is_composable, load_graph,
                           parse_rational, reverse, shortest_path, simple_loops, validate)

from conftest import graphs


def doc(edges, vertices=("0", "1"), **extra):
    return {"vertices": list(vertices), "edges": edges, **extra}


def kinds(graph):
    return {v.kind for v in validate(graph)}


def test_rational_round_trip():
    assert parse_rational("6/1") == 6
    assert parse_rational("1/3") == Fraction(1, 3)
    assert format_rational(Fraction(6)) == "6/1"
    for bad in ("0", "-1/2", "x", "1/0", 1.5, True):
        with pytest.raises(GraphFormatError):
            parse_rational(bad)


def test_op_edges_are_synthesized():
    g = fixtures.base_case1(6, Fraction(1, 3))
    assert [e.id for e in g.edges] == ["e1", "e1^op", "e2", "e2^op"]
    assert g.weight("e1^op") == Fraction(1, 6)
    assert g.op(g.op("e2")) == "e2"
    assert g.source("e2^op") == "0" and g.target("e2^op") == "1"
    assert g.out_weight("1") == Fraction(1, 6) + Fraction(1, 3)
    assert validate(g) == []


def test_documents_round_trip():
    for name in fixtures.NAMES:
        g = fixtures.load_fixture(name)
        again = WeightedGraph.from_dict(json.loads(json.dumps(g.to_dict())))
        assert again.edges == g.edges and again.vertices == g.vertices


def test_explicit_op_inconsistent_weight():
    g = WeightedGraph.from_dict(doc([
        {"id": "a", "source": "0", "target": "1", "weight": "2", "op": "b"},
        {"id": "b", "source": "1", "target": "0", "weight": "2", "op": "a"},
    ]))
    assert "op-weight" in kinds(g)
    assert any("weight(op) != weight^{-1}" in str(v) for v in validate(g))


def test_explicit_op_consistent():
    g = WeightedGraph.from_dict(doc([
        {"id": "a", "source": "0", "target": "1", "weight": "2", "op": "b"},
        {"id": "b", "source": "1", "target": "0", "weight": "1/2", "op": "a"},
    ]))
    assert validate(g) == []


@pytest.mark.parametrize("edges,vertices,kind", [
    ([{"id": "a", "source": "0", "target": "2", "weight": "2"}], ("0", "1"), "endpoint"),
    ([{"id": "a", "source": "0", "target": "0", "weight": "2", "self_paired": True}], ("0",), "self-paired-weight"),
    ([{"id": "a", "source": "0", "target": "1", "weight": "1", "self_paired": True}], ("0", "1"), "self-paired-loop"),
    ([{"id": "a", "source": "0", "target": "0", "weight": "2"}], ("0", "1"), "connected"),
    ([{"id": "a", "source": "0", "target": "1", "weight": "2", "op": "zz"}], ("0", "1"), "involution"),
])
def test_violations(edges, vertices, kind):
    assert kind in kinds(WeightedGraph.from_dict(doc(edges, vertices)))


def test_empty_and_weight_cap():
    assert "empty" in kinds(WeightedGraph.from_dict({"vertices": [], "edges": []}))
    big = WeightedGraph.from_dict(doc([{"id": "a", "source": "0", "target": "1", "weight": str(2**64)}]))
    assert "weight-size" in kinds(big)


def test_bad_base():
    g = WeightedGraph.from_dict(doc([{"id": "a", "source": "0", "target": "1", "weight": "2"}], base="7"))
    assert "base" in kinds(g)


def test_load_graph(tmp_path):
    p = tmp_path / "g.json"
    p.write_text("{not json")
    with pytest.raises(GraphFormatError):
        load_graph(p)
    p.write_text(json.dumps(doc([{"id": "a", "source": "0", "target": "0", "weight": "3", "self_paired": True}], ("0",))))
    with pytest.raises(GraphInvalid):
        load_graph(p)
    assert load_graph(p, strict=False).edges[0].self_paired


def test_compose_and_reverse():
    g = fixtures.base_case1(6, Fraction(1, 3))
    p = compose(g, ["e1", "e2"])
    assert p.is_loop and p.weight == 2 and p.source == "0"
    r = reverse(g, p)
    assert r.edges == ("e2^op", "e1^op") and r.weight == Fraction(1, 2)
    with pytest.raises(NonComposable) as err:
        compose(g, ["e1", "e1"])
    assert err.value.index == 1
    with pytest.raises(UnknownEdge):
        compose(g, ["nope"])
    assert not is_composable(g, ["e1", "e2^op"])


def test_simple_loops_base_case1():
    g = fixtures.base_case1(6, Fraction(1, 3))
    loops = simple_loops(g, 2)
    assert len(loops) == 8
    assert sorted(len(p) for p in loops) == [2] * 8


def brute_simple_loops(g, max_len):
    out = set()
    for n in range(1, max_len + 1):
        for combo in itertools.product([e.id for e in g.edges], repeat=n):
            if not is_composable(g, combo):
                continue
            starts = [g.source(e) for e in combo]
            if g.target(combo[-1]) == starts[0] and len(set(starts)) == n:
                out.add(combo)
    return out


@given(graphs(max_vertices=4, max_pairs=4))
def test_simple_loops_match_brute_force(g):
    assert {p.edges for p in simple_loops(g, 3)} == brute_simple_loops(g, 3)


@given(graphs(max_vertices=4, max_pairs=4))
def test_closed_walks_are_loops(g):
    v = g.vertices[0]
    walks = closed_walks(g, v, 3)
    assert () in walks
    for w in walks:
        if w:
            assert is_composable(g, w) and g.source(w[0]) == v == g.target(w[-1])


@given(graphs())
def test_random_graphs_are_valid(g):
    assert validate(g) == []
    for v in g.vertices:
        path = shortest_path(g, g.vertices[0], v)
        assert (not path and v == g.vertices[0]) or compose(g, path).target == v
