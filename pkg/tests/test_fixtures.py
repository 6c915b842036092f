import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from graphvn import fixtures
from graphvn.graph import validate
from graphvn.moments import as_word
from graphvn.sampling import random_closed_walk, random_graph, random_weights, random_word


def test_shipped_json_matches_builders():
    for name, build in fixtures.BUILDERS.items():
        assert fixtures.load_fixture(name).to_dict() == build().to_dict()
        assert validate(fixtures.load_fixture(name)) == []


def test_generators():
    g = fixtures.base_case3([2, 3, Fraction(1, 2), 5])
    assert [e.id for e in g.edges if not e.synthesized] == ["e1", "e2", "e3", "e4"]
    assert g.source("e4") == "3" and g.target("e4") == "0"
    assert len(fixtures.switcheroo([2, 3, 5]).edge_pairs()) == 3


@given(st.integers(0, 10**6))
def test_sampler_outputs(seed):
    rng = random.Random(seed)
    g = random_graph(rng)
    assert validate(g) == [] and len(g.vertices) <= 8 and len(g.edge_pairs()) <= 12
    w = random_closed_walk(rng, g, 6)
    if w:
        assert g.source(w[0]) == g.target(w[-1])
    _, edges = as_word(random_word(rng, g, 8)).normalized(g)
    assert len(edges) <= 8
    ws = random_weights(rng)
    prod = Fraction(1)
    for x in ws:
        prod *= x
    assert prod >= 1 and 1 <= len(ws) <= 10
