import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphvn import fixtures
from graphvn.errors import WeightNotFactorable
from graphvn.graph import simple_loops
from graphvn.lattice import (contains, cycle_group, edge_eigenvalue, factor_rational, hermite_normal_form,
                             lattice_from_weights, spanning_trees, tracial_subgraph)
from graphvn.selftest import random_relabeling, reversed_orientation

from conftest import graphs

small_ints = st.integers(-6, 6)
matrices = st.lists(st.lists(small_ints, min_size=3, max_size=3), max_size=5)


def test_factor_rational():
    assert factor_rational(Fraction(12, 5)) == {2: 2, 3: 1, 5: -1}
    assert factor_rational(1) == {}
    with pytest.raises(WeightNotFactorable):
        factor_rational(Fraction(2**70 + 1))


def test_hnf_shape():
    h = hermite_normal_form([(4, 6), (2, 2)])
    # pivots positive, entries above pivots reduced
    assert h == [(2, 0), (0, 2)]


def is_hnf(rows):
    pivots = []
    for row in rows:
        nz = [i for i, x in enumerate(row) if x]
        assert nz, "zero row"
        p = nz[0]
        assert row[p] > 0
        assert not pivots or p > pivots[-1]
        pivots.append(p)
    for k, p in enumerate(pivots):
        for above in rows[:k]:
            assert 0 <= above[p] < rows[k][p]
    return True


@given(matrices)
def test_hnf_is_canonical(rows):
    h = hermite_normal_form(rows)
    assert is_hnf(h) if h else True
    assert hermite_normal_form(h) == h


@given(matrices, st.randoms(use_true_random=False))
def test_hnf_invariant_under_unimodular_row_ops(rows, rnd):
    mixed = [list(r) for r in rows]
    rnd.shuffle(mixed)
    for _ in range(6):
        if len(mixed) < 2:
            break
        i, j = rnd.sample(range(len(mixed)), 2)
        c = rnd.randint(-3, 3)
        mixed[i] = [a + c * b for a, b in zip(mixed[i], mixed[j])]
        if rnd.random() < 0.3:
            mixed[j] = [-x for x in mixed[j]]
    assert hermite_normal_form(mixed) == hermite_normal_form(rows)


def test_lattice_membership():
    L = lattice_from_weights([Fraction(4), Fraction(6)])
    assert contains(L, Fraction(24)) and contains(L, Fraction(2, 3)) and contains(L, Fraction(1))
    assert not contains(L, Fraction(2)) and not contains(L, Fraction(5))
    assert L.rank == 2 and lattice_from_weights(L.generators()) == L


@pytest.mark.parametrize("name,gens", [
    ("base_case1", [Fraction(2)]),
    ("tracial_triangle", []),
    ("degenerate", []),
    ("switcheroo", [Fraction(2, 3)]),
    ("base_case3", [Fraction(6)]),
])
def test_cycle_group_fixtures(name, gens):
    assert cycle_group(fixtures.load_fixture(name)).generators() == gens


@given(graphs(max_vertices=5, max_pairs=6))
def test_cycle_group_matches_loop_oracle(g):
    # simple loops generate H; fundamental cycles are one particular choice of them
    weights = [p.weight for p in simple_loops(g, len(g.vertices))]
    H = cycle_group(g)
    assert lattice_from_weights(weights, H.primes) == H


@given(graphs(max_vertices=5, max_pairs=7), st.integers(0, 10**6))
def test_cycle_group_canonical(g, seed):
    ref = cycle_group(g)
    for tree in spanning_trees(g):
        assert cycle_group(g, tree) == ref
    rng = random.Random(seed)
    assert cycle_group(random_relabeling(rng, g)).basis == ref.basis
    assert cycle_group(reversed_orientation(g)).basis == ref.basis


def loops_inside(g, edges, max_len):
    sub = set(edges)
    return [p for p in simple_loops(g, max_len) if set(p.edges) <= sub]


@given(graphs(max_vertices=5, max_pairs=7))
def test_tracial_subgraph_properties(g):
    td = tracial_subgraph(g)
    assert td.state[td.base] == 1
    assert set(td.state) == set(g.vertices)
    # closed under op, every loop inside has weight 1
    assert all(g.op(e) in td.tr_edges for e in td.tr_edges)
    assert all(p.weight == 1 for p in loops_inside(g, td.tr_edges, len(g.vertices)))
    # maximal: any other edge closes a loop of weight != 1
    for e in g.edges:
        if e.id not in td.tr_edges:
            assert edge_eigenvalue(g, td, e.id) != 1
        else:
            assert edge_eigenvalue(g, td, e.id) == 1


@given(graphs(max_vertices=5, max_pairs=7))
def test_state_changes_by_h(g):
    # two tracial subgraphs give states whose vertex ratios differ by elements of H
    H = cycle_group(g)
    trees = list(spanning_trees(g))
    if len(trees) < 2:
        return
    base = g.vertices[0]
    s1 = tracial_subgraph(g, base, tree=trees[0]).state
    s2 = tracial_subgraph(g, base, tree=trees[-1]).state
    for v in g.vertices:
        assert contains(H, s1[v] / s2[v])


def test_tracial_triangle_state():
    td = tracial_subgraph(fixtures.load_fixture("tracial_triangle"))
    assert td.state == {"0": 1, "1": 2, "2": 6}
    assert len(td.tr_edges) == 6


def test_seeded_tree():
    g = fixtures.load_fixture("switcheroo")
    assert tracial_subgraph(g, "0", seed=["e2"]).state["1"] == 2
    assert tracial_subgraph(g, "0", seed=["e1"]).state["1"] == 3
    with pytest.raises(ValueError):
        tracial_subgraph(g, "0", seed=["e1^op"])
