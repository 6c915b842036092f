"""The loop-weight group H as an integer lattice, and tracial subgraphs.

Positive rationals are identified with their prime-exponent vectors, so the
multiplicative group generated by loop weights becomes a sublattice of Z^k.
Loop weights factor through the cycle space of the graph, hence H is spanned
by the weights of the fundamental cycles of any spanning tree.  The lattice is
stored in Hermite normal form, which makes equality of groups a plain
comparison of bases.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from sympy import factorint

from .errors import WeightNotFactorable
from .graph import MAX_WEIGHT_PART, WeightedGraph, format_rational


@lru_cache(maxsize=4096)
def _factor_int(n: int) -> tuple[tuple[int, int], ...]:
    if n > MAX_WEIGHT_PART:
        raise WeightNotFactorable(f"{n} exceeds the factorization budget (2^63)")
    return tuple(sorted(factorint(n).items()))


def factor_rational(q) -> dict[int, int]:
    """Prime -> exponent map of a positive rational (negative for the denominator)."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("only positive rationals have exponent vectors")
    out = dict(_factor_int(q.numerator))
    for p, k in _factor_int(q.denominator):
        out[p] = out.get(p, 0) - k
    return out


def hermite_normal_form(rows: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style HNF: echelon, positive pivots, entries above a pivot in [0, pivot)."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for col in range(ncols):
        if r == len(a):
            break
        while True:
            live = [i for i in range(r, len(a)) if a[i][col] != 0]
            if not live:
                break
            k = min(live, key=lambda i: abs(a[i][col]))
            a[r], a[k] = a[k], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // a[r][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if a[r][col] == 0:
            continue
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
        piv = a[r][col]
        for i in range(r):
            q = a[i][col] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return [tuple(row) for row in a[:r]]


def _pivot(row: Sequence[int]) -> int:
    return next(i for i, x in enumerate(row) if x)


@dataclass(frozen=True)
class CycleLattice:
    primes: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_trivial(self) -> bool:
        return not self.basis

    def vector(self, x) -> tuple[int, ...] | None:
        """Exponent vector of x over ``primes``, or None if x uses other primes."""
        exps = factor_rational(x)
        if any(p not in self.primes for p, k in exps.items() if k):
            return None
        return tuple(exps.get(p, 0) for p in self.primes)

    def generators(self) -> list[Fraction]:
        out = []
        for row in self.basis:
            g = Fraction(1)
            for p, k in zip(self.primes, row):
                g *= Fraction(p) ** k
            out.append(g)
        return out

    def to_dict(self) -> dict:
        return {"rank": self.rank, "generators": [format_rational(g) for g in self.generators()]}


def lattice_from_weights(weights: Iterable, primes: Sequence[int] | None = None) -> CycleLattice:
    """The HNF lattice of the subgroup of Q+ generated by ``weights``."""
    weights = [Fraction(w) for w in weights]
    facts = [factor_rational(w) for w in weights]
    if primes is None:
        primes = sorted({p for f in facts for p in f})
    primes = tuple(primes)
    rows = [tuple(f.get(p, 0) for p in primes) for f in facts]
    return CycleLattice(primes, tuple(hermite_normal_form(rows)))


def contains(lattice: CycleLattice, x) -> bool:
    """Membership of a positive rational in the group, by back-substitution."""
    vec = lattice.vector(x)
    if vec is None:
        return False
    vec = list(vec)
    for row in lattice.basis:
        c = _pivot(row)
        if any(vec[:c]):
            return False
        if vec[c] % row[c]:
            return False
        q = vec[c] // row[c]
        vec = [x - q * y for x, y in zip(vec, row)]
    return not any(vec)


# spanning trees and potentials


def _edge_vectors(graph: WeightedGraph, primes: Sequence[int]) -> dict[str, tuple[int, ...]]:
    out = {}
    for e in graph.edges:
        f = factor_rational(e.weight)
        out[e.id] = tuple(f.get(p, 0) for p in primes)
    return out


def weight_primes(graph: WeightedGraph) -> tuple[int, ...]:
    ps = set()
    for e in graph.edges:
        ps.update(factor_rational(e.weight))
    return tuple(sorted(ps))


def bfs_tree(graph: WeightedGraph, base: str, seed: Sequence[str] = ()) -> list[str]:
    """Directed spanning-tree edges (parent -> child), seeded path first.

    ``seed`` must be a path from ``base`` visiting distinct vertices; its
    edges are taken into the tree before the breadth-first sweep, which scans
    out-edges in id order.
    """
    seen = {base}
    order = [base]
    tree = []
    for eid in seed:
        e = graph.edge(eid)
        if e.source not in seen or e.target in seen:
            raise ValueError(f"seed edge {eid!r} does not extend a simple path from {base!r}")
        seen.add(e.target)
        order.append(e.target)
        tree.append(eid)
    queue = deque(order)
    while queue:
        here = queue.popleft()
        for e in graph.out_edges(here):
            if e.target not in seen:
                seen.add(e.target)
                tree.append(e.id)
                queue.append(e.target)
    return tree


def orient_tree(graph: WeightedGraph, base: str, tree: Iterable[str]) -> list[str]:
    """Orient an undirected spanning tree (edges given in either direction) away from base."""
    adj: dict[str, list[str]] = {}
    for eid in tree:
        for x in (eid, graph.op(eid)):
            adj.setdefault(graph.source(x), []).append(x)
    seen = {base}
    out = []
    queue = deque([base])
    while queue:
        here = queue.popleft()
        for x in sorted(adj.get(here, ())):
            t = graph.target(x)
            if t not in seen:
                seen.add(t)
                out.append(x)
                queue.append(t)
    if len(seen) != len(graph.vertices):
        raise ValueError("edge set does not span the graph")
    return out


def spanning_trees(graph: WeightedGraph) -> Iterator[tuple[str, ...]]:
    """Every spanning tree, as tuples of pair representatives (self-loops never qualify)."""
    pairs = [(a, b) for a, b in graph.edge_pairs() if graph.source(a) != graph.target(a)]
    need = len(graph.vertices) - 1
    index = {v: i for i, v in enumerate(graph.vertices)}
    for combo in itertools.combinations(pairs, need):
        parent = list(range(len(index)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        ok = True
        for a, _ in combo:
            x, y = find(index[graph.source(a)]), find(index[graph.target(a)])
            if x == y:
                ok = False
                break
            parent[x] = y
        if ok:
            yield tuple(a for a, _ in combo)


def cycle_group(graph: WeightedGraph, tree: Iterable[str] | None = None) -> CycleLattice:
    """H as an HNF lattice, from the fundamental cycles of ``tree``.

    ``tree`` defaults to the breadth-first tree from the first vertex.
    """
    primes = weight_primes(graph)
    vec = _edge_vectors(graph, primes)
    root = graph.vertices[0]
    directed = bfs_tree(graph, root) if tree is None else orient_tree(graph, root, tree)
    pot = {root: (0,) * len(primes)}
    in_tree = set()
    for eid in directed:
        e = graph.edge(eid)
        pot[e.target] = tuple(x + y for x, y in zip(pot[e.source], vec[eid]))
        in_tree.update((eid, e.op))
    rows = []
    for a, _ in graph.edge_pairs():
        if a in in_tree:
            continue
        e = graph.edge(a)
        rows.append(tuple(s + w - t for s, w, t in zip(pot[e.source], vec[a], pot[e.target])))
    return CycleLattice(primes, tuple(hermite_normal_form(rows)))


# tracial subgraph and induced state


@dataclass(frozen=True)
class TracialData:
    tr_edges: frozenset
    tree: tuple[str, ...]
    base: str
    state: dict = field(compare=True)

    @property
    def total(self) -> Fraction:
        return sum(self.state.values(), Fraction(0))

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "tree": list(self.tree),
            "edges": sorted(self.tr_edges),
            "state": {v: format_rational(q) for v, q in sorted(self.state.items())},
        }


def tracial_subgraph(graph: WeightedGraph, base: str | None = None,
                     seed: Sequence[str] = (), tree: Iterable[str] | None = None) -> TracialData:
    """A maximal subgraph all of whose loops have weight 1, and its vertex state.

    The state is the potential ``phi(p_base) = 1``, ``phi(p_t) = mu(e) phi(p_s)``
    along the spanning tree; the subgraph is the tree closed under every edge
    consistent with that potential.  ``seed`` forces a path from ``base`` into
    the tree; ``tree`` replaces the breadth-first tree altogether.
    """
    if base is None:
        base = graph.base if graph.base is not None else graph.vertices[0]
    if tree is not None:
        directed = orient_tree(graph, base, tree)
    else:
        directed = bfs_tree(graph, base, seed)
    state = {base: Fraction(1)}
    for eid in directed:
        e = graph.edge(eid)
        state[e.target] = state[e.source] * e.weight
    tr = frozenset(e.id for e in graph.edges if state[e.target] == state[e.source] * e.weight)
    return TracialData(tr, tuple(directed), base, dict(sorted(state.items())))


def edge_eigenvalue(graph: WeightedGraph, td: TracialData, edge_id: str) -> Fraction:
    """``mu(e) mu(sigma)`` for any Gamma_Tr path sigma from t(e) back to s(e)."""
    e = graph.edge(edge_id)
    return td.state[e.source] * e.weight / td.state[e.target]
