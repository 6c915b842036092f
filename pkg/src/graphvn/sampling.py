"""Random graphs, words and weight lists for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .graph import Edge, WeightedGraph

WEIGHT_POOL = tuple(Fraction(x) for x in ("1/3", "1/2", "2/3", "3/4", "1", "4/3", "3/2", "2", "3", "5/2", "6"))


def random_graph(rng: random.Random, max_vertices: int = 8, max_pairs: int = 12,
                 min_vertices: int = 1, pool=WEIGHT_POOL, self_paired: bool = True) -> WeightedGraph:
    """Connected graph: a random spanning tree plus extra pairs (self-loops allowed)."""
    n = rng.randint(min_vertices, max_vertices)
    vertices = [str(i) for i in range(n)]
    ends = [(str(rng.randrange(i)), str(i)) for i in range(1, n)]
    for _ in range(rng.randint(0, max(0, max_pairs - len(ends)))):
        ends.append((rng.choice(vertices), rng.choice(vertices)))
    if not ends:
        ends.append(("0", "0"))
    rng.shuffle(ends)
    edges = []
    for k, (s, t) in enumerate(ends):
        eid = f"x{k}"
        if rng.random() < 0.5:
            s, t = t, s
        if s == t and self_paired and rng.random() < 0.25:
            edges.append(Edge(eid, s, t, Fraction(1), eid, True))
            continue
        w = rng.choice(pool)
        edges.append(Edge(eid, s, t, w, eid + "^op"))
        edges.append(Edge(eid + "^op", t, s, 1 / w, eid, False, True))
    return WeightedGraph(vertices, edges, "0")


def random_walk(rng: random.Random, graph: WeightedGraph, length: int, start: str | None = None) -> tuple[str, ...]:
    here = rng.choice(graph.vertices) if start is None else start
    out = []
    for _ in range(length):
        choices = graph.out_edges(here)
        if not choices:
            break
        e = rng.choice(choices)
        out.append(e.id)
        here = e.target
    return tuple(out)


def random_closed_walk(rng: random.Random, graph: WeightedGraph, length: int, start: str | None = None) -> tuple[str, ...]:
    """A walk that retraces a random half back home, so it is a loop (even length)."""
    half = random_walk(rng, graph, length // 2, start)
    back = [graph.op(e) for e in reversed(half)]
    if rng.random() < 0.5 and half:
        # shuffle which way home: interleave a detour that is itself a backtrack
        i = rng.randrange(len(half) + 1)
        v = graph.target(half[i - 1]) if i else graph.source(half[0])
        extra = random_walk(rng, graph, 1, v)
        if extra:
            half = half[:i] + extra + (graph.op(extra[0]),) + half[i:]
    return tuple(half) + tuple(back)


def random_word(rng: random.Random, graph: WeightedGraph, max_len: int, star_rate: float = 0.3) -> str:
    """Comma word: mostly composable walks, sometimes arbitrary edges; random stars."""
    n = rng.randint(1, max_len)
    kind = rng.random()
    if kind < 0.5:
        edges = random_closed_walk(rng, graph, n)[:max_len] or random_walk(rng, graph, n)
    elif kind < 0.8:
        edges = random_walk(rng, graph, n)
    else:
        edges = tuple(rng.choice(graph.edges).id for _ in range(n))
    letters = []
    for e in edges:
        if rng.random() < star_rate:
            letters.append(graph.op(e) + "*")
        else:
            letters.append(e)
    return ",".join(letters)


def random_weights(rng: random.Random, max_len: int = 10, pool=WEIGHT_POOL) -> list[Fraction]:
    """Weight list with product >= 1 (the last entry is bumped when needed)."""
    ws = [rng.choice(pool) for _ in range(rng.randint(1, max_len))]
    prod = Fraction(1)
    for w in ws:
        prod *= w
    if prod < 1:
        ws[-1] = ws[-1] / prod * rng.choice((1, 1, Fraction(3, 2), 2))
    return ws
