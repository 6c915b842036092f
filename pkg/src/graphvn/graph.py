"""Weighted directed graphs with an edge involution, paths and loops.

A graph document lists one edge per ``{e, e^op}`` pair; the opposite edge is
synthesized with id ``"<id>^op"`` and the inverse weight.  An edge may instead
name its partner explicitly with an ``"op"`` key, in which case nothing is
synthesized and the pairing is only checked by :func:`validate`.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Iterable, Iterator, Sequence

from .errors import GraphFormatError, GraphInvalid, NonComposable, UnknownEdge

MAX_WEIGHT_PART = 2**63
OP_SUFFIX = "^op"


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` (or an int) into a positive Fraction."""
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise GraphFormatError(f"weight must be a 'p/q' string, got {text!r}")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphFormatError(f"cannot parse weight {text!r}") from exc
    if value <= 0:
        raise GraphFormatError(f"weight {text!r} is not positive")
    return value


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str
    weight: Fraction
    op: str
    self_paired: bool = False
    synthesized: bool = False

    @property
    def is_self_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: str
    message: str

    def __str__(self):
        return f"{self.subject}: {self.message}"


class WeightedGraph:
    """Finite directed graph with edge involution ``op`` and weights ``mu``.

    Construction never validates; call :func:`validate` (or load through
    :func:`load_graph`) before handing a graph to the algebraic routines.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge], base: str | None = None):
        self.vertices: tuple[str, ...] = tuple(sorted(set(vertices)))
        self.edges: tuple[Edge, ...] = tuple(sorted(edges, key=lambda e: e.id))
        self.base = base
        self._by_id = {e.id: e for e in self.edges}
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out.setdefault(e.source, []).append(e)
        self._out = {v: tuple(es) for v, es in out.items()}

    # lookups

    def __contains__(self, edge_id) -> bool:
        return edge_id in self._by_id

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise UnknownEdge(edge_id) from None

    def weight(self, edge_id: str) -> Fraction:
        return self.edge(edge_id).weight

    def op(self, edge_id: str) -> str:
        return self.edge(edge_id).op

    def source(self, edge_id: str) -> str:
        return self.edge(edge_id).source

    def target(self, edge_id: str) -> str:
        return self.edge(edge_id).target

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        return self._out.get(v, ())

    def out_weight(self, v: str) -> Fraction:
        """Sum of ``mu(e)`` over every edge with source ``v``."""
        return sum((e.weight for e in self.out_edges(v)), Fraction(0))

    def edge_pairs(self) -> list[tuple[str, str]]:
        """One ``(e, op(e))`` per orbit of the involution, smallest id first."""
        seen = set()
        pairs = []
        for e in self.edges:
            if e.id in seen:
                continue
            seen.update((e.id, e.op))
            pairs.append((e.id, e.op))
        return pairs

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            if e.source in adj and e.target in adj:
                adj[e.source].add(e.target)
                adj[e.target].add(e.source)
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    # documents

    @classmethod
    def from_dict(cls, doc: dict) -> "WeightedGraph":
        if not isinstance(doc, dict):
            raise GraphFormatError("graph document must be a JSON object")
        try:
            vertices = [str(v) for v in doc["vertices"]]
            raw_edges = doc["edges"]
        except (KeyError, TypeError) as exc:
            raise GraphFormatError(f"missing field {exc}") from exc
        if len(set(vertices)) != len(vertices):
            raise GraphFormatError("duplicate vertex ids")
        edges = []
        for raw in raw_edges:
            try:
                eid = str(raw["id"])
                src, tgt = str(raw["source"]), str(raw["target"])
            except (KeyError, TypeError) as exc:
                raise GraphFormatError(f"edge missing field {exc}") from exc
            w = parse_rational(raw.get("weight", "1/1"))
            paired = bool(raw.get("self_paired", False))
            if paired:
                edges.append(Edge(eid, src, tgt, w, eid, True))
            elif "op" in raw:
                edges.append(Edge(eid, src, tgt, w, str(raw["op"])))
            else:
                op_id = eid + OP_SUFFIX
                edges.append(Edge(eid, src, tgt, w, op_id))
                edges.append(Edge(op_id, tgt, src, 1 / w, eid, False, True))
        base = doc.get("base")
        return cls(vertices, edges, None if base is None else str(base))

    def to_dict(self) -> dict:
        out = []
        for e in self.edges:
            if e.synthesized:
                continue
            item = {"id": e.id, "source": e.source, "target": e.target,
                    "weight": format_rational(e.weight)}
            if e.self_paired:
                item["self_paired"] = True
            elif e.op != e.id + OP_SUFFIX or e.op not in self or not self.edge(e.op).synthesized:
                item["op"] = e.op
            out.append(item)
        doc = {"vertices": list(self.vertices)}
        if self.base is not None:
            doc["base"] = self.base
        doc["edges"] = out
        return doc

    def relabeled(self, vertex_map: dict, edge_map: dict) -> "WeightedGraph":
        """Copy with vertex and edge ids renamed (maps must be injective)."""
        vm = lambda v: vertex_map.get(v, v)
        em = lambda e: edge_map.get(e, e)
        edges = [Edge(em(e.id), vm(e.source), vm(e.target), e.weight, em(e.op),
                      e.self_paired, e.synthesized) for e in self.edges]
        base = None if self.base is None else vm(self.base)
        return WeightedGraph([vm(v) for v in self.vertices], edges, base)

    def with_weight(self, edge_id: str, weight: Fraction) -> "WeightedGraph":
        """Copy with ``mu(edge_id)`` replaced and ``mu(op)`` kept consistent."""
        e = self.edge(edge_id)
        weight = Fraction(weight)
        edges = []
        for f in self.edges:
            if f.id == e.id:
                f = Edge(f.id, f.source, f.target, weight, f.op, f.self_paired, f.synthesized)
            elif f.id == e.op:
                f = Edge(f.id, f.source, f.target, 1 / weight, f.op, f.self_paired, f.synthesized)
            edges.append(f)
        return WeightedGraph(self.vertices, edges, self.base)

    def __repr__(self):
        return f"WeightedGraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


def load_graph(path, strict: bool = True) -> WeightedGraph:
    """Read a graph document from ``path``; raise GraphInvalid if ``strict``."""
    text = FilePath(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: invalid JSON ({exc})") from exc
    graph = WeightedGraph.from_dict(doc)
    if strict:
        problems = validate(graph)
        if problems:
            raise GraphInvalid(problems)
    return graph


def validate(graph: WeightedGraph) -> list[Violation]:
    """Every violated structural axiom; an empty list means the graph is valid."""
    found = []

    def bad(kind, subject, message):
        found.append(Violation(kind, subject, message))

    if not graph.vertices:
        bad("empty", "graph", "graph has no vertices")
    vset = set(graph.vertices)
    ids = [e.id for e in graph.edges]
    for eid in sorted({i for i in ids if ids.count(i) > 1}):
        bad("duplicate", eid, "duplicate edge id")
    if graph.base is not None and graph.base not in vset:
        bad("base", graph.base, "base is not a vertex")

    for e in graph.edges:
        for end in (e.source, e.target):
            if end not in vset:
                bad("endpoint", e.id, f"endpoint {end!r} is not a vertex")
        if e.weight.numerator > MAX_WEIGHT_PART or e.weight.denominator > MAX_WEIGHT_PART:
            bad("weight-size", e.id, "weight numerator/denominator exceeds 2^63")
        if e.self_paired:
            if e.op != e.id:
                bad("involution", e.id, "self-paired edge must be its own op")
            if e.weight != 1:
                bad("self-paired-weight", e.id, "self-paired weight must be 1")
            if e.source != e.target:
                bad("self-paired-loop", e.id, "self-paired edge must be a self-loop")
            continue
        if e.op not in graph:
            bad("involution", e.id, f"op edge {e.op!r} does not exist")
            continue
        f = graph.edge(e.op)
        if f.op != e.id:
            bad("involution", e.id, "op(op(e)) != e")
        if f.id == e.id:
            bad("involution", e.id, "op(e) = e on an edge that is not self-paired")
        if f.source != e.target or f.target != e.source:
            bad("op-endpoints", e.id, "op edge does not reverse source and target")
        if f.weight * e.weight != 1:
            bad("op-weight", e.id, "weight(op) != weight^{-1}")

    if graph.vertices and not graph.is_connected():
        bad("connected", "graph", "graph is not connected")
    return sorted(found, key=lambda v: (v.subject, v.kind, v.message))


# paths


@dataclass(frozen=True)
class Path:
    edges: tuple[str, ...]
    source: str
    target: str
    weight: Fraction

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def __len__(self):
        return len(self.edges)


def compose(graph: WeightedGraph, edge_ids: Sequence[str]) -> Path:
    """Chain ``edge_ids`` into a Path; raises NonComposable(index) on a gap."""
    if not edge_ids:
        raise ValueError("a path needs at least one edge")
    first = graph.edge(edge_ids[0])
    weight = first.weight
    here = first.target
    for i, eid in enumerate(edge_ids[1:], start=1):
        e = graph.edge(eid)
        if e.source != here:
            raise NonComposable(i)
        weight *= e.weight
        here = e.target
    return Path(tuple(edge_ids), first.source, here, weight)


def reverse(graph: WeightedGraph, path: Path) -> Path:
    return compose(graph, [graph.op(e) for e in reversed(path.edges)])


def is_composable(graph: WeightedGraph, edge_ids: Sequence[str]) -> bool:
    return all(graph.target(a) == graph.source(b) for a, b in zip(edge_ids, edge_ids[1:]))


def simple_loops(graph: WeightedGraph, max_len: int) -> list[Path]:
    """Loops of length <= max_len that revisit only their base vertex.

    Each rotation of a cycle is a separate loop (its base differs).  Sorted by
    length, then by the tuple of edge ids.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    found = []
    for base in graph.vertices:
        stack = [(base, (), frozenset([base]))]
        while stack:
            here, ids, seen = stack.pop()
            for e in graph.out_edges(here):
                if e.target == base:
                    found.append(ids + (e.id,))
                elif e.target not in seen and len(ids) + 1 < max_len:
                    stack.append((e.target, ids + (e.id,), seen | {e.target}))
    found.sort(key=lambda ids: (len(ids), ids))
    return [compose(graph, ids) for ids in found]


def walks(graph: WeightedGraph, start: str, length: int) -> Iterator[tuple[str, ...]]:
    """All composable edge sequences of the given length starting at ``start``."""
    if length == 0:
        yield ()
        return
    for e in graph.out_edges(start):
        for rest in walks(graph, e.target, length - 1):
            yield (e.id,) + rest


def closed_walks(graph: WeightedGraph, v: str, max_len: int) -> list[tuple[str, ...]]:
    """Closed walks at ``v`` of length 0..max_len (the empty walk included)."""
    out = []
    for n in range(max_len + 1):
        out.extend(w for w in walks(graph, v, n) if not w or graph.target(w[-1]) == v)
    return out


def shortest_path(graph: WeightedGraph, start: str, goal: str) -> tuple[str, ...]:
    """Lexicographically first shortest directed edge path (BFS)."""
    prev: dict[str, tuple[str, str] | None] = {start: None}
    queue = deque([start])
    while queue:
        here = queue.popleft()
        if here == goal:
            break
        for e in graph.out_edges(here):
            if e.target not in prev:
                prev[e.target] = (here, e.id)
                queue.append(e.target)
    if goal not in prev:
        raise ValueError(f"{goal!r} unreachable from {start!r}")
    ids = []
    here = goal
    while prev[here] is not None:
        here, eid = prev[here]
        ids.append(eid)
    return tuple(reversed(ids))
