"""Truncated graph Fock space with sparse creation/annihilation operators.

Basis vectors are the vertex projections ``p_v`` (level 0) and composable
edge tensors ``e_1 (x) ... (x) e_k`` for ``k <= depth``.  The A-valued inner
product makes distinct basis tensors orthonormal, so each Y_e is a real
sparse matrix.  A word of length ``n <= depth`` never reaches beyond level
``n``, which makes its vacuum expectation exact up to round-off.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import BasisTooLarge, WordExceedsDepth
from .graph import WeightedGraph
from .lattice import TracialData
from .moments import as_word, phi_moment

DEFAULT_MAX_BASIS = 2_000_000


def max_basis_size() -> int:
    raw = os.environ.get("GRAPHVN_MAX_BASIS")
    return int(raw) if raw else DEFAULT_MAX_BASIS


def basis_size(graph: WeightedGraph, depth: int) -> int:
    """|V| + number of composable paths of length 1..depth."""
    count = {v: 1 for v in graph.vertices}
    total = len(graph.vertices)
    for _ in range(depth):
        count = {v: sum(count[e.target] for e in graph.out_edges(v)) for v in graph.vertices}
        total += sum(count.values())
    return total


@dataclass
class FockBasis:
    graph: WeightedGraph
    depth: int
    first: np.ndarray  # edge index of the leading tensor factor, -1 on level 0
    tail: np.ndarray  # basis index of the remaining tensor, -1 on level 0
    start: np.ndarray  # vertex index of s(e_1), or of the vertex itself
    level_offsets: list
    _ops: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.first)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.graph.edges)

    def vertex_index(self, v: str) -> int:
        return self.graph.vertices.index(v)

    def label(self, i: int) -> str:
        if self.first[i] < 0:
            return self.graph.vertices[i]
        parts = []
        while self.first[i] >= 0:
            parts.append(self.graph.edges[self.first[i]].id)
            i = self.tail[i]
        return "(x)".join(parts)

    def dump(self, stream) -> None:
        for i in range(len(self)):
            stream.write(f"{i}\t{self.label(i)}\n")


def build_basis(graph: WeightedGraph, depth: int, cap: int | None = None) -> FockBasis:
    if depth < 0:
        raise ValueError("depth must be >= 0")
    cap = max_basis_size() if cap is None else cap
    size = basis_size(graph, depth)
    if size > cap:
        raise BasisTooLarge(size, cap)

    vidx = {v: i for i, v in enumerate(graph.vertices)}
    nv = len(graph.vertices)
    first = [np.full(nv, -1, dtype=np.int64)]
    tail = [np.full(nv, -1, dtype=np.int64)]
    start = [np.arange(nv, dtype=np.int64)]
    offsets = [0]
    prev_idx = np.arange(nv, dtype=np.int64)
    prev_start = start[0]
    nxt = nv
    for _ in range(depth):
        f_parts, t_parts, s_parts = [], [], []
        for k, e in enumerate(graph.edges):
            tails = prev_idx[prev_start == vidx[e.target]]
            f_parts.append(np.full(len(tails), k, dtype=np.int64))
            t_parts.append(tails)
            s_parts.append(np.full(len(tails), vidx[e.source], dtype=np.int64))
        lf = np.concatenate(f_parts) if f_parts else np.zeros(0, dtype=np.int64)
        lt = np.concatenate(t_parts) if t_parts else np.zeros(0, dtype=np.int64)
        ls = np.concatenate(s_parts) if s_parts else np.zeros(0, dtype=np.int64)
        offsets.append(nxt)
        first.append(lf)
        tail.append(lt)
        start.append(ls)
        prev_idx = np.arange(nxt, nxt + len(lf), dtype=np.int64)
        prev_start = ls
        nxt += len(lf)
    return FockBasis(graph, depth, np.concatenate(first), np.concatenate(tail),
                     np.concatenate(start), offsets)


def creation_operator(basis: FockBasis, edge_id: str) -> sp.csr_matrix:
    """l(e): tail tensor -> e (x) tail; drops tensors beyond the depth."""
    k = basis.edge_ids.index(basis.graph.edge(edge_id).id)
    rows = np.flatnonzero(basis.first == k)
    n = len(basis)
    return sp.csr_matrix((np.ones(len(rows)), (rows, basis.tail[rows])), shape=(n, n))


def y_operator(basis: FockBasis, edge_id: str) -> sp.csr_matrix:
    """Y_e = l(e) + sqrt(mu(e)) l(op(e))^*, cached on the basis."""
    if edge_id in basis._ops:
        return basis._ops[edge_id]
    g = basis.graph
    e = g.edge(edge_id)
    ids = basis.edge_ids
    k = ids.index(e.id)
    kop = ids.index(e.op)
    n = len(basis)
    cre = np.flatnonzero(basis.first == k)
    ann = np.flatnonzero(basis.first == kop)
    rows = np.concatenate([cre, basis.tail[ann]])
    cols = np.concatenate([basis.tail[cre], ann])
    vals = np.concatenate([np.ones(len(cre)), np.full(len(ann), math.sqrt(e.weight))])
    op = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
    basis._ops[edge_id] = op
    return op


def vacuum_expectation(graph: WeightedGraph, basis: FockBasis, word, v: str) -> float:
    """<p_v, Y_{e_1} ... Y_{e_n} p_v> in the truncated Fock space."""
    prefactor, edges = as_word(word).normalized(graph)
    if len(edges) > basis.depth:
        raise WordExceedsDepth(len(edges), basis.depth)
    i = basis.vertex_index(v)
    vec = np.zeros(len(basis))
    vec[i] = 1.0
    for eid in reversed(edges):
        vec = y_operator(basis, eid) @ vec
    return float(prefactor) * float(vec[i])


@dataclass
class CrossRow:
    word: str
    exact: str
    exact_float: float
    fock: float
    deviation: float


@dataclass
class CrossReport:
    rows: list
    tol: float

    @property
    def max_deviation(self) -> float:
        return max((r.deviation for r in self.rows), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol

    def to_dict(self) -> dict:
        return {
            "tol": self.tol,
            "max_deviation": self.max_deviation,
            "passed": self.passed,
            "rows": [r.__dict__ for r in self.rows],
        }


def cross_validate(graph: WeightedGraph, td: TracialData, words, depth: int, tol: float = 1e-9,
                   fock_graph: WeightedGraph | None = None) -> CrossReport:
    """Exact moment engine against the Fock simulator, word by word.

    ``fock_graph`` (same ids, possibly other weights) feeds the simulator
    side only; it exists for negative controls.
    """
    sim_graph = graph if fock_graph is None else fock_graph
    basis = build_basis(sim_graph, depth)
    rows = []
    for w in words:
        w = as_word(w)
        _, edges = w.normalized(graph)
        if not edges:
            continue
        v = graph.source(edges[0])
        exact = phi_moment(graph, td, w)
        fock = td.state[v] * vacuum_expectation(sim_graph, basis, w, v)
        rows.append(CrossRow(str(w), str(exact), float(exact), float(fock), abs(float(exact) - float(fock))))
    return CrossReport(rows, tol)
