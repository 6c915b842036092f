"""Exact moments of words in the edge operators Y_e.

A word is a sequence of letters ``Y_e`` or ``Y_e^*``.  Stars are removed with
``Y_e^* = sqrt(mu(e)) Y_{op(e)}`` so every word becomes a scalar prefactor
times a plain product ``Y_{e_1} ... Y_{e_n}``.  For a composable loop the
conditional expectation onto the vertex algebra is ``alpha * p_{s(e_1)}``
where ``alpha`` sums, over non-crossing pairings of the positions, the
product of ``sqrt(mu(e_i))`` over pairs ``i < j`` with ``e_j = op(e_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import VertexMismatch
from .graph import WeightedGraph, is_composable
from .lattice import TracialData, edge_eigenvalue
from .surd import ONE, ZERO, SurdScalar


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[str, bool], ...]

    @classmethod
    def parse(cls, text: str) -> "Word":
        """``"e1,e2*,e1^op"``: comma separated edge ids, trailing ``*`` for an adjoint."""
        letters = []
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                continue
            star = tok.endswith("*")
            letters.append((tok[:-1] if star else tok, star))
        return cls(tuple(letters))

    @classmethod
    def of(cls, edges: Sequence[str]) -> "Word":
        return cls(tuple((e, False) for e in edges))

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + as_word(other).letters)

    def adjoint(self) -> "Word":
        return Word(tuple((e, not s) for e, s in reversed(self.letters)))

    def normalized(self, graph: WeightedGraph) -> tuple[SurdScalar, tuple[str, ...]]:
        """(prefactor, edges) with every starred letter rewritten as sqrt(mu) Y_op."""
        factor = Fraction(1)
        edges = []
        for e, star in self.letters:
            if star:
                factor *= graph.weight(e)
                edges.append(graph.op(e))
            else:
                graph.edge(e)
                edges.append(e)
        return SurdScalar.sqrt(factor), tuple(edges)

    def __str__(self):
        return ",".join(e + ("*" if s else "") for e, s in self.letters)


def as_word(word) -> Word:
    if isinstance(word, Word):
        return word
    if isinstance(word, str):
        return Word.parse(word)
    return Word.of(tuple(word))


def _loop_at(graph: WeightedGraph, edges: Sequence[str]) -> str | None:
    """Base vertex if ``edges`` is a composable loop, else None."""
    if not is_composable(graph, edges):
        return None
    s = graph.source(edges[0])
    return s if graph.target(edges[-1]) == s else None


def pairing_sum(graph: WeightedGraph, edges: Sequence[str]) -> SurdScalar:
    """Sum over non-crossing pairings of the op-matched sqrt-weight products.

    Interval recursion: position ``i`` pairs with some ``k`` (odd distance),
    splitting the word into an inside and an outside part.
    """
    n = len(edges)
    if n % 2:
        return ZERO
    ops = [graph.op(e) for e in edges]
    roots = [SurdScalar.sqrt(graph.weight(e)) for e in edges]

    @lru_cache(maxsize=None)
    def block(i: int, j: int) -> SurdScalar:
        if i == j:
            return ONE
        total = ZERO
        for k in range(i + 1, j, 2):
            if edges[k] != ops[i]:
                continue
            inner = block(i + 1, k)
            if not inner:
                continue
            outer = block(k + 1, j)
            if outer:
                total = total + roots[i] * inner * outer
        return total

    return block(0, n)


def expectation_coefficient(graph: WeightedGraph, word) -> SurdScalar:
    """alpha with E(word) = alpha * p_{s(e_1)}; zero unless the word is a composable loop."""
    prefactor, edges = as_word(word).normalized(graph)
    if not edges:
        return prefactor
    if len(edges) % 2 or _loop_at(graph, edges) is None:
        return ZERO
    return prefactor * pairing_sum(graph, edges)


def phi_moment(graph: WeightedGraph, td: TracialData, word, vertex: str | None = None) -> SurdScalar:
    """phi(E(word)); the empty word stands for the vertex projection ``p_vertex``."""
    w = as_word(word)
    prefactor, edges = w.normalized(graph)
    if not edges:
        if vertex is None:
            raise ValueError("the empty word needs an explicit vertex")
        return prefactor * td.state[vertex]
    return expectation_coefficient(graph, w) * td.state[graph.source(edges[0])]


@dataclass(frozen=True)
class EigenCheck:
    lhs: SurdScalar
    rhs: SurdScalar
    eigenvalue: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def check_eigen_identity(graph: WeightedGraph, td: TracialData, edge_id: str, word) -> EigenCheck:
    """Compare phi(Y_e Q) against eigenvalue(e) * phi(Q Y_e), exactly."""
    q = as_word(word)
    e = Word.of((edge_id,))
    lam = edge_eigenvalue(graph, td, edge_id)
    lhs = phi_moment(graph, td, e + q)
    rhs = phi_moment(graph, td, q + e) * lam
    return EigenCheck(lhs, rhs, lam)


def gram_matrix(graph: WeightedGraph, td: TracialData, words, v: str) -> list[list[SurdScalar]]:
    """G[i][j] = phi(w_i^* w_j) for words that are loops at ``v``."""
    ws = [as_word(w) for w in words]
    for w in ws:
        _, edges = w.normalized(graph)
        if edges and _loop_at(graph, edges) != v:
            raise VertexMismatch(f"word {w} is not a loop at {v!r}")
    return [[phi_moment(graph, td, a.adjoint() + b, vertex=v) for b in ws] for a in ws]


def gram_min_eigenvalue(gram: list[list[SurdScalar]]) -> float:
    if not gram:
        return 0.0
    m = np.array([[float(x) for x in row] for row in gram])
    return float(np.linalg.eigvalsh((m + m.T) / 2).min())
