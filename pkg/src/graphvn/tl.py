"""Balanced weightings, Temperley-Lieb diagrams and the loop-algebra inclusion.

A TL diagram with ``2n`` boundary points is a non-crossing perfect matching
of ``0..2n-1``.  The inclusion sends a diagram to the sum of all loops at a
vertex whose edge labels respect the matching (``e_j = op(e_i)`` on each pair
``i < j``), weighted by ``prod mu(e_i)^a`` over left ends.  The exponent
``a`` and the trace normalization are calibrated on ``n <= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian

from .errors import DeltaMismatch, NotBalancedError, SizeMismatch
from .graph import WeightedGraph, format_rational
from .moments import expectation_coefficient
from .surd import ONE, ZERO, SurdScalar

NORMALIZATIONS = ("default", "unnormalized")
EXPONENTS = (Fraction(1, 2), Fraction(1))


@lru_cache(maxsize=None)
def nc_pairings(m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All non-crossing perfect matchings of 0..m-1, pairs sorted."""
    if m % 2:
        return ()
    if m == 0:
        return ((),)
    out = []
    for k in range(1, m, 2):
        for inner in nc_pairings(k - 1):
            for outer in nc_pairings(m - k - 1):
                pairs = [(0, k)]
                pairs += [(i + 1, j + 1) for i, j in inner]
                pairs += [(i + k + 1, j + k + 1) for i, j in outer]
                out.append(tuple(sorted(pairs)))
    return tuple(sorted(out))


def _is_noncrossing(pairs) -> bool:
    for (a, b), (c, d) in cartesian(pairs, pairs):
        if a < c < b < d:
            return False
    return True


@dataclass(frozen=True)
class TLDiagram:
    n: int
    pairing: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pts = sorted(p for pair in self.pairing for p in pair)
        if pts != list(range(2 * self.n)):
            raise ValueError("pairing is not a perfect matching of 0..2n-1")
        if any(i >= j for i, j in self.pairing):
            raise ValueError("pairs must be written (i, j) with i < j")
        if not _is_noncrossing(self.pairing):
            raise ValueError("pairing is crossing")

    @classmethod
    def all(cls, n: int) -> list["TLDiagram"]:
        return [cls(n, p) for p in nc_pairings(2 * n)]

    def partner(self) -> dict[int, int]:
        out = {}
        for i, j in self.pairing:
            out[i], out[j] = j, i
        return out

    def wedge(self, other: "TLDiagram") -> "TLDiagram":
        """Juxtaposition: ``other``'s points shifted past ``self``'s."""
        s = 2 * self.n
        return TLDiagram(self.n + other.n,
                         tuple(sorted(self.pairing + tuple((i + s, j + s) for i, j in other.pairing))))

    def __str__(self):
        return " ".join(f"({i},{j})" for i, j in self.pairing) or "()"


# balance


@dataclass(frozen=True)
class NotBalanced:
    sums: dict

    def __bool__(self):
        return False


def is_balanced(graph: WeightedGraph) -> Fraction | NotBalanced:
    """The common out-weight sum delta >= 2, or NotBalanced with per-vertex sums."""
    sums = {v: graph.out_weight(v) for v in graph.vertices}
    values = set(sums.values())
    if len(values) == 1:
        delta = values.pop()
        if delta >= 2:
            return delta
    return NotBalanced(sums)


def _require_delta(graph: WeightedGraph) -> Fraction:
    delta = is_balanced(graph)
    if isinstance(delta, NotBalanced):
        sums = ", ".join(f"{v}: {format_rational(q)}" for v, q in delta.sums.items())
        raise NotBalancedError(f"out-weight sums differ or fall below 2 ({sums})")
    return delta


# loop algebra


@dataclass
class LoopAlgebraElement:
    vertex: str
    terms: dict  # tuple of edge ids -> SurdScalar

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return LoopAlgebraElement(self.vertex, {w: c for w, c in out.items() if c})

    def __mul__(self, other):
        if self.vertex != other.vertex:
            raise ValueError("loops are based at different vertices")
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return LoopAlgebraElement(self.vertex, {w: c for w, c in out.items() if c})

    def star(self, graph: WeightedGraph) -> "LoopAlgebraElement":
        """(e_1...e_n)^* = sqrt(mu(e_1)...mu(e_n)) op(e_n)...op(e_1), extended linearly."""
        out = {}
        for w, c in self.terms.items():
            weight = Fraction(1)
            for e in w:
                weight *= graph.weight(e)
            out[tuple(graph.op(e) for e in reversed(w))] = c * SurdScalar.sqrt(weight)
        return LoopAlgebraElement(self.vertex, out)


def unit(v: str) -> LoopAlgebraElement:
    return LoopAlgebraElement(v, {(): ONE})


def _power(q: Fraction, a: Fraction) -> SurdScalar:
    if a == 1:
        return SurdScalar.rational(q)
    if a == Fraction(1, 2):
        return SurdScalar.sqrt(q)
    raise ValueError(f"exponent {a} not supported (use 1/2 or 1)")


def inclusion_map(graph: WeightedGraph, v: str, diagram: TLDiagram, a=Fraction(1, 2)) -> LoopAlgebraElement:
    """Sum of loops at v labelled consistently with ``diagram``, weights mu(e_i)^a."""
    _require_delta(graph)
    a = Fraction(a)
    partner = diagram.partner()
    m = 2 * diagram.n
    acc: dict = {}

    def walk(pos, here, labels, weight):
        if pos == m:
            if here == v:
                key = tuple(labels)
                acc[key] = acc.get(key, Fraction(0)) + weight
            return
        j = partner[pos]
        if j > pos:
            for e in graph.out_edges(here):
                labels.append(e.id)
                walk(pos + 1, e.target, labels, weight * e.weight)
                labels.pop()
        else:
            e = graph.edge(graph.op(labels[j]))
            if e.source == here:
                labels.append(e.id)
                walk(pos + 1, e.target, labels, weight)
                labels.pop()

    walk(0, v, [], Fraction(1))
    return LoopAlgebraElement(v, {w: _power(q, a) for w, q in sorted(acc.items())})


def pairing_state(graph: WeightedGraph, edges) -> SurdScalar:
    """Loop-algebra state of one loop, by explicit enumeration of NC_2 pairings."""
    edges = tuple(edges)
    total = ZERO
    for pairing in nc_pairings(len(edges)):
        if all(edges[j] == graph.op(edges[i]) for i, j in pairing):
            term = ONE
            for i, _ in pairing:
                term = term * SurdScalar.sqrt(graph.weight(edges[i]))
            total = total + term
    return total


def loop_state(graph: WeightedGraph, element: LoopAlgebraElement) -> SurdScalar:
    """Loop-algebra state of an element, via the explicit pairing enumeration."""
    total = ZERO
    for w, c in element.terms.items():
        total = total + c * (ONE if not w else pairing_state(graph, w))
    return total


def element_state(graph: WeightedGraph, element: LoopAlgebraElement) -> SurdScalar:
    """Compressed state phi(p_v x p_v) / phi(p_v) through the moment engine."""
    total = ZERO
    for w, c in element.terms.items():
        total = total + c * expectation_coefficient(graph, w)
    return total


def inclusion_state(graph: WeightedGraph, v: str, diagram: TLDiagram, a=Fraction(1, 2)) -> SurdScalar:
    return element_state(graph, inclusion_map(graph, v, diagram, a))


# diagrammatic trace


def loop_count(x, sigma) -> int:
    """Number of closed circles formed by overlaying two matchings of the same points."""
    xp = x.pairing if isinstance(x, TLDiagram) else tuple(x)
    sp = sigma.pairing if isinstance(sigma, TLDiagram) else tuple(sigma)
    if len(xp) != len(sp):
        raise SizeMismatch(f"{2 * len(xp)} points against {2 * len(sp)}")
    mx, ms = {}, {}
    for i, j in xp:
        mx[i], mx[j] = j, i
    for i, j in sp:
        ms[i], ms[j] = j, i
    if set(mx) != set(ms):
        raise SizeMismatch("matchings cover different points")
    seen = set()
    loops = 0
    for p in sorted(mx):
        if p in seen:
            continue
        loops += 1
        q = p
        while True:
            seen.add(q)
            r = mx[q]
            seen.add(r)
            q = ms[r]
            if q == p:
                break
    return loops


def voiculescu_trace(diagram: TLDiagram, delta, normalization: str = "default") -> Fraction:
    """Sum over closures sigma of delta^(loops - n) (default) or delta^loops (unnormalized)."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    shift = diagram.n if normalization == "default" else 0
    total = Fraction(0)
    for sigma in nc_pairings(2 * diagram.n):
        total += delta ** (loop_count(diagram.pairing, sigma) - shift)
    return total


# calibration and verification


@dataclass(frozen=True)
class Calibration:
    exponent: Fraction
    normalization: str


def _consistent(fixtures, a, normalization, max_n) -> bool:
    for n in range(max_n + 1):
        for x in TLDiagram.all(n):
            values = set()
            for graph, v in fixtures:
                val = inclusion_state(graph, v, x, a)
                if val != voiculescu_trace(x, _require_delta(graph), normalization):
                    return False
                values.add(val)
            if len(values) > 1:
                return False
    return True


def calibrate(fixtures, max_n: int = 1) -> Calibration:
    """First (exponent, normalization) matching the trace on all diagrams with n <= max_n.

    ``fixtures`` is a list of ``(graph, vertex)``; every graph must be balanced.
    """
    for a in EXPONENTS:
        for norm in NORMALIZATIONS:
            if _consistent(fixtures, a, norm, max_n):
                return Calibration(a, norm)
    raise ValueError("no candidate exponent/normalization matches the fixtures")


@dataclass
class InclusionRow:
    diagram: TLDiagram
    value1: SurdScalar
    value2: SurdScalar
    trace: Fraction

    @property
    def independent(self) -> bool:
        return self.value1 == self.value2

    @property
    def matches_trace(self) -> bool:
        return self.value1 == self.trace and self.value2 == self.trace


@dataclass
class InclusionReport:
    delta: Fraction
    calibration: Calibration
    rows: list

    @property
    def graph_independent(self) -> bool:
        return all(r.independent for r in self.rows)

    @property
    def trace_preserving(self) -> bool:
        return all(r.matches_trace for r in self.rows)

    @property
    def passed(self) -> bool:
        return self.graph_independent and self.trace_preserving

    def to_dict(self) -> dict:
        return {
            "delta": format_rational(self.delta),
            "exponent": format_rational(self.calibration.exponent),
            "normalization": self.calibration.normalization,
            "graph_independent": self.graph_independent,
            "trace_preserving": self.trace_preserving,
            "rows": [{"n": r.diagram.n, "diagram": str(r.diagram), "graph1": str(r.value1),
                      "graph2": str(r.value2), "trace": format_rational(r.trace)} for r in self.rows],
        }


def verify_inclusion(graph1: WeightedGraph, graph2: WeightedGraph, v1: str, v2: str, max_n: int,
                     a=Fraction(1, 2), normalization: str = "unnormalized") -> InclusionReport:
    """phi(i_a(x)) on both graphs against each other and the trace, for n <= max_n."""
    if max_n > 4:
        raise ValueError("max_n is limited to 4")
    d1, d2 = _require_delta(graph1), _require_delta(graph2)
    if d1 != d2:
        raise DeltaMismatch(f"delta {format_rational(d1)} != {format_rational(d2)}")
    a = Fraction(a)
    rows = []
    for n in range(max_n + 1):
        for x in TLDiagram.all(n):
            rows.append(InclusionRow(x, inclusion_state(graph1, v1, x, a), inclusion_state(graph2, v2, x, a),
                                     voiculescu_trace(x, d1, normalization)))
    return InclusionReport(d1, Calibration(a, normalization), rows)


def tracial_pairs(graph: WeightedGraph, v: str, max_total: int, a=Fraction(1, 2)):
    """(x, y, phi(i(x) i(y)), phi(i(y) i(x))) for all diagram pairs with n_x + n_y <= max_total."""
    images = {}
    for n in range(max_total + 1):
        for x in TLDiagram.all(n):
            images[x] = inclusion_map(graph, v, x, a)
    out = []
    for x, ix in images.items():
        for y, iy in images.items():
            if x.n + y.n <= max_total:
                out.append((x, y, element_state(graph, ix * iy), element_state(graph, iy * ix)))
    return out
