"""Isomorphism-class reports for the weighted graph algebra.

Non-tracial case (H nontrivial): a free Araki-Woods summand T_H plus one
atom ``r_v <= p_v`` at each vertex whose out-weight sum is below one, of mass
``phi(p_v) * (1 - sum_{s(e)=v} mu(e))``.  Tracial case (H trivial): the same
atoms, and a factoriality verdict for the diffuse part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionViolated
from .graph import Path, WeightedGraph, compose, format_rational, simple_loops
from .lattice import CycleLattice, TracialData, cycle_group, tracial_subgraph

SCHEMA = "graphvn-report/1"
FREE_GROUP_PARAMETER = "unspecified (see prior work)"


# loop selection


def prefix_products_ok(weights: Sequence[Fraction]) -> bool:
    acc = Fraction(1)
    for w in weights:
        acc *= w
        if acc < 1:
            return False
    return True


def rotate_loop(weights: Sequence) -> int:
    """Start index of a rotation whose prefix products are all >= 1.

    Let alpha be the smallest product over all cyclic segments.  If alpha >= 1
    every rotation works; otherwise start right after a segment attaining alpha.
    """
    ws = [Fraction(w) for w in weights]
    n = len(ws)
    if n == 0:
        raise PreconditionViolated("empty weight list")
    total = Fraction(1)
    for w in ws:
        total *= w
    if total < 1:
        raise PreconditionViolated("product of weights is below 1")
    best = None
    for end in range(n):
        acc = Fraction(1)
        for length in range(1, n + 1):
            acc *= ws[(end - length + 1) % n]
            if best is None or acc < best[0]:
                best = (acc, end)
    if best[0] >= 1:
        return 0
    return (best[1] + 1) % n


def select_base_loop(graph: WeightedGraph) -> Path | None:
    """Shortest loop of weight > 1 whose prefix products stay >= 1.

    Ties go to the lexicographically smallest edge-id tuple; a candidate
    failing the prefix condition is rotated with :func:`rotate_loop`.
    Returns None when every loop has weight 1.
    """
    # a shortest loop with weight != 1 is simple, so |V| bounds its length
    loops = simple_loops(graph, max(1, len(graph.vertices)))
    heavy = [p for p in loops if p.weight > 1]
    if not heavy:
        return None
    shortest = min(len(p) for p in heavy)
    loop = min((p for p in heavy if len(p) == shortest), key=lambda p: p.edges)
    ws = [graph.weight(e) for e in loop.edges]
    if prefix_products_ok(ws):
        return loop
    i = rotate_loop(ws)
    return compose(graph, loop.edges[i:] + loop.edges[:i])


# atoms and the report


def deficiency(graph: WeightedGraph, v: str) -> Fraction:
    return 1 - graph.out_weight(v)


def atom_mass(graph: WeightedGraph, td: TracialData, v: str) -> Fraction:
    return td.state[v] * max(Fraction(0), deficiency(graph, v))


@dataclass(frozen=True)
class Atom:
    vertex: str
    mass: Fraction
    deficiency: Fraction


@dataclass(frozen=True)
class FreeArakiWoods:
    generators: tuple[Fraction, ...]
    weight: Fraction


@dataclass(frozen=True)
class Tracial:
    is_factor: bool
    reason: str
    weight: Fraction


@dataclass(frozen=True)
class Absent:
    weight: Fraction = Fraction(0)


@dataclass
class IsoClassReport:
    group: CycleLattice
    state_total: Fraction
    diffuse: object
    atoms: list
    tracial: TracialData
    base_loop: Path | None = None
    normalized: bool = False

    def atom_at(self, v: str) -> Atom | None:
        return next((a for a in self.atoms if a.vertex == v), None)

    def to_dict(self) -> dict:
        f = format_rational
        d = self.diffuse
        if isinstance(d, FreeArakiWoods):
            diffuse = {"kind": "free_araki_woods", "generators": [f(g) for g in d.generators],
                       "weight": f(d.weight)}
        elif isinstance(d, Tracial):
            diffuse = {"kind": "tracial", "is_factor": d.is_factor, "reason": d.reason,
                       "free_group_parameter": FREE_GROUP_PARAMETER, "weight": f(d.weight)}
        else:
            diffuse = {"kind": "absent", "weight": f(d.weight)}
        return {
            "schema": SCHEMA,
            "group": self.group.to_dict(),
            "state_total": f(self.state_total),
            "normalized": self.normalized,
            "tracial_subgraph": self.tracial.to_dict(),
            "base_loop": None if self.base_loop is None else list(self.base_loop.edges),
            "diffuse": diffuse,
            "atoms": [{"vertex": a.vertex, "mass": f(a.mass), "deficiency": f(a.deficiency)}
                      for a in self.atoms],
        }


def _tracial_verdict(graph: WeightedGraph) -> tuple[bool, str]:
    pairs = len(graph.edge_pairs())
    if pairs < 2:
        return False, f"only {pairs} edge pair(s); a factor needs at least two"
    low = [v for v in graph.vertices if graph.out_weight(v) < 1]
    if low:
        return False, "out-weight sum below 1 at vertex " + ", ".join(low)
    return True, "at least two edge pairs and every out-weight sum is >= 1"


def classify(graph: WeightedGraph, normalize: bool = False, base: str | None = None,
             tree_seed: Sequence[str] | None = None, tree=None, group: CycleLattice | None = None) -> IsoClassReport:
    """Classification report for a validated connected graph.

    With H nontrivial the state is built from the base loop: base vertex
    ``s(loop)`` and the loop minus its last edge seeded into the tracial
    subgraph.  ``base``, ``tree_seed`` and ``tree`` override that choice.
    """
    H = cycle_group(graph) if group is None else group
    loop = None if H.is_trivial else select_base_loop(graph)
    if base is None and tree is None and tree_seed is None and loop is not None:
        td = tracial_subgraph(graph, loop.source, seed=loop.edges[:-1])
    else:
        if base is None:
            base = graph.base if graph.base is not None else graph.vertices[0]
        td = tracial_subgraph(graph, base, seed=tree_seed or (), tree=tree)

    atoms = [Atom(v, atom_mass(graph, td, v), deficiency(graph, v))
             for v in graph.vertices if deficiency(graph, v) > 0]
    total = td.total
    rest = total - sum((a.mass for a in atoms), Fraction(0))
    if not graph.edges:
        diffuse = Absent()
    elif H.is_trivial:
        is_factor, reason = _tracial_verdict(graph)
        diffuse = Tracial(is_factor, reason, rest)
    else:
        diffuse = FreeArakiWoods(tuple(H.generators()), rest)
    report = IsoClassReport(H, total, diffuse, atoms, td, loop)
    return normalized(report) if normalize else report


def normalized(report: IsoClassReport) -> IsoClassReport:
    """Masses divided by the total state mass (a probability vector)."""
    t = report.state_total
    atoms = [Atom(a.vertex, a.mass / t, a.deficiency) for a in report.atoms]
    d = report.diffuse
    if isinstance(d, FreeArakiWoods):
        d = FreeArakiWoods(d.generators, d.weight / t)
    elif isinstance(d, Tracial):
        d = Tracial(d.is_factor, d.reason, d.weight / t)
    else:
        d = Absent(d.weight / t)
    return IsoClassReport(report.group, t, d, atoms, report.tracial, report.base_loop, True)


# free dimension bookkeeping


def fdim_amplify(t, gamma) -> Fraction:
    """Free dimension after amplifying by a projection of relative trace gamma."""
    t, gamma = Fraction(t), Fraction(gamma)
    if t < 1:
        raise PreconditionViolated("free dimension must be >= 1")
    if gamma <= 0:
        raise PreconditionViolated("amplification factor must be positive")
    return 1 + (t - 1) / gamma**2


def fdim_claim_tB(t, a, b, variant: int = 1) -> Fraction:
    """Free dimension of the complementary algebra B in the two free-product splittings.

    variant 1: t_B = (t (a+b)^2 - 4ab) / b^2
    variant 2: t_B = (t + 2(a^2 + b^2 - 1)) / b^2
    """
    t, a, b = Fraction(t), Fraction(a), Fraction(b)
    if a <= 0 or b <= 0:
        raise PreconditionViolated("a and b must be positive")
    if variant == 1:
        return (t * (a + b) ** 2 - 4 * a * b) / b**2
    if variant == 2:
        return (t + 2 * (a * a + b * b - 1)) / b**2
    raise ValueError(f"unknown variant {variant}")
