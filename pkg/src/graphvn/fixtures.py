"""Parameterized fixture graphs and the shipped JSON corpus."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Sequence

from .graph import WeightedGraph, format_rational


def _doc(vertices, edges, base=None) -> dict:
    doc = {"vertices": [str(v) for v in vertices]}
    if base is not None:
        doc["base"] = str(base)
    doc["edges"] = [{"id": eid, "source": str(s), "target": str(t), "weight": format_rational(Fraction(w))}
                    for eid, s, t, w in edges]
    return doc


def base_case0(weights: Sequence) -> WeightedGraph:
    """One vertex with a self-loop pair e_i of weight mu_i for each entry."""
    return WeightedGraph.from_dict(_doc(["0"], [(f"e{i}", "0", "0", w) for i, w in enumerate(weights, 1)], "0"))


def base_case1(mu1, mu2) -> WeightedGraph:
    """e1: 0 -> 1 and e2: 1 -> 0."""
    return WeightedGraph.from_dict(_doc(["0", "1"], [("e1", 0, 1, mu1), ("e2", 1, 0, mu2)], "0"))


def base_case3(weights: Sequence) -> WeightedGraph:
    """Directed n-cycle, e_i: i-1 -> i (mod n)."""
    n = len(weights)
    edges = [(f"e{i}", i - 1, i % n, w) for i, w in enumerate(weights, 1)]
    return WeightedGraph.from_dict(_doc(range(n), edges, "0"))


def switcheroo(weights: Sequence) -> WeightedGraph:
    """Two vertices joined by parallel edges e_i: 0 -> 1."""
    return WeightedGraph.from_dict(_doc(["0", "1"], [(f"e{i}", 0, 1, w) for i, w in enumerate(weights, 1)], "0"))


def tracial_triangle() -> WeightedGraph:
    return WeightedGraph.from_dict(_doc(range(3), [("a", 0, 1, 2), ("b", 1, 2, 3), ("c", 2, 0, Fraction(1, 6))], "0"))


def degenerate() -> WeightedGraph:
    return WeightedGraph.from_dict(_doc(["0", "1"], [("e", 0, 1, 2)], "0"))


def balanced_a() -> WeightedGraph:
    return base_case0([2])


def balanced_b() -> WeightedGraph:
    return WeightedGraph.from_dict(_doc(["0", "1"], [("e", 0, 1, 2), ("f", 0, 1, Fraction(1, 2))], "0"))


def balanced_c() -> WeightedGraph:
    """A third delta = 5/2 graph whose out-weight multisets differ vertex to vertex."""
    edges = [("a", 0, 1, Fraction(5, 2)), ("b", 1, 2, Fraction(21, 10)), ("c", 2, 2, Fraction(7, 6))]
    return WeightedGraph.from_dict(_doc(range(3), edges, "0"))


BUILDERS = {
    "base_case0": lambda: base_case0([2, 3]),
    "base_case1": lambda: base_case1(6, Fraction(1, 3)),
    "base_case3": lambda: base_case3([4, Fraction(1, 2), 3]),
    "switcheroo": lambda: switcheroo([3, 2]),
    "tracial_triangle": tracial_triangle,
    "degenerate": degenerate,
    "balanced_a": balanced_a,
    "balanced_b": balanced_b,
    "balanced_c": balanced_c,
}

NAMES = tuple(BUILDERS)


def fixture_text(name: str) -> str:
    return resources.files("graphvn").joinpath("fixtures", f"{name}.json").read_text()


def load_fixture(name: str) -> WeightedGraph:
    if name not in BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return WeightedGraph.from_dict(json.loads(fixture_text(name)))


def corpus() -> dict[str, WeightedGraph]:
    return {name: load_fixture(name) for name in NAMES}


def render(graph: WeightedGraph) -> str:
    return json.dumps(graph.to_dict(), indent=2) + "\n"
