"""The acceptance battery: nine checks, each returning a pass/fail result.

Shared by ``graphvn selftest`` and the acceptance tests.  Every check is
seeded, so repeated runs are identical.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import fixtures
from .classify import classify, fdim_amplify, fdim_claim_tB, prefix_products_ok, rotate_loop
from .fock import cross_validate
from .graph import WeightedGraph, closed_walks
from .lattice import cycle_group, lattice_from_weights, spanning_trees, tracial_subgraph
from .moments import check_eigen_identity, gram_matrix, gram_min_eigenvalue
from .sampling import random_closed_walk, random_graph, random_walk, random_weights, random_word
from .tl import EXPONENTS, calibrate, tracial_pairs, verify_inclusion


@dataclass
class Result:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _timed(fn):
    def run(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _rational(rng: random.Random, lo: Fraction, hi: Fraction, den: int = 12) -> Fraction:
    """Random rational in [lo, hi] with denominator up to ``den``."""
    q = rng.randint(1, den)
    return lo + Fraction(rng.randint(0, int((hi - lo) * q)), q)


# 1. fixture-shape formulas


def _check_base_case1(rng):
    mu1 = _rational(rng, Fraction(1), Fraction(8))
    mu2 = _rational(rng, Fraction(1, 12), Fraction(2))
    while mu1 * mu2 <= 1 or 1 - mu1 - 1 / mu2 > 0:
        mu2 += Fraction(1, 4)
    g = fixtures.base_case1(mu1, mu2)
    r = classify(g, base="0", tree_seed=["e1"])
    ok = r.group == lattice_from_weights([mu1 * mu2], r.group.primes)
    expected = mu1 * (1 - 1 / mu1 - mu2)
    atom = r.atom_at("1")
    ok &= (atom.mass == expected) if expected > 0 else (atom is None and 1 / mu1 + mu2 >= 1)
    ok &= r.atom_at("0") is None
    return ok, f"base_case1 mu=({mu1}, {mu2})"


def _check_base_case3(rng):
    n = rng.randint(3, 6)
    while True:
        mus = [_rational(rng, Fraction(1, 4), Fraction(5)) for _ in range(n)]
        mus[0] = max(mus[0], Fraction(1))
        prod = Fraction(1)
        for m in mus:
            prod *= m
        if prod > 1 and 1 - mus[0] - 1 / mus[-1] <= 0:
            break
    g = fixtures.base_case3(mus)
    r = classify(g, base="0", tree_seed=[f"e{i}" for i in range(1, n)])
    ok = r.group == lattice_from_weights([prod], r.group.primes)
    state = Fraction(1)
    for i in range(1, n):
        state *= mus[i - 1]
        expected = state * (1 - mus[i] - 1 / mus[i - 1])
        atom = r.atom_at(str(i))
        ok &= (atom is not None and atom.mass == expected) if expected > 0 else atom is None
    ok &= r.atom_at("0") is None
    return ok, f"base_case3 mu={[str(m) for m in mus]}"


def _check_switcheroo(rng):
    n = rng.randint(2, 5)
    while True:
        mus = [_rational(rng, Fraction(1, 2), Fraction(8)) for _ in range(n)]
        if len(set(mus)) > 1:
            break
    g = fixtures.switcheroo(mus)
    r = classify(g, base="0", tree_seed=["e1"])
    ok = r.group == lattice_from_weights([m / mus[0] for m in mus[1:]], r.group.primes)
    inv = sum((1 / m for m in mus), Fraction(0))
    expected = mus[0] * (1 - inv)
    atom = r.atom_at("1")
    ok &= (atom is not None and atom.mass == expected) if expected > 0 else atom is None
    ok &= r.atom_at("0") is None
    return ok, f"switcheroo mu={[str(m) for m in mus]}"


def _check_base_case0(rng):
    n = rng.randint(1, 4)
    mus = [_rational(rng, Fraction(1, 4), Fraction(6)) for _ in range(n)]
    if all(m == 1 for m in mus):
        mus[0] = Fraction(2)
    g = fixtures.base_case0(mus)
    r = classify(g)
    ok = r.group == lattice_from_weights(mus, r.group.primes) and not r.atoms
    ok &= r.to_dict()["diffuse"]["kind"] == "free_araki_woods" and r.diffuse.weight == r.state_total
    return ok, f"base_case0 mu={[str(m) for m in mus]}"


@_timed
def shape_formulas(seed: int = 1, samples: int = 100, per_case_limit: float = 1.0) -> Result:
    """Exact atom masses and groups for the four parameterized fixture shapes."""
    rng = random.Random(seed)
    checks = (_check_base_case1, _check_base_case3, _check_switcheroo, _check_base_case0)
    failures, slow, worst = [], [], 0.0
    for k in range(samples):
        t0 = time.perf_counter()
        ok, label = checks[k % 4](rng)
        dt = time.perf_counter() - t0
        worst = max(worst, dt)
        if not ok:
            failures.append(label)
        if dt >= per_case_limit:
            slow.append(label)
    passed = not failures and not slow
    detail = f"{samples - len(failures)}/{samples} exact, slowest {worst * 1000:.1f} ms"
    if failures:
        detail += f"; first failure {failures[0]}"
    return Result("fixture-shape formulas", passed, detail, data={"failures": failures, "slow": slow})


# 2. atom structure


@_timed
def atom_structure(seed: int = 2, samples: int = 500) -> Result:
    """No atoms when every out-weight sum is >= 1; masses conserve the total."""
    rng = random.Random(seed)
    bad = []
    for name, g in fixtures.corpus().items():
        r = classify(g)
        if all(g.out_weight(v) >= 1 for v in g.vertices) and r.atoms:
            bad.append(name)
    fixture_bad = list(bad)
    no_atom_graphs = 0
    for k in range(samples):
        g = random_graph(rng, max_vertices=8, max_pairs=12)
        r = classify(g)
        total = r.diffuse.weight + sum((a.mass for a in r.atoms), Fraction(0))
        presence = {a.vertex for a in r.atoms} == {v for v in g.vertices if g.out_weight(v) < 1}
        if total != r.state_total or not presence:
            bad.append(f"random #{k}")
        if all(g.out_weight(v) >= 1 for v in g.vertices):
            no_atom_graphs += 1
            if r.atoms:
                bad.append(f"random #{k} (atoms despite out-weights >= 1)")
    detail = (f"{samples} random graphs conserve mass; {no_atom_graphs} of them and "
              f"{len(fixtures.NAMES) - len(fixture_bad)} fixtures checked for the no-atom case")
    return Result("atom structure", not bad, detail if not bad else f"failures: {bad[:3]}")


# 3. H canonicality


def reversed_orientation(graph: WeightedGraph) -> WeightedGraph:
    """Same graph with every edge id swapped for its opposite's, flipping each pair's representative."""
    return graph.relabeled({}, {e.id: e.op for e in graph.edges})


def random_relabeling(rng: random.Random, graph: WeightedGraph) -> WeightedGraph:
    vs = list(graph.vertices)
    perm = vs[:]
    rng.shuffle(perm)
    vmap = {v: f"v{p}" for v, p in zip(vs, perm)}
    ids = [e.id for e in graph.edges]
    shuffled = ids[:]
    rng.shuffle(shuffled)
    emap = {a: f"y{i}" for i, a in enumerate(shuffled)}
    return graph.relabeled(vmap, emap)


@_timed
def h_canonicality(seed: int = 3, samples: int = 200, time_limit: float = 30.0) -> Result:
    """Identical HNF across spanning trees, relabelings and orientation reversal."""
    rng = random.Random(seed)
    bad, trees_checked = [], 0
    t0 = time.perf_counter()
    for k in range(samples):
        g = random_graph(rng, max_vertices=7, max_pairs=10)
        ref = cycle_group(g).basis
        for tree in spanning_trees(g):
            trees_checked += 1
            if cycle_group(g, tree).basis != ref:
                bad.append(f"#{k} tree {tree}")
                break
        variants = [random_relabeling(rng, g), reversed_orientation(g), reversed_orientation(random_relabeling(rng, g))]
        if any(cycle_group(h).basis != ref for h in variants):
            bad.append(f"#{k} relabel/orientation")
    elapsed = time.perf_counter() - t0
    passed = not bad and elapsed < time_limit
    detail = f"{samples} graphs, {trees_checked} spanning trees, {elapsed:.1f}s (limit {time_limit:.0f}s)"
    if bad:
        detail += f"; first mismatch {bad[0]}"
    return Result("H canonicality", passed, detail)


# 4. eigen identity


@_timed
def eigen_identity(seed: int = 4, samples: int = 1000) -> Result:
    """phi(Y_e Q) = eigenvalue(e) phi(Q Y_e) exactly; eigenvalue 1 on the tracial subgraph."""
    rng = random.Random(seed)
    bad, nonzero = [], 0
    g = None
    for k in range(samples):
        if k % 20 == 0:
            g = random_graph(rng, max_vertices=6, max_pairs=8)
            td = tracial_subgraph(g)
            if any(check_eigen_identity(g, td, e, ()).eigenvalue != 1 for e in td.tr_edges):
                bad.append(f"#{k} tracial eigenvalue")
        e = rng.choice(g.edges).id
        # Q usually closes e into a loop so the identity is not vacuous
        if rng.random() < 0.8:
            q = random_closed_walk(rng, g, rng.choice((0, 2, 4, 6)), g.target(e)) + (g.op(e),)
        else:
            q = random_walk(rng, g, rng.randint(0, 8))
        chk = check_eigen_identity(g, td, e, q)
        if chk.lhs:
            nonzero += 1
        if not chk.holds:
            bad.append(f"#{k} e={e} Q={q}")
    detail = f"{samples - len(bad)}/{samples} hold exactly ({nonzero} non-vanishing)"
    return Result("eigenoperator identity", not bad, detail if not bad else detail + f"; {bad[0]}")


# 5. dual oracle


@_timed
def dual_oracle(seed: int = 5, words: int = 500, max_len: int = 8, depth: int = 8, tol: float = 1e-9,
                time_limit: float = 120.0) -> Result:
    """Exact moments against the truncated Fock simulator."""
    rng = random.Random(seed)
    t0 = time.perf_counter()
    worst, count = 0.0, 0
    for name, g in fixtures.corpus().items():
        td = classify(g).tracial
        ws = [w for v in g.vertices for w in closed_walks(g, v, 6) if w]
        rep = cross_validate(g, td, ws, 6, tol)
        worst = max(worst, rep.max_deviation)
        count += len(rep.rows)
    g = random_graph(rng, max_vertices=8, max_pairs=10, min_vertices=8)
    td = tracial_subgraph(g)
    sample = [random_word(rng, g, max_len) for _ in range(words)]
    rep = cross_validate(g, td, sample, depth, tol)
    worst = max(worst, rep.max_deviation)
    elapsed = time.perf_counter() - t0
    passed = worst <= tol and elapsed < time_limit
    detail = (f"{count} fixture loops + {len(rep.rows)} random words, max deviation {worst:.2e} "
              f"(tol {tol:g}), {elapsed:.1f}s")
    return Result("dual-oracle equivalence", passed, detail)


# 6. positivity


@_timed
def gram_positivity(max_len: int = 3, floor: float = -1e-8) -> Result:
    worst = float("inf")
    for name, g in fixtures.corpus().items():
        td = classify(g).tracial
        for v in g.vertices:
            lam = gram_min_eigenvalue(gram_matrix(g, td, closed_walks(g, v, max_len), v))
            worst = min(worst, lam)
    return Result("Gram positivity", worst >= floor, f"smallest eigenvalue {worst:.3e} (floor {floor:g})")


# 7. rotation


def valid_rotations(weights) -> set[int]:
    n = len(weights)
    return {i for i in range(n) if prefix_products_ok(list(weights[i:]) + list(weights[:i]))}


@_timed
def rotation(seed: int = 7, samples: int = 1000) -> Result:
    rng = random.Random(seed)
    bad = []
    for k in range(samples):
        ws = random_weights(rng, 10)
        if rotate_loop(ws) not in valid_rotations(ws):
            bad.append([str(w) for w in ws])
    detail = f"{samples - len(bad)}/{samples} rotations valid by brute force"
    return Result("cyclic rotation", not bad, detail if not bad else detail + f"; {bad[0]}")


# 8. free dimension


@_timed
def free_dimension(seed: int = 8, samples: int = 100) -> Result:
    rng = random.Random(seed)
    bad = []
    for k in range(samples):
        # amplification case: a = 1/(1 + P m), b = P/(1 + P m) with P >= 1, m >= 1
        p = _rational(rng, Fraction(1), Fraction(10))
        m = _rational(rng, Fraction(1), Fraction(10))
        a, b = 1 / (1 + p * m), p / (1 + p * m)
        t2 = 1 + (1 - (b - a) ** 2 / b**2)
        t = fdim_amplify(t2, (a + b) / b)
        if t != 1 + b**2 / (a + b) ** 2 - (b - a) ** 2 / (a + b) ** 2 or fdim_claim_tB(t, a, b, 1) != 1:
            bad.append(f"amplification a={a} b={b}")
        # two-atom case: a = 1/(1 + M), b = M/(1 + M)
        big_m = _rational(rng, Fraction(1, 10), Fraction(10))
        a, b = 1 / (1 + big_m), big_m / (1 + big_m)
        tb = fdim_claim_tB(1 + 2 * a * b, a, b, 2)
        if tb != (a * a + b * b) / b**2 or not tb > 1:
            bad.append(f"two-atom a={a} b={b}")
        if fdim_claim_tB(1 + 2 * a * b - a * a, a, b, 2) != 1:
            bad.append(f"two-atom minimal a={a} b={b}")
    detail = f"{samples} (a, b) pairs per case, {3 * samples - len(bad)}/{3 * samples} identities exact"
    return Result("free-dimension identities", not bad, detail if not bad else detail + f"; {bad[0]}")


# 9. Temperley-Lieb bridge


def balanced_fixtures():
    return [(fixtures.load_fixture("balanced_a"), "0"), (fixtures.load_fixture("balanced_b"), "0"),
            (fixtures.load_fixture("balanced_c"), "0")]


@_timed
def tl_bridge(max_n: int = 3) -> Result:
    """Calibrate at n <= 1, then graph independence and traciality up to n = 3."""
    fx = balanced_fixtures()
    cal = calibrate(fx, max_n=1)
    (ga, va), (gb, vb), (gc, vc) = fx
    reports = [verify_inclusion(ga, gb, va, vb, max_n, cal.exponent, cal.normalization),
               verify_inclusion(ga, gc, va, vc, max_n, cal.exponent, cal.normalization)]
    independent = all(r.graph_independent for r in reports)
    trace_ok = all(r.trace_preserving for r in reports)
    tracial = all(lhs == rhs for g, v in fx[:2] for _, _, lhs, rhs in tracial_pairs(g, v, max_n, cal.exponent))
    other = next(a for a in EXPONENTS if a != cal.exponent)
    negative = [verify_inclusion(ga, g2, va, v2, 1, other, cal.normalization) for g2, v2 in (fx[1], fx[2])]
    control = not any(r.passed for r in negative)
    passed = independent and trace_ok and tracial and control
    detail = (f"calibrated exponent {cal.exponent}, {cal.normalization} trace; independent={independent}, "
              f"trace={trace_ok}, tracial={tracial}, exponent {other} rejected={control}")
    return Result("Temperley-Lieb bridge", passed, detail,
                  data={"exponent": cal.exponent, "normalization": cal.normalization})


CRITERIA = (shape_formulas, atom_structure, h_canonicality, eigen_identity, dual_oracle,
            gram_positivity, rotation, free_dimension, tl_bridge)


def run_all(stream=None) -> list[Result]:
    out = []
    for k, check in enumerate(CRITERIA, 1):
        res = check()
        out.append(res)
        if stream is not None:
            stream.write(f"{k}. {res.line()}\n")
            stream.flush()
    return out
