"""Command-line front end.

Every command prints one JSON document on stdout and diagnostics on stderr.
Exit codes: 0 success, 1 invalid input, 2 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import fixtures
from .classify import classify
from .errors import ComputationError, GraphInvalid, InputError
from .fock import build_basis, cross_validate, vacuum_expectation
from .graph import closed_walks, format_rational, load_graph, validate
from .lattice import cycle_group, tracial_subgraph
from .moments import as_word, check_eigen_identity, expectation_coefficient, phi_moment
from .tl import Calibration, calibrate, verify_inclusion


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _check_vertex(graph, v):
    if v is not None and v not in graph.vertices:
        raise InputError(f"unknown vertex {v!r}")
    return v


def _state(graph, base):
    """The classifier's state, or a plain breadth-first one when a base is forced."""
    if base is None:
        return classify(graph).tracial
    return tracial_subgraph(graph, _check_vertex(graph, base))


def cmd_validate(args) -> int:
    graph = load_graph(args.graph, strict=False)
    problems = validate(graph)
    _emit({"valid": not problems,
           "violations": [{"kind": p.kind, "subject": p.subject, "message": p.message} for p in problems]})
    for p in problems:
        print(f"violation: {p}", file=sys.stderr)
    return 1 if problems else 0


def cmd_classify(args) -> int:
    graph = load_graph(args.graph)
    report = classify(graph, normalize=args.normalize, base=_check_vertex(graph, args.base))
    _emit(report.to_dict())
    if args.figure:
        from .plotting import plot_masses

        plot_masses(report, args.figure)
        print(f"figure written to {args.figure}", file=sys.stderr)
    return 0


def cmd_cycle_group(args) -> int:
    graph = load_graph(args.graph)
    h = cycle_group(graph)
    doc = h.to_dict()
    doc["primes"] = list(h.primes)
    doc["basis"] = [list(row) for row in h.basis]
    _emit(doc)
    return 0


def cmd_state(args) -> int:
    graph = load_graph(args.graph)
    td = _state(graph, args.base)
    doc = td.to_dict()
    doc["total"] = format_rational(td.total)
    _emit(doc)
    return 0


def cmd_moment(args) -> int:
    graph = load_graph(args.graph)
    td = _state(graph, args.base)
    word = as_word(args.word)
    _, edges = word.normalized(graph)
    if not edges:
        raise InputError("the word is empty")
    exact = phi_moment(graph, td, word)
    basis = build_basis(graph, args.depth)
    if args.dump_basis:
        with open(args.dump_basis, "w") as fh:
            basis.dump(fh)
    v = graph.source(edges[0])
    fock = float(td.state[v]) * vacuum_expectation(graph, basis, word, v)
    deviation = abs(float(exact) - fock)
    _emit({
        "word": str(word),
        "vertex": v,
        "coefficient": str(expectation_coefficient(graph, word)),
        "exact": str(exact),
        "float": float(exact),
        "fock": fock,
        "deviation": deviation,
        "tol": args.tol,
        "passed": deviation <= args.tol,
        "depth": args.depth,
        "basis_size": len(basis),
    })
    return 0


def cmd_eigen_check(args) -> int:
    graph = load_graph(args.graph)
    td = _state(graph, args.base)
    chk = check_eigen_identity(graph, td, args.edge, args.word or "")
    _emit({"edge": args.edge, "word": str(as_word(args.word or "")), "eigenvalue": format_rational(chk.eigenvalue),
           "lhs": str(chk.lhs), "rhs": str(chk.rhs), "holds": chk.holds})
    return 0


def cmd_cross_validate(args) -> int:
    graph = load_graph(args.graph)
    td = _state(graph, args.base)
    if args.words:
        words = [w for w in args.words]
    else:
        words = [w for v in graph.vertices for w in closed_walks(graph, v, args.max_len) if w]
    report = cross_validate(graph, td, words, args.depth, args.tol)
    doc = report.to_dict()
    doc["depth"] = args.depth
    _emit(doc)
    if args.figure:
        from .plotting import plot_cross_validation

        plot_cross_validation(report, args.figure)
        print(f"figure written to {args.figure}", file=sys.stderr)
    return 0 if report.passed else 2


def cmd_tl_check(args) -> int:
    g1, g2 = load_graph(args.graph1), load_graph(args.graph2)
    v1 = _check_vertex(g1, args.v1) or g1.vertices[0]
    v2 = _check_vertex(g2, args.v2) or g2.vertices[0]
    if args.exponent is not None:
        try:
            cal = Calibration(Fraction(args.exponent), args.normalization)
        except ValueError:
            raise InputError(f"bad exponent {args.exponent!r}") from None
    else:
        try:
            cal = calibrate([(g1, v1), (g2, v2)], max_n=1)
        except ValueError as exc:
            raise ComputationError(str(exc)) from exc
    report = verify_inclusion(g1, g2, v1, v2, args.max_n, cal.exponent, cal.normalization)
    _emit(report.to_dict())
    return 0 if report.passed else 2


def cmd_selftest(args) -> int:
    from .selftest import run_all

    results = run_all(sys.stderr)
    _emit({"passed": all(r.passed for r in results),
           "criteria": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]})
    return 0 if all(r.passed for r in results) else 2


def cmd_fixture(args) -> int:
    if args.list or args.name is None:
        _emit({"fixtures": list(fixtures.NAMES)})
        return 0
    try:
        sys.stdout.write(fixtures.fixture_text(args.name))
    except FileNotFoundError:
        raise InputError(f"unknown fixture {args.name!r}") from None
    return 0


def _positive(kind):
    def parse(text):
        value = kind(text)
        if value <= 0 if kind is float else value < 0:
            raise argparse.ArgumentTypeError(f"invalid value {text!r}")
        return value

    return parse


class _Parser(argparse.ArgumentParser):
    """Usage errors count as invalid input (exit 1)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphvn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", help="graph JSON document")
        p.set_defaults(func=func)
        return p

    graph_cmd("validate", cmd_validate, "check the weighting axioms")

    p = graph_cmd("classify", cmd_classify, "isomorphism-class report")
    p.add_argument("--normalize", action="store_true", help="report masses as a probability vector")
    p.add_argument("--base", help="base vertex for the state")
    p.add_argument("--figure", help="also write a mass chart to this file")

    graph_cmd("cycle-group", cmd_cycle_group, "loop-weight group in Hermite normal form")

    p = graph_cmd("state", cmd_state, "tracial subgraph and vertex state")
    p.add_argument("--base")

    depth = dict(type=_positive(int), default=6, help="Fock truncation depth (default 6)")
    tol = dict(type=_positive(float), default=1e-9, help="cross-check tolerance (default 1e-9)")

    p = graph_cmd("moment", cmd_moment, "exact moment of a word with a Fock cross-check")
    p.add_argument("--word", required=True, help="comma separated edge ids, '*' for adjoints")
    p.add_argument("--depth", **depth)
    p.add_argument("--tol", **tol)
    p.add_argument("--base")
    p.add_argument("--dump-basis", metavar="FILE", help="write the Fock basis as index<TAB>path lines")

    p = graph_cmd("eigen-check", cmd_eigen_check, "check phi(Y_e Q) against eigenvalue * phi(Q Y_e)")
    p.add_argument("--edge", required=True)
    p.add_argument("--word", default="", help="the word Q")
    p.add_argument("--base")

    p = graph_cmd("cross-validate", cmd_cross_validate, "exact moments against the Fock simulator")
    p.add_argument("--max-len", type=_positive(int), default=4, help="loop length when --words is absent")
    p.add_argument("--words", nargs="+", help="explicit words instead of all loops")
    p.add_argument("--depth", **depth)
    p.add_argument("--tol", **tol)
    p.add_argument("--base")
    p.add_argument("--figure", help="also write a scatter/deviation plot to this file")

    p = sub.add_parser("tl-check", help="Temperley-Lieb inclusion on two balanced graphs")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--max-n", type=int, choices=range(5), default=3)
    p.add_argument("--v1")
    p.add_argument("--v2")
    p.add_argument("--exponent", help="skip calibration and use this exponent (1/2 or 1)")
    p.add_argument("--normalization", default="unnormalized", choices=("default", "unnormalized"))
    p.set_defaults(func=cmd_tl_check)

    p = sub.add_parser("selftest", help="run the acceptance battery")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("fixture", help="print a shipped fixture graph")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphInvalid as exc:
        for v in exc.violations:
            print(f"violation: {v}", file=sys.stderr)
        return 1
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
