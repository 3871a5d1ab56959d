#!/usr/bin/env python
"""
Exact computations in the q-deformed Heisenberg algebra AB - qBA = 1.

Elements are given in the expression DSL ("B*A - 2", "(A + 1)^2") or as
element JSON. Results go to stdout, diagnostics to stderr.

Usage:
  python app/tools/qheis.py --q 2 verify "A" "A^2"
  python app/tools/qheis.py --q symbolic --json curves "B*A" "(B*A)^2"
  python app/tools/qheis.py --q 2 spectrum "B*A" --count 5

Exit codes: 0 success, 1 failed verification or non-commuting pair,
2 usage, parse or domain error.
"""

import argparse
import json
import logging
import os
import random
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

# Add the repository root to sys.path to import app modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

import config
from app.services import eliminant as elim
from app.services import laurent, spectral
from app.services.algebra import AlgebraElement, commutator
from app.services.errors import ModeMismatch, QHeisError
from app.services.expr_parser import parse_element, parse_poly
from app.services.poly import TriPoly
from app.services.scalars import QParam, to_fraction, validate_q
from app.utils import formatters, serializers

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _element(text: str, q: QParam) -> AlgebraElement:
    """Read an element from DSL text or element JSON."""
    if text.lstrip().startswith("{"):
        element = serializers.element_from_json(json.loads(text))
        if element.q != q:
            raise ModeMismatch(f"element JSON is over q={element.q}, expected q={q}")
        return element
    return parse_element(text, q, substitute_q=config.SUBSTITUTE_Q)


def _emit(args, data, text: str) -> None:
    print(serializers.dumps(data) if args.json else text)


def cmd_normalize(args, q: QParam) -> int:
    element = _element(args.expr, q)
    text = formatters.format_element(element)
    if not args.json and sys.stdout.isatty():
        text = formatters.highlight_terminal(text)
    _emit(args, serializers.element_to_json(element), text)
    return EXIT_OK


def cmd_commutes(args, q: QParam) -> int:
    p, q_elem = _element(args.p, q), _element(args.q_elem, q)
    bracket = commutator(p, q_elem)
    commuting = bracket.is_zero()
    data = {"commuting": commuting, "commutator": serializers.element_to_json(bracket)}
    text = "commuting" if commuting else f"non-commuting: [P, Q] = {formatters.format_element(bracket)}"
    _emit(args, data, text)
    return EXIT_OK if commuting else EXIT_FAIL


def cmd_eliminant(args, q: QParam) -> int:
    delta: TriPoly = elim.eliminant(_element(args.p, q), _element(args.q_elem, q))
    _emit(args, serializers.tripoly_to_json(delta), formatters.format_tripoly(delta))
    return EXIT_OK


def cmd_curves(args, q: QParam) -> int:
    cs = elim.curves(_element(args.p, q), _element(args.q_elem, q))
    _emit(args, serializers.curveset_to_json(cs), formatters.format_curves(cs))
    return EXIT_OK


def cmd_verify(args, q: QParam) -> int:
    report = elim.verify(_element(args.p, q), _element(args.q_elem, q), force=args.force)
    _emit(args, serializers.report_to_json(report), formatters.format_report(report))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_pair(args, q: QParam) -> int:
    w = _element(args.w, q)
    f = parse_poly(args.f, q, substitute_q=config.SUBSTITUTE_Q)
    g = parse_poly(args.g, q, substitute_q=config.SUBSTITUTE_Q)
    p, q_elem = elim.make_commuting_pair(w, f, g)
    data = {"P": serializers.element_to_json(p), "Q": serializers.element_to_json(q_elem)}
    text = f"P = {formatters.format_element(p)}\nQ = {formatters.format_element(q_elem)}"
    _emit(args, data, text)
    return EXIT_OK


def cmd_kernel_dim(args, q: QParam) -> int:
    p = _element(args.p, q)
    if q.is_symbolic:
        lower, upper = spectral.kernel_dimension_bounds(p)
        _emit(args, {"dim": None, "bounds": [lower, upper]}, f"dim ker in [{lower}, {upper}] (symbolic q)")
        return EXIT_OK
    report = spectral.kernel_dimension(p)
    _emit(args, serializers.kernel_report_to_json(report), formatters.format_kernel_report(report))
    return EXIT_OK


def cmd_spectrum(args, q: QParam) -> int:
    values = spectral.spectrum_sample(_element(args.p, q), args.count, config.SPECTRUM_SEARCH_LIMIT)
    _emit(args, {"eigenvalues": [str(v) for v in values]}, ", ".join(str(v) for v in values))
    return EXIT_OK if len(values) >= args.count else EXIT_FAIL


def cmd_laurent_demo(args, q: QParam) -> int:
    window = laurent.default_window(args.window_width)
    alpha = to_fraction(args.alpha)
    chain = laurent.psi_chain(alpha, args.s, window)
    checks: Dict[str, bool] = {
        "chain_relations": laurent.chain_relations_check(alpha, args.s, window),
        "collapsed_identity": laurent.collapsed_identity_check(alpha, args.s, q, window),
    }
    if not q.is_one:
        checks["dq_psi_identity"] = laurent.dq_psi_identity_check(alpha, q, window)
    if args.element:
        p = _element(args.element, q)
        checks["action_identity"] = laurent.action_identity_check(p, alpha, args.s, window)
    data = {"windows": [serializers.window_to_json(v) for v in chain], "checks": checks}
    lines = [f"Psi_{{{alpha},{s}}} {formatters.format_window(v)}" for s, v in enumerate(chain, start=1)]
    lines += [f"{name}: {value}" for name, value in checks.items()]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


def _parse_roots(text: str) -> List[Tuple[Fraction, int]]:
    """Parse "1:2,-1/2:1" into [(1, 2), (-1/2, 1)]; a missing multiplicity means 1."""
    roots = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        value, _, mult = item.partition(":")
        roots.append((to_fraction(value), int(mult) if mult else 1))
    return roots


def cmd_lpd(args, q: QParam) -> int:
    lpd = laurent.lpd_index_set(_parse_roots(args.roots), args.m, args.d, q)
    _emit(args, serializers.lpd_to_json(lpd), formatters.format_lpd(lpd))
    return EXIT_OK


def cmd_corpus(args, q: QParam) -> int:
    rng = random.Random(args.seed)
    pairs = [elim.random_commuting_pair(rng, q) for _ in range(args.count)]
    reports = elim.verify_corpus([(pair.p, pair.q_elem) for pair in pairs], workers=args.workers)
    passed = sum(report.passed for report in reports)
    data = {
        "count": len(reports),
        "passed": passed,
        "pairs": [
            {"W": formatters.format_element(pair.w), "pass": report.passed, "failed": report.failed_checks()}
            for pair, report in zip(pairs, reports)
        ],
    }
    lines = [
        f"{'PASS' if report.passed else 'FAIL'}  W = {formatters.format_element(pair.w)}"
        for pair, report in zip(pairs, reports)
    ]
    lines.append(f"{passed}/{len(reports)} pairs passed")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if passed == len(reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qheis", description="Exact q-deformed Heisenberg algebra toolkit")
    parser.add_argument("--q", default=config.DEFAULT_Q, help='Rational q such as "2" or "1/2", or "symbolic"')
    parser.add_argument("--json", action="store_true", help="Emit JSON instead of text")
    parser.add_argument("--window-width", type=int, default=config.WINDOW_WIDTH, help="Laurent window width")
    parser.add_argument("--log-level", default=config.LOG_LEVEL, help="Logging level for diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str, *positional: str) -> argparse.ArgumentParser:
        command = sub.add_parser(name, help=help_text)
        for arg in positional:
            command.add_argument(arg)
        command.set_defaults(handler=handler)
        return command

    add("normalize", cmd_normalize, "Print the normal form of an expression", "expr")
    add("commutes", cmd_commutes, "Check whether PQ = QP", "p", "q_elem")
    add("eliminant", cmd_eliminant, "Print the eliminant Delta(X, lambda, mu)", "p", "q_elem")
    add("curves", cmd_curves, "Print the curves delta_0 .. delta_s", "p", "q_elem")
    verify = add("verify", cmd_verify, "Verify every clause of the main theorem", "p", "q_elem")
    verify.add_argument("--force", action="store_true", help="Evaluate residuals even for non-commuting pairs")
    add("pair", cmd_pair, "Build the commuting pair (f(W), g(W)) from polynomials in T", "w", "f", "g")
    add("kernel-dim", cmd_kernel_dim, "Exact dimension of ker P on Laurent series", "p")
    spectrum = add("spectrum", cmd_spectrum, "Sample certified eigenvalues of P", "p")
    spectrum.add_argument("--count", type=int, default=5)
    demo = add("laurent-demo", cmd_laurent_demo, "Build a Psi chain and check its identities")
    demo.add_argument("--alpha", default="2")
    demo.add_argument("--s", type=int, default=2)
    demo.add_argument("--element", default=None, help="Also check the action identity for this element")
    lpd = add("lpd", cmd_lpd, "Index set of L_{P,d} from the roots of p_m")
    lpd.add_argument("--roots", required=True, help='Comma separated "root:multiplicity" list')
    lpd.add_argument("--m", type=int, required=True)
    lpd.add_argument("--d", type=int, required=True)
    corpus = add("corpus", cmd_corpus, "Verify a random corpus of commuting pairs")
    corpus.add_argument("--count", type=int, default=25)
    corpus.add_argument("--seed", type=int, default=0)
    corpus.add_argument("--workers", type=int, default=config.WORKERS)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, dispatch, and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        logging.basicConfig(level=args.log_level.upper(), format=config.LOG_FORMAT, stream=sys.stderr, force=True)
        q = QParam.parse(args.q)
        validate_q(q)
        return args.handler(args, q)
    except (QHeisError, ValueError, ArithmeticError) as e:
        logger.error(f"Error: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    """Main entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
