# app/utils/formatters.py
from typing import List, Sequence

import pandas as pd
import pygments
from pygments.formatters import HtmlFormatter, TerminalFormatter

from app.services.algebra import AlgebraElement
from app.services.eliminant import CurveSet, VerificationReport
from app.services.laurent import LaurentWindow, LpdIndexSet
from app.services.poly import BiPoly, TriPoly, UniPoly
from app.services.scalars import LaurentPoly, Scalar
from app.services.spectral import KernelReport
from app.utils.lexer import QHeisLexer


def _power(name: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    return name if exponent == 1 else f"{name}^{exponent}"


def _join_terms(terms: Sequence[tuple]) -> str:
    """Join (coefficient, monomial) pairs into a signed sum."""
    out = ""
    for coeff, mono in terms:
        negative = False
        if isinstance(coeff, LaurentPoly):
            if len(list(coeff.items())) == 1 and next(coeff.items())[1] < 0:
                negative, coeff = True, -coeff
            text = str(coeff)
            if len(list(coeff.items())) > 1:
                text = f"({text})"
            elif coeff == 1 and mono:
                text = ""
        else:
            negative = coeff < 0
            coeff = abs(coeff)
            text = "" if coeff == 1 and mono else str(coeff)
        body = "*".join(part for part in (text, mono) if part)
        if not out:
            out = f"-{body}" if negative else body
        else:
            out += f" - {body}" if negative else f" + {body}"
    return out or "0"


def format_scalar(value: Scalar) -> str:
    return str(value)


def format_unipoly(p: UniPoly, var: str = "X") -> str:
    terms = [(c, _power(var, i)) for i, c in reversed(list(enumerate(p.coeffs))) if c != 0]
    return _join_terms(terms)


def format_element(element: AlgebraElement) -> str:
    """Normal form as DSL text, highest power of A first, e.g. "q*B^2*A^2 + B*A"."""
    terms = []
    for j, p in reversed(element.terms):
        for i in range(p.degree, -1, -1):
            c = p.coeffs[i]
            if c == 0:
                continue
            mono = "*".join(part for part in (_power("B", i), _power("A", j)) if part)
            terms.append((c, mono))
    return _join_terms(terms)


def element_to_dsl(element: AlgebraElement) -> str:
    """DSL text that parses back to the same element.

    Raises:
        ValueError: If a coefficient has a negative power of q
    """
    for _, p in element.terms:
        for c in p.coeffs:
            if isinstance(c, LaurentPoly) and not c.is_zero() and c.valuation() < 0:
                raise ValueError("negative powers of q have no DSL spelling")
    return format_element(element)


def format_bipoly(p: BiPoly) -> str:
    terms = []
    for (a, b), c in sorted(p.terms, key=lambda item: (-sum(item[0]), -item[0][0])):
        mono = "*".join(part for part in (_power("λ", a), _power("μ", b)) if part)
        terms.append((c, mono))
    return _join_terms(terms)


def format_tripoly(p: TriPoly) -> str:
    terms = []
    for (i, a, b), c in sorted(p.terms, key=lambda item: (-item[0][0], -item[0][1], -item[0][2])):
        mono = "*".join(part for part in (_power("X", i), _power("λ", a), _power("μ", b)) if part)
        terms.append((c, mono))
    return _join_terms(terms)


def format_window(v: LaurentWindow, limit: int = 8) -> str:
    """Show the first coefficients of the trusted part, e.g. "t^-2: 4, t^-1: 2, ..."."""
    t_lo, t_hi = v.trusted
    shown = [f"t^{n}: {v.coefficient(n)}" for n in range(t_lo, min(t_hi, t_lo + limit - 1) + 1)]
    if t_hi - t_lo + 1 > limit:
        shown.append("...")
    return f"[{v.lo}, {v.hi}] trusted [{t_lo}, {t_hi}]  " + ", ".join(shown)


def format_report(report: VerificationReport) -> str:
    cs = report.curves
    lines = [
        f"{'PASS' if report.passed else 'FAIL'} (m={cs.m}, n={cs.n}, s={cs.s}, t={cs.t})",
        f"commuting: {report.commuting}",
    ]
    for name, value in report.checks.items():
        lines.append(f"  {name}: {'n/a' if value is None else value}")
    for r in report.residuals:
        if r.curve.is_zero():
            continue
        status = "skipped" if r.residual is None else format_element(r.residual)
        lines.append(f"  delta_{r.index} = {format_bipoly(r.curve)}  ->  {status}")
    return "\n".join(lines)


def format_curves(cs: CurveSet) -> str:
    lines = [f"m={cs.m} n={cs.n} s={cs.s} t={cs.t}", f"Delta = {format_tripoly(cs.eliminant)}"]
    for i, d in enumerate(cs.deltas):
        lines.append(f"delta_{i} = {format_bipoly(d)}")
    return "\n".join(lines)


def format_kernel_report(report: KernelReport) -> str:
    return (
        f"dim ker = {report.dim}  bounds [{report.lower}, {report.upper}]  "
        f"d_max={report.d_max} d_min={report.d_min} N_max={report.n_max} N_min={report.n_min}"
    )


def format_lpd(lpd: LpdIndexSet) -> str:
    indices = ", ".join(f"({i.alpha}, {i.s})" for i in lpd.indices)
    return f"maximal={[str(b) for b in lpd.maximal]} J={lpd.j_max} dimension={lpd.dimension}\n{indices}"


def checks_frame(report: VerificationReport) -> pd.DataFrame:
    rows = [{"check": name, "result": "n/a" if value is None else value} for name, value in report.checks.items()]
    return pd.DataFrame(rows, columns=["check", "result"])


def curves_frame(report: VerificationReport) -> pd.DataFrame:
    rows = []
    for r in report.residuals:
        rows.append(
            {
                "i": r.index,
                "delta_i": format_bipoly(r.curve),
                "degree": r.curve.total_degree(),
                "residual": "skipped" if r.residual is None else format_element(r.residual),
            }
        )
    return pd.DataFrame(rows, columns=["i", "delta_i", "degree", "residual"])


def window_frame(windows: Sequence[LaurentWindow], names: List[str]) -> pd.DataFrame:
    """One column per window, indexed by the exponent n; untrusted cells are empty."""
    lo = min(v.lo for v in windows)
    hi = max(v.hi for v in windows)
    data = {}
    for name, v in zip(names, windows):
        t_lo, t_hi = v.trusted
        data[name] = [str(v.coefficient(n)) if t_lo <= n <= t_hi else "" for n in range(lo, hi + 1)]
    return pd.DataFrame(data, index=pd.Index(range(lo, hi + 1), name="n"))


def highlight_html(src: str) -> str:
    return pygments.highlight(src, QHeisLexer(), HtmlFormatter(noclasses=True, nowrap=True))


def highlight_terminal(src: str) -> str:
    return pygments.highlight(src, QHeisLexer(), TerminalFormatter()).rstrip("\n")
