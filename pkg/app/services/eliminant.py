# app/services/eliminant.py

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from app.services.algebra import (
    AlgebraElement,
    ProductTable,
    evaluate_univariate,
    multiply,
    substitute,
)
from app.services.errors import ConstantPolynomial, ZeroOrder
from app.services.poly import (
    BiPoly,
    TriMatrix,
    TriPoly,
    UniPoly,
    determinant,
    extract_x_coefficients,
    scale_argument,
)
from app.services.scalars import LaurentPoly, QParam

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurveSet:
    """The eliminant of a pair and its X-coefficients.

    Attributes:
        m: Order of P
        n: Order of Q
        s: X-degree bound n*max deg p_j + m*max deg q_j
        t: q-degree bound n(n-1)/2*max deg p_j + m(m-1)/2*max deg q_j
        deltas: delta_0 .. delta_s, padded with zeros
        eliminant: Delta = sum_i delta_i X^i
    """

    m: int
    n: int
    s: int
    t: int
    deltas: Tuple[BiPoly, ...]
    eliminant: TriPoly

    def nonzero_indices(self) -> List[int]:
        return [i for i, d in enumerate(self.deltas) if not d.is_zero()]


@dataclass(frozen=True)
class CurveResidual:
    index: int
    curve: BiPoly
    residual: Optional[AlgebraElement]


@dataclass
class VerificationReport:
    """Outcome of checking every clause of the main theorem on one pair.

    `checks` maps a check name to True/False, or None when the check does
    not apply (for instance q-integrality in numeric mode).
    """

    curves: CurveSet
    commuting: bool
    residuals: List[CurveResidual] = field(default_factory=list)
    checks: Dict[str, Optional[bool]] = field(default_factory=dict)
    q_degree: Optional[int] = None
    q_degree_bound: Optional[int] = None

    @property
    def passed(self) -> bool:
        if not self.commuting:
            return False
        if any(value is False for value in self.checks.values()):
            return False
        return all(r.residual is not None and r.residual.is_zero() for r in self.residuals)

    def failed_checks(self) -> List[str]:
        return [name for name, value in self.checks.items() if value is False]


def _orders(p: AlgebraElement, q_elem: AlgebraElement) -> Tuple[int, int]:
    m, n = p.order, q_elem.order
    if m is None or n is None or m < 1 or n < 1:
        raise ZeroOrder(f"eliminant needs orders >= 1, got {m} and {n}")
    return m, n


def _shifted_rows(element: AlgebraElement, count: int) -> List[AlgebraElement]:
    """[element, A*element, ..., A^(count-1)*element]."""
    a = AlgebraElement.gen_a(element.q)
    rows = [element]
    for _ in range(count - 1):
        rows.append(multiply(a, rows[-1]))
    return rows


def build_matrix(p: AlgebraElement, q_elem: AlgebraElement) -> TriMatrix:
    """Assemble the (m+n) x (m+n) eliminant matrix over K[X, lambda, mu].

    Rows 1..n hold the coefficients of A^(k-1) P with -lambda added at
    column k; rows n+1..n+m hold those of A^l Q with -mu added at column l+1.

    Args:
        p: Element of order m >= 1
        q_elem: Element of order n >= 1

    Returns:
        The eliminant matrix

    Raises:
        ZeroOrder: If either order is below one
    """
    p._check(q_elem)
    m, n = _orders(p, q_elem)
    size = m + n
    q = p.q
    lam = TriPoly.monomial(q, (0, 1, 0))
    mu = TriPoly.monomial(q, (0, 0, 1))

    def row_of(element: AlgebraElement, diag: int, var: TriPoly) -> Tuple[TriPoly, ...]:
        entries = [TriPoly.from_x_poly(element.coefficient(j)) for j in range(size)]
        entries[diag] = entries[diag] - var
        return tuple(entries)

    rows = [row_of(e, k, lam) for k, e in enumerate(_shifted_rows(p, n))]
    rows += [row_of(e, l, mu) for l, e in enumerate(_shifted_rows(q_elem, m))]
    logger.info(f"Built {size}x{size} eliminant matrix (m={m}, n={n})")
    return TriMatrix(tuple(rows), q)


def eliminant(p: AlgebraElement, q_elem: AlgebraElement, method: str = "minor") -> TriPoly:
    """Delta_{P,Q}(X, lambda, mu), the determinant of build_matrix(P, Q)."""
    return determinant(build_matrix(p, q_elem), method=method)


def degree_bounds(p: AlgebraElement, q_elem: AlgebraElement) -> Tuple[int, int]:
    """Return (s, t) for a pair of orders m, n."""
    m, n = _orders(p, q_elem)
    dp, dq = p.max_x_degree(), q_elem.max_x_degree()
    s = n * dp + m * dq
    t = n * (n - 1) // 2 * dp + m * (m - 1) // 2 * dq
    return s, t


def curves(p: AlgebraElement, q_elem: AlgebraElement, method: str = "minor") -> CurveSet:
    """Compute Delta and its curves delta_0 .. delta_s."""
    m, n = _orders(p, q_elem)
    s, t = degree_bounds(p, q_elem)
    delta = eliminant(p, q_elem, method=method)
    deltas = extract_x_coefficients(delta)
    if len(deltas) < s + 1:
        deltas += [BiPoly.zero(p.q)] * (s + 1 - len(deltas))
    return CurveSet(m=m, n=n, s=s, t=t, deltas=tuple(deltas), eliminant=delta)


def _product_of_shifts(p: UniPoly, count: int) -> UniPoly:
    result = UniPoly.constant(p.q, 1)
    for k in range(count):
        result = result * scale_argument(p, k)
    return result


def expected_lambda_leading(p: AlgebraElement, q_elem: AlgebraElement) -> TriPoly:
    """(-1)^n * prod_{k<m} q_n(q^k X)."""
    m, n = _orders(p, q_elem)
    lead = _product_of_shifts(q_elem.leading(), m)
    return TriPoly.from_x_poly(lead if n % 2 == 0 else -lead)


def expected_mu_leading(p: AlgebraElement, q_elem: AlgebraElement) -> TriPoly:
    """(-1)^(mn) * (-1)^m * prod_{k<n} p_m(q^k X)."""
    m, n = _orders(p, q_elem)
    lead = _product_of_shifts(p.leading(), n)
    # the Q rows sit below the P rows, so the block swap contributes (-1)^(mn)
    return TriPoly.from_x_poly(lead if (m * n + m) % 2 == 0 else -lead)


def _integral_q_exponent(element: AlgebraElement) -> Optional[int]:
    """Largest q-exponent when every coefficient lies in Z[q], else None."""
    top = 0
    for _, poly in element.terms:
        for c in poly.coeffs:
            if not isinstance(c, LaurentPoly):
                return None
            for exponent, coeff in c.items():
                if exponent < 0 or coeff.denominator != 1:
                    return None
                top = max(top, exponent)
    return top


def _q_integrality(report: VerificationReport, p: AlgebraElement, q_elem: AlgebraElement) -> None:
    if not p.q.is_symbolic:
        report.checks["q_integral"] = None
        return
    e_p, e_q = _integral_q_exponent(p), _integral_q_exponent(q_elem)
    if e_p is None or e_q is None:
        report.checks["q_integral"] = None
        return
    cs = report.curves
    bound = cs.t + cs.n * e_p + cs.m * e_q
    observed = -1
    integral = True
    for delta in cs.deltas:
        for _, c in delta.terms:
            for exponent, coeff in c.items():
                if exponent < 0 or coeff.denominator != 1:
                    integral = False
                observed = max(observed, exponent)
    report.q_degree = observed if observed >= 0 else None
    report.q_degree_bound = bound
    report.checks["q_integral"] = integral and observed <= bound


def verify(p: AlgebraElement, q_elem: AlgebraElement, force: bool = False) -> VerificationReport:
    """Check the structural claims of the main theorem for one pair.

    Args:
        p: Element of order m >= 1
        q_elem: Element of order n >= 1
        force: Evaluate delta_i(P, Q) even if P and Q do not commute

    Returns:
        A VerificationReport; non-commuting pairs are reported, not raised
    """
    table = ProductTable(p, q_elem)
    commuting = (table.product(1, 1) - multiply(q_elem, p)).is_zero()
    if not commuting:
        logger.warning("Pair does not commute; annihilation checks are skipped unless forced")
    cs = curves(p, q_elem)
    report = VerificationReport(curves=cs, commuting=commuting)
    delta = cs.eliminant
    checks = report.checks
    checks["commuting"] = commuting
    checks["delta_nonzero"] = not delta.is_zero()
    checks["lambda_leading"] = delta.coefficient_in("l", cs.n) == expected_lambda_leading(p, q_elem)
    checks["mu_leading"] = delta.coefficient_in("m", cs.m) == expected_mu_leading(p, q_elem)
    checks["lambda_degree"] = delta.degree_in("l") == cs.n
    checks["mu_degree"] = delta.degree_in("m") == cs.m
    checks["x_degree"] = delta.degree_in("x") <= cs.s
    checks["curve_degree"] = all(d.total_degree() <= max(cs.m, cs.n) for d in cs.deltas)
    checks["some_curve_nonzero"] = bool(cs.nonzero_indices())
    _q_integrality(report, p, q_elem)

    if commuting or force:
        for i, d in enumerate(cs.deltas):
            residual = substitute(d, p, q_elem, require_commuting=False, table=table)
            report.residuals.append(CurveResidual(i, d, residual))
        checks["annihilation"] = all(r.residual.is_zero() for r in report.residuals)
    else:
        report.residuals = [CurveResidual(i, d, None) for i, d in enumerate(cs.deltas)]
        checks["annihilation"] = None

    outcome = "passed" if report.passed else f"failed {report.failed_checks()}"
    logger.info(f"Verification of pair (m={cs.m}, n={cs.n}) {outcome}")
    return report


def make_commuting_pair(
    w: AlgebraElement, f: UniPoly, g: UniPoly
) -> Tuple[AlgebraElement, AlgebraElement]:
    """Return (f(W), g(W)), which commute since both are polynomials in W.

    Raises:
        ZeroOrder: If W has order zero
        ConstantPolynomial: If f or g is constant
    """
    if w.order is None or w.order < 1:
        raise ZeroOrder("W must have order >= 1")
    if f.degree < 1 or g.degree < 1:
        raise ConstantPolynomial("f and g must be nonconstant")
    return evaluate_univariate(f, w), evaluate_univariate(g, w)


@dataclass(frozen=True)
class CommutingPair:
    w: AlgebraElement
    f: UniPoly
    g: UniPoly
    p: AlgebraElement
    q_elem: AlgebraElement


def _random_poly(rng: random.Random, q: QParam, degree: int, coeff_range: int) -> UniPoly:
    coeffs = [rng.randint(-coeff_range, coeff_range) for _ in range(degree)]
    lead = rng.choice([c for c in range(-coeff_range, coeff_range + 1) if c != 0])
    return UniPoly(q, tuple(coeffs) + (lead,))


def random_commuting_pair(
    rng: random.Random,
    q: QParam,
    max_order: int = 2,
    max_degree: int = 2,
    coeff_range: int = 3,
    max_poly_degree: int = 2,
) -> CommutingPair:
    """Draw W of order 1..max_order and f, g of degree 1..max_poly_degree.

    Coefficients are integers in [-coeff_range, coeff_range]; leading
    coefficients are nonzero so the orders are exact.
    """
    order_w = rng.randint(1, max_order)
    terms = {}
    for j in range(order_w + 1):
        poly = _random_poly(rng, q, rng.randint(0, max_degree), coeff_range)
        if j < order_w and rng.random() < 0.3:
            continue
        terms[j] = poly
    w = AlgebraElement.from_dict(q, terms)
    f = _random_poly(rng, q, rng.randint(1, max_poly_degree), coeff_range)
    g = _random_poly(rng, q, rng.randint(1, max_poly_degree), coeff_range)
    p, q_elem = make_commuting_pair(w, f, g)
    return CommutingPair(w=w, f=f, g=g, p=p, q_elem=q_elem)


def _verify_pair(pair: Tuple[AlgebraElement, AlgebraElement]) -> VerificationReport:
    return verify(pair[0], pair[1])


def verify_corpus(
    pairs: Sequence[Tuple[AlgebraElement, AlgebraElement]], workers: int = 1
) -> List[VerificationReport]:
    """Verify many pairs; reports come back in input order.

    Args:
        pairs: Sequence of (P, Q)
        workers: Process pool size; 1 runs sequentially

    Returns:
        One report per pair
    """
    logger.info(f"Verifying {len(pairs)} pairs with {workers} worker(s)")
    if workers <= 1:
        return [_verify_pair(pair) for pair in pairs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_pair, pairs))


