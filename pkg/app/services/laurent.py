# app/services/laurent.py
"""Windowed Laurent series and the module action of M and D_q.

A LaurentWindow stores coefficients of t^n for n in [lo, hi] together with a
trusted interval on which they agree with the intended bi-infinite series.
Operators move and shrink the trusted interval deterministically.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import config
from app.services.algebra import AlgebraElement
from app.services.errors import (
    DegenerateWindow,
    DuplicateRoot,
    InvalidRoot,
    SymbolicModeUnsupported,
    ZeroElement,
)
from app.services.poly import UniPoly
from app.services.scalars import QParam, exact_q_log, q_int, to_fraction

logger = logging.getLogger(__name__)

Interval = Tuple[int, int]


def default_window(width: Optional[int] = None) -> Interval:
    """A window of the given width centred on t^0."""
    width = width or config.WINDOW_WIDTH
    lo = -(width // 2)
    return lo, lo + width - 1


@dataclass(frozen=True, eq=False)
class LaurentWindow:
    lo: int
    coeffs: Tuple[Fraction, ...]
    trusted: Interval

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(to_fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise DegenerateWindow("a window needs at least one coefficient")
        t_lo, t_hi = self.trusted
        if t_lo > t_hi:
            raise DegenerateWindow(f"trusted interval [{t_lo}, {t_hi}] is empty")
        if t_lo < self.lo or t_hi > self.hi:
            raise DegenerateWindow(
                f"trusted interval [{t_lo}, {t_hi}] leaves window [{self.lo}, {self.hi}]"
            )

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    @property
    def trusted_width(self) -> int:
        return self.trusted[1] - self.trusted[0] + 1

    @classmethod
    def monomial(cls, k: int, lo: int, hi: int, coeff=1) -> "LaurentWindow":
        """coeff * t^k, exact on the whole window."""
        return cls.from_function(lambda n: coeff if n == k else 0, lo, hi)

    @classmethod
    def from_function(cls, f: Callable[[int], Fraction], lo: int, hi: int) -> "LaurentWindow":
        return cls(lo, tuple(f(n) for n in range(lo, hi + 1)), (lo, hi))

    def coefficient(self, n: int) -> Fraction:
        if not self.lo <= n <= self.hi:
            raise IndexError(f"t^{n} is outside window [{self.lo}, {self.hi}]")
        return self.coeffs[n - self.lo]

    def _get(self, n: int) -> Fraction:
        return self.coeffs[n - self.lo] if self.lo <= n <= self.hi else Fraction(0)

    def trusted_coefficients(self) -> Tuple[Fraction, ...]:
        t_lo, t_hi = self.trusted
        return tuple(self.coeffs[n - self.lo] for n in range(t_lo, t_hi + 1))

    def is_zero_on_trusted(self) -> bool:
        return not any(self.trusted_coefficients())

    def _combine(self, other: "LaurentWindow", sign: int) -> "LaurentWindow":
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        t_lo = max(self.trusted[0], other.trusted[0])
        t_hi = min(self.trusted[1], other.trusted[1])
        coeffs = tuple(self._get(n) + sign * other._get(n) for n in range(lo, hi + 1))
        return LaurentWindow(lo, coeffs, (t_lo, t_hi))

    def __add__(self, other: "LaurentWindow") -> "LaurentWindow":
        return self._combine(other, 1)

    def __sub__(self, other: "LaurentWindow") -> "LaurentWindow":
        return self._combine(other, -1)

    def scale(self, factor) -> "LaurentWindow":
        factor = to_fraction(factor)
        return LaurentWindow(self.lo, tuple(c * factor for c in self.coeffs), self.trusted)

    def agrees(self, other: "LaurentWindow", min_width: Optional[int] = None) -> bool:
        """Compare two windows on the intersection of their trusted intervals.

        Raises:
            DegenerateWindow: If the intersection is narrower than min_width
        """
        min_width = config.MIN_TRUSTED_WIDTH if min_width is None else min_width
        t_lo = max(self.trusted[0], other.trusted[0])
        t_hi = min(self.trusted[1], other.trusted[1])
        if t_hi - t_lo + 1 < min_width:
            raise DegenerateWindow(
                f"trusted overlap [{t_lo}, {t_hi}] is narrower than {min_width}"
            )
        return all(self._get(n) == other._get(n) for n in range(t_lo, t_hi + 1))

    def __eq__(self, other):
        if not isinstance(other, LaurentWindow):
            return NotImplemented
        return self.agrees(other)

    __hash__ = None


def _require_numeric(q: QParam) -> None:
    if q.is_symbolic:
        raise SymbolicModeUnsupported("Laurent windows need a numeric q")


def apply_m(v: LaurentWindow) -> LaurentWindow:
    """M t^n = t^(n+1); the new bottom coefficient is unknown."""
    coeffs = (Fraction(0),) + v.coeffs
    return LaurentWindow(v.lo, coeffs, (v.trusted[0] + 1, v.trusted[1] + 1))


def apply_dq(v: LaurentWindow, q: QParam) -> LaurentWindow:
    """D_q t^n = {n}_q t^(n-1); the new top coefficient is unknown."""
    _require_numeric(q)
    coeffs = tuple(
        q_int(q, n + 1) * v._get(n + 1) if n + 1 <= v.hi else Fraction(0)
        for n in range(v.lo - 1, v.hi + 1)
    )
    return LaurentWindow(v.lo - 1, coeffs, (v.trusted[0] - 1, v.trusted[1] - 1))


def apply_poly_m(p: UniPoly, v: LaurentWindow) -> LaurentWindow:
    """p(M) v."""
    _require_numeric(p.q)
    result: Optional[LaurentWindow] = None
    shifted = v
    for c in p.coeffs:
        if c != 0:
            term = shifted.scale(c)
            result = term if result is None else result + term
        shifted = apply_m(shifted)
    if result is None:
        return v.scale(0)
    return result


def apply_linear_factor(alpha, v: LaurentWindow, power: int = 1) -> LaurentWindow:
    """(M - alpha)^power v."""
    alpha = to_fraction(alpha)
    for _ in range(power):
        v = apply_m(v) - v.scale(alpha)
    return v


def act(p: AlgebraElement, v: LaurentWindow) -> LaurentWindow:
    """Apply sum_j p_j(M) D_q^j to a window.

    Raises:
        SymbolicModeUnsupported: In symbolic mode
        DegenerateWindow: If the trusted interval runs out
    """
    _require_numeric(p.q)
    if p.is_zero():
        return v.scale(0)
    result: Optional[LaurentWindow] = None
    derived = v
    for j in range(p.order + 1):
        if j:
            derived = apply_dq(derived, p.q)
        poly = p.coefficient(j)
        if poly.is_zero():
            continue
        term = apply_poly_m(poly, derived)
        result = term if result is None else result + term
    return result


def psi_chain(alpha, s_max: int, window: Optional[Interval] = None) -> List[LaurentWindow]:
    """Jordan chain Psi_{alpha,1..s_max} with (M - alpha) Psi_s = Psi_{s-1}.

    Psi_{alpha,1} has coefficient alpha^(-n) at t^n. Higher levels solve
    a_(n-1) = b_n + alpha a_n downwards from a_hi = 0 and lose one trusted
    coefficient at the top per level.
    """
    alpha = to_fraction(alpha)
    if alpha == 0:
        raise InvalidRoot("Psi chains need a nonzero alpha")
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    lo, hi = window or default_window()
    if hi - lo + 1 <= s_max:
        raise DegenerateWindow(f"window [{lo}, {hi}] too narrow for {s_max} chain levels")
    chain = [LaurentWindow.from_function(lambda n: alpha ** -n, lo, hi)]
    for level in range(2, s_max + 1):
        below = chain[-1]
        coeffs = [Fraction(0)] * (hi - lo + 1)
        for n in range(hi, lo, -1):
            coeffs[n - 1 - lo] = below.coefficient(n) + alpha * coeffs[n - lo]
        chain.append(LaurentWindow(lo, tuple(coeffs), (lo, hi - (level - 1))))
    return chain


def factored_polynomial(q: QParam, c, e0: int, factors: Sequence[Tuple[Fraction, int]]) -> UniPoly:
    """c * X^e0 * prod (X - alpha_i)^e_i."""
    result = UniPoly.monomial(q, e0, c)
    for alpha, e in factors:
        result = result * UniPoly(q, (-to_fraction(alpha), 1)) ** e
    return result


def _check_factors(c, factors: Sequence[Tuple[Fraction, int]]) -> None:
    if to_fraction(c) == 0:
        raise ZeroElement("the zero polynomial has no finite kernel basis")
    seen = set()
    for alpha, e in factors:
        alpha = to_fraction(alpha)
        if alpha == 0:
            raise InvalidRoot("zero roots belong in the X^e0 factor")
        if not isinstance(e, int) or e < 1:
            raise InvalidRoot(f"multiplicity of {alpha} must be a positive integer")
        if alpha in seen:
            raise DuplicateRoot(f"root {alpha} listed twice")
        seen.add(alpha)


def kernel_basis_factored(
    c, e0: int, factors: Sequence[Tuple[Fraction, int]], window: Optional[Interval] = None
) -> List[LaurentWindow]:
    """Basis of ker p(M) for p = c X^e0 prod (X - alpha_i)^e_i.

    The basis is Psi_{alpha_i,1..e_i} for each root; its size is sum e_i.
    """
    _check_factors(c, factors)
    basis = []
    for alpha, e in factors:
        basis.extend(psi_chain(alpha, e, window))
    logger.info(f"Kernel basis of p(M) has {len(basis)} elements")
    return basis


@dataclass(frozen=True)
class PairIndex:
    alpha: Fraction
    s: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_fraction(self.alpha))
        if self.alpha == 0:
            raise InvalidRoot("index alpha must be nonzero")
        if self.s < 1:
            raise ValueError("index s must be positive")


def _orbit_exponent(q: QParam, alpha: Fraction, beta: Fraction) -> Optional[int]:
    """j with alpha = q^j beta, or None."""
    if q.is_one:
        return 0 if alpha == beta else None
    return exact_q_log(q, alpha / beta)


def pair_leq(a: PairIndex, b: PairIndex, q: QParam) -> bool:
    """(alpha, r) <= (beta, s) iff beta = alpha/q^j with j > 0, or alpha = beta and r <= s."""
    _require_numeric(q)
    if a.alpha == b.alpha:
        return a.s <= b.s
    j = _orbit_exponent(q, a.alpha, b.alpha)
    return j is not None and j > 0


def comparable(a: PairIndex, b: PairIndex, q: QParam) -> bool:
    """True when the two alphas lie in the same q-orbit."""
    _require_numeric(q)
    return _orbit_exponent(q, a.alpha, b.alpha) is not None


def _psi_one(alpha: Fraction, window: Interval) -> LaurentWindow:
    return psi_chain(alpha, 1, window)[0]


def chain_relations_check(alpha, s: int, window: Optional[Interval] = None, min_width: Optional[int] = None) -> bool:
    """(M - alpha)^s Psi_s = 0 and (M - alpha)^(s-1) Psi_s = Psi_1 on trusted intervals."""
    alpha = to_fraction(alpha)
    chain = psi_chain(alpha, s, window)
    top = chain[-1]
    killed = apply_linear_factor(alpha, top, s)
    lowered = apply_linear_factor(alpha, top, s - 1)
    return killed.is_zero_on_trusted() and lowered.agrees(chain[0], min_width)


def eigen_equation_check(p: UniPoly, alpha, window: Optional[Interval] = None, min_width: Optional[int] = None) -> bool:
    """p(M) Psi_{alpha,1} = p(alpha) Psi_{alpha,1}."""
    alpha = to_fraction(alpha)
    psi = _psi_one(alpha, window or default_window())
    return apply_poly_m(p, psi).agrees(psi.scale(p.evaluate(alpha)), min_width)


def dq_psi_identity_check(alpha, q: QParam, window: Optional[Interval] = None, min_width: Optional[int] = None) -> bool:
    """D_q Psi_{alpha,1} = q/(alpha(q-1)) Psi_{alpha/q,1} - 1/(alpha(q-1)) Psi_{alpha,1}."""
    _require_numeric(q)
    if q.is_one:
        raise ValueError("the single-step D_q identity needs q != 1")
    alpha = to_fraction(alpha)
    window = window or default_window()
    qv = q.value
    lhs = apply_dq(_psi_one(alpha, window), q)
    rhs = _psi_one(alpha / qv, window).scale(qv / (alpha * (qv - 1))) - _psi_one(alpha, window).scale(
        1 / (alpha * (qv - 1))
    )
    return lhs.agrees(rhs, min_width)


def _falling_rise(s: int, m: int) -> int:
    product = 1
    for k in range(m):
        product *= s + k
    return product


def action_identity_check(
    p: AlgebraElement, alpha, s: int, window: Optional[Interval] = None, min_width: Optional[int] = None
) -> bool:
    """Chain-independent form of P Psi_{alpha,s} for P of order m >= 1.

    q != 1:
        prod_{i<m} (M - alpha/q^i)^s (M - alpha/q^m)^(s-1) P Psi_{alpha,s}
        = q^(m(m-2s+3)/2) / (alpha^m (q-1)^m) p_m(alpha/q^m)
          prod_{i<m} (alpha/q^m - alpha/q^i)^s Psi_{alpha/q^m,1}
    q = 1:
        (M - alpha)^(s+m-1) P Psi_{alpha,s} = p_m(alpha) (-1)^m s(s+1)...(s+m-1) Psi_{alpha,1}
    """
    q = p.q
    _require_numeric(q)
    m = p.order
    if m is None or m < 1:
        raise ValueError("the action identity needs an element of order >= 1")
    alpha = to_fraction(alpha)
    window = window or default_window()
    psi = psi_chain(alpha, s, window)[-1]
    image = act(p, psi)
    lead = p.leading()

    if q.is_one:
        lhs = apply_linear_factor(alpha, image, s + m - 1)
        factor = lead.evaluate(alpha) * (-1) ** m * _falling_rise(s, m)
        return lhs.agrees(_psi_one(alpha, window).scale(factor), min_width)

    qv = q.value
    target = alpha / qv ** m
    lhs = image
    for i in range(m):
        lhs = apply_linear_factor(alpha / qv ** i, lhs, s)
    lhs = apply_linear_factor(target, lhs, s - 1)
    # m(m + 3) is always even, so the exponent is an integer
    factor = qv ** (m * (m - 2 * s + 3) // 2)
    factor = factor / (alpha ** m * (qv - 1) ** m) * lead.evaluate(target)
    for i in range(m):
        factor *= (target - alpha / qv ** i) ** s
    return lhs.agrees(_psi_one(target, window).scale(factor), min_width)


def collapsed_identity_check(
    alpha, s: int, q: QParam, window: Optional[Interval] = None, min_width: Optional[int] = None
) -> bool:
    """The action identity for P = A (D_q itself).

    q != 1: (M - alpha)^s (M - alpha/q)^(s-1) D_q Psi_{alpha,s}
            = q^(2-s)/(alpha(q-1)) (alpha/q - alpha)^s Psi_{alpha/q,1}
    q = 1:  (M - alpha)^s D_1 Psi_{alpha,s} = -s Psi_{alpha,1}
    """
    return action_identity_check(AlgebraElement.gen_a(q), alpha, s, window, min_width)


@dataclass(frozen=True)
class LpdIndexSet:
    """Indices (alpha, s) of the Psi_{alpha,s} spanning L_{P,d}.

    Attributes:
        maximal: Maximal roots under beta <= beta~ iff beta = q^j beta~, j >= 0
        j_max: J, the largest j(beta) over the roots (0 for q = 1)
    """

    indices: Tuple[PairIndex, ...]
    maximal: Tuple[Fraction, ...]
    j_max: int
    m: int
    d: int

    @property
    def dimension(self) -> int:
        return len(self.indices)


def lpd_index_set(roots: Sequence[Tuple[Fraction, int]], m: int, d: int, q: QParam) -> LpdIndexSet:
    """Index set of L_{P,d} from the roots of the leading coefficient p_m.

    Args:
        roots: (root, multiplicity) pairs of p_m; zero roots are skipped
        m: Order of P
        d: Degree bound of the partner polynomial element
        q: Numeric deformation parameter

    Returns:
        An LpdIndexSet; empty (with a warning) when p_m has no nonzero roots
    """
    _require_numeric(q)
    if m < 1 or d < 1:
        raise ValueError("lpd_index_set needs m >= 1 and d >= 1")
    values = []
    for alpha, _mult in roots:
        alpha = to_fraction(alpha)
        if alpha in values:
            raise DuplicateRoot(f"root {alpha} listed twice")
        if alpha != 0:
            values.append(alpha)
    if not values:
        logger.warning("Leading coefficient has no nonzero roots; L_{P,d} index set is empty")
        return LpdIndexSet(indices=(), maximal=(), j_max=0, m=m, d=d)

    if q.is_one:
        indices = tuple(PairIndex(alpha, s) for alpha in sorted(values) for s in range(1, d + 1))
        return LpdIndexSet(indices=indices, maximal=tuple(sorted(values)), j_max=0, m=m, d=d)

    # beta is maximal when no other root beta~ has beta = q^j beta~ with j > 0
    maximal = []
    for beta in values:
        exps = [_orbit_exponent(q, beta, other) for other in values if other != beta]
        if not any(j is not None and j > 0 for j in exps):
            maximal.append(beta)
    j_max = 0
    for beta in values:
        for top in maximal:
            j = _orbit_exponent(q, beta, top)
            if j is not None and j >= 0:
                j_max = max(j_max, j)
    span = j_max + m + (d - 1) * m
    indices = tuple(
        PairIndex(q.value ** j * beta, s)
        for beta in sorted(maximal)
        for j in range(span + 1)
        for s in range(1, d + 1)
    )
    logger.info(f"L_(P,d) index set: {len(maximal)} maximal roots, J={j_max}, {len(indices)} indices")
    return LpdIndexSet(indices=indices, maximal=tuple(sorted(maximal)), j_max=j_max, m=m, d=d)
