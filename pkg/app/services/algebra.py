# app/services/algebra.py

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple

from app.services.errors import ModeMismatch, NonCommuting
from app.services.poly import BiPoly, UniPoly, scale_argument
from app.services.scalars import QParam, Scalar, q_int

logger = logging.getLogger(__name__)

# normal form terms: j -> p_j, meaning p_j(B) A^j
Terms = Tuple[Tuple[int, UniPoly], ...]


def q_derivative(p: UniPoly) -> UniPoly:
    """Apply D_q to a polynomial: X^i goes to {i}_q X^(i-1).

    Args:
        p: Polynomial in X

    Returns:
        The q-derivative, zero for constants
    """
    return UniPoly(p.q, tuple(q_int(p.q, i) * c for i, c in enumerate(p.coeffs) if i > 0))


def _add_term(acc: Dict[int, UniPoly], j: int, p: UniPoly) -> None:
    if p.is_zero():
        return
    acc[j] = acc[j] + p if j in acc else p


@lru_cache(maxsize=4096)
def _a_power_times_x_power(q: QParam, j: int, i: int) -> Terms:
    """Normal form of A^j X^i, moving one A at a time.

    A * p(B) = p(qB) A + (D_q p)(B)
    """
    if j == 0:
        return ((0, UniPoly.monomial(q, i)),)
    acc: Dict[int, UniPoly] = {}
    for l, p in _a_power_times_x_power(q, j - 1, i):
        _add_term(acc, l + 1, scale_argument(p, 1))
        _add_term(acc, l, q_derivative(p))
    return tuple(sorted(acc.items()))


@dataclass(frozen=True)
class AlgebraElement:
    """Element of H_K(q) in normal form sum_j p_j(B) A^j.

    Only nonzero p_j are stored, sorted by j; the empty tuple is zero.
    """

    q: QParam
    terms: Terms = ()

    def __post_init__(self):
        clean = {}
        for j, p in self.terms:
            if p.q != self.q:
                raise ModeMismatch(f"coefficient over q={p.q} in element over q={self.q}")
            if j < 0:
                raise ValueError("powers of A must be nonnegative")
            _add_term(clean, j, p)
        object.__setattr__(
            self, "terms", tuple(sorted((j, p) for j, p in clean.items() if not p.is_zero()))
        )

    @classmethod
    def from_dict(cls, q: QParam, terms: Mapping[int, UniPoly]) -> "AlgebraElement":
        return cls(q, tuple(terms.items()))

    @classmethod
    def zero(cls, q: QParam) -> "AlgebraElement":
        return cls(q, ())

    @classmethod
    def constant(cls, q: QParam, value) -> "AlgebraElement":
        return cls(q, ((0, UniPoly.constant(q, value)),))

    @classmethod
    def one(cls, q: QParam) -> "AlgebraElement":
        return cls.constant(q, 1)

    @classmethod
    def gen_a(cls, q: QParam) -> "AlgebraElement":
        return cls(q, ((1, UniPoly.constant(q, 1)),))

    @classmethod
    def gen_b(cls, q: QParam) -> "AlgebraElement":
        return cls(q, ((0, UniPoly.variable(q)),))

    @classmethod
    def from_poly(cls, p: UniPoly, j: int = 0) -> "AlgebraElement":
        """The element p(B) A^j."""
        return cls(p.q, ((j, p),))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return self.is_zero() or (self.order == 0 and self.coefficient(0).degree == 0)

    @property
    def order(self) -> Optional[int]:
        """Highest power of A; None for the zero element."""
        return self.terms[-1][0] if self.terms else None

    def coefficient(self, j: int) -> UniPoly:
        for jj, p in self.terms:
            if jj == j:
                return p
        return UniPoly.zero(self.q)

    def leading(self) -> UniPoly:
        return self.terms[-1][1] if self.terms else UniPoly.zero(self.q)

    def max_x_degree(self) -> int:
        """max_j deg p_j; -1 for zero."""
        return max((p.degree for _, p in self.terms), default=-1)

    def _check(self, other: "AlgebraElement") -> None:
        if self.q != other.q:
            raise ModeMismatch(f"elements over q={self.q} and q={other.q}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.q, self.terms + other.terms)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.q, tuple((j, -p) for j, p in self.terms))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def __pow__(self, exponent: int) -> "AlgebraElement":
        return power(self, exponent)

    def scale(self, factor: Scalar) -> "AlgebraElement":
        return AlgebraElement(self.q, tuple((j, p.scale(factor)) for j, p in self.terms))

    def __str__(self):
        from app.utils.formatters import format_element

        return format_element(self)


def multiply(left: AlgebraElement, right: AlgebraElement) -> AlgebraElement:
    """Normal form of the product left * right.

    Args:
        left: First factor
        right: Second factor

    Returns:
        The product as an AlgebraElement

    Raises:
        ModeMismatch: If the factors live over different q
    """
    left._check(right)
    q = left.q
    acc: Dict[int, UniPoly] = {}
    for j, p in left.terms:
        for k, r in right.terms:
            for i, c in enumerate(r.coeffs):
                if c == 0:
                    continue
                for l, s in _a_power_times_x_power(q, j, i):
                    _add_term(acc, l + k, (p * s).scale(c))
    return AlgebraElement.from_dict(q, acc)


def commutator(left: AlgebraElement, right: AlgebraElement) -> AlgebraElement:
    """PQ - QP; zero exactly when the two elements commute."""
    return multiply(left, right) - multiply(right, left)


def power(element: AlgebraElement, exponent: int) -> AlgebraElement:
    if exponent < 0:
        raise ValueError("negative powers are not defined in H_K(q)")
    result = AlgebraElement.one(element.q)
    for _ in range(exponent):
        result = multiply(result, element)
    return result


def order(element: AlgebraElement) -> Optional[int]:
    return element.order


class ProductTable:
    """Cache of the products P^a Q^b for one pair (P, Q).

    Substituting several curves into the same pair reuses every power and
    product instead of rebuilding them per curve.
    """

    def __init__(self, p: AlgebraElement, q_elem: AlgebraElement):
        p._check(q_elem)
        self.p = p
        self.q_elem = q_elem
        self._p_powers = [AlgebraElement.one(p.q)]
        self._q_powers = [AlgebraElement.one(p.q)]
        self._products: Dict[Tuple[int, int], AlgebraElement] = {}

    @staticmethod
    def _power(powers: List[AlgebraElement], element: AlgebraElement, k: int) -> AlgebraElement:
        while len(powers) <= k:
            powers.append(multiply(powers[-1], element))
        return powers[k]

    def product(self, a: int, b: int) -> AlgebraElement:
        """P^a Q^b in normal form."""
        key = (a, b)
        if key not in self._products:
            if b == 0:
                value = self._power(self._p_powers, self.p, a)
            elif a == 0:
                value = self._power(self._q_powers, self.q_elem, b)
            else:
                value = multiply(self._power(self._p_powers, self.p, a), self._power(self._q_powers, self.q_elem, b))
            self._products[key] = value
        return self._products[key]

    def evaluate(self, curve: BiPoly) -> AlgebraElement:
        """Sum of coeff * P^a Q^b over the monomials lambda^a mu^b of the curve."""
        terms = []
        for (a, b), coeff in curve.terms:
            terms.extend(self.product(a, b).scale(coeff).terms)
        return AlgebraElement(self.p.q, tuple(terms))


def substitute(
    curve: BiPoly,
    p: AlgebraElement,
    q_elem: AlgebraElement,
    require_commuting: bool = True,
    table: Optional[ProductTable] = None,
) -> AlgebraElement:
    """Evaluate a polynomial in (lambda, mu) at (P, Q).

    Each monomial lambda^a mu^b becomes P^a Q^b. For commuting P, Q the
    ordering is immaterial; for a non-commuting pair this fixed ordering
    is used only when require_commuting is False.

    Args:
        curve: Polynomial in lambda and mu
        p: Element substituted for lambda
        q_elem: Element substituted for mu
        require_commuting: Raise if P and Q do not commute
        table: Products of the same pair left over from earlier substitutions

    Returns:
        The evaluated element in normal form

    Raises:
        NonCommuting: If require_commuting and PQ != QP
    """
    p._check(q_elem)
    if curve.q != p.q:
        raise ModeMismatch(f"curve over q={curve.q} substituted with q={p.q}")
    if require_commuting and not commutator(p, q_elem).is_zero():
        raise NonCommuting("substitute needs commuting elements")
    if table is None or table.p != p or table.q_elem != q_elem:
        table = ProductTable(p, q_elem)
    return table.evaluate(curve)


def evaluate_univariate(f: UniPoly, w: AlgebraElement) -> AlgebraElement:
    """Return f(W) by Horner's rule."""
    if f.q != w.q:
        raise ModeMismatch(f"polynomial over q={f.q} evaluated at element over q={w.q}")
    result = AlgebraElement.zero(w.q)
    for c in reversed(f.coeffs):
        result = multiply(result, w) + AlgebraElement.constant(w.q, c)
    return result


def homogeneous_parts(element: AlgebraElement) -> Dict[int, Dict[Tuple[int, int], Scalar]]:
    """Group the coefficients c of X^i A^j by homogeneous degree d = i - j.

    Returns:
        Mapping d -> {(j, i): c}
    """
    parts: Dict[int, Dict[Tuple[int, int], Scalar]] = {}
    for j, p in element.terms:
        for i, c in enumerate(p.coeffs):
            if c != 0:
                parts.setdefault(i - j, {})[(j, i)] = c
    return parts
