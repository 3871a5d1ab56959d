# app/services/poly.py

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, ClassVar, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy

from app.services.errors import ModeMismatch

if TYPE_CHECKING:
    from app.services.scalars import QParam, Scalar

logger = logging.getLogger(__name__)

DETERMINANT_METHODS = ("minor", "bareiss")

# variable names of the trivariate ring K[X, lambda, mu], in monomial-key order
TRI_VARIABLES = ("x", "l", "m")
BI_VARIABLES = ("l", "m")


def _check_same_ring(left, right) -> None:
    if left.q != right.q:
        raise ModeMismatch(f"operands over q={left.q} and q={right.q}")


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial, coefficients listed constant term first.

    Used for the coefficients p_j(X) of algebra elements and also for
    polynomials in Z (the r_j and beta_d) or T (DSL input).
    """

    q: "QParam"
    coeffs: Tuple["Scalar", ...] = ()

    def __post_init__(self):
        coeffs = [self.q.scalar(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def zero(cls, q: "QParam") -> "UniPoly":
        return cls(q, ())

    @classmethod
    def constant(cls, q: "QParam", value) -> "UniPoly":
        return cls(q, (value,))

    @classmethod
    def variable(cls, q: "QParam") -> "UniPoly":
        return cls(q, (0, 1))

    @classmethod
    def monomial(cls, q: "QParam", degree: int, coeff=1) -> "UniPoly":
        return cls(q, (0,) * degree + (coeff,))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree in the variable; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> "Scalar":
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.q.zero()

    def leading(self) -> "Scalar":
        return self.coeffs[-1] if self.coeffs else self.q.zero()

    def __add__(self, other: "UniPoly") -> "UniPoly":
        _check_same_ring(self, other)
        size = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.q, tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)))

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.q, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        _check_same_ring(self, other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.q)
        result = [self.q.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                result[i + j] = result[i + j] + a * b
        return UniPoly(self.q, tuple(result))

    def scale(self, factor: "Scalar") -> "UniPoly":
        """Multiply every coefficient by a scalar."""
        factor = self.q.scalar(factor)
        return UniPoly(self.q, tuple(c * factor for c in self.coeffs))

    def __pow__(self, exponent: int) -> "UniPoly":
        result = UniPoly.constant(self.q, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, value: "Scalar") -> "Scalar":
        total = self.q.zero()
        for c in reversed(self.coeffs):
            total = total * value + c
        return total

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """Return self(inner) by Horner's rule."""
        _check_same_ring(self, inner)
        result = UniPoly.zero(self.q)
        for c in reversed(self.coeffs):
            result = result * inner + UniPoly.constant(self.q, c)
        return result

    def scale_argument(self, k: int) -> "UniPoly":
        return scale_argument(self, k)


def scale_argument(p: UniPoly, k: int) -> UniPoly:
    """Return p(q^k X): the coefficient of X^i is multiplied by q^(k*i).

    Args:
        p: Polynomial in X
        k: Nonnegative shift exponent

    Returns:
        The rescaled polynomial
    """
    if k == 0:
        return p
    return UniPoly(p.q, tuple(c * p.q.power(k * i) for i, c in enumerate(p.coeffs)))


@dataclass(frozen=True)
class SparsePoly:
    """Sparse multivariate polynomial over the scalars of a QParam.

    `terms` maps exponent tuples to nonzero scalars and is kept sorted
    lexicographically, which is also the canonical printing order.
    """

    q: "QParam"
    terms: Tuple[Tuple[Tuple[int, ...], "Scalar"], ...] = ()

    NVARS: ClassVar[int] = 0
    VARIABLES: ClassVar[Tuple[str, ...]] = ()

    def __post_init__(self):
        items = []
        for key, coeff in self.terms:
            coeff = self.q.scalar(coeff)
            if coeff != 0:
                items.append((tuple(key), coeff))
        items.sort(key=lambda item: item[0])
        object.__setattr__(self, "terms", tuple(items))

    @classmethod
    def from_dict(cls, q: "QParam", terms: Mapping[Tuple[int, ...], "Scalar"]):
        return cls(q, tuple(terms.items()))

    @classmethod
    def zero(cls, q: "QParam"):
        return cls(q, ())

    @classmethod
    def one(cls, q: "QParam"):
        return cls.monomial(q, (0,) * cls.NVARS, 1)

    @classmethod
    def monomial(cls, q: "QParam", key: Sequence[int], coeff=1):
        return cls(q, ((tuple(key), coeff),))

    def as_dict(self) -> Dict[Tuple[int, ...], "Scalar"]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _var_index(self, var: str) -> int:
        return self.VARIABLES.index(var)

    def degree_in(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        idx = self._var_index(var)
        return max((key[idx] for key, _ in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(key) for key, _ in self.terms), default=-1)

    def coefficient_in(self, var: str, power: int):
        """Coefficient of var^power, as a polynomial of the same type without var."""
        idx = self._var_index(var)
        picked = {}
        for key, coeff in self.terms:
            if key[idx] == power:
                reduced = list(key)
                reduced[idx] = 0
                picked[tuple(reduced)] = coeff
        return type(self).from_dict(self.q, picked)

    def __add__(self, other):
        _check_same_ring(self, other)
        result = dict(self.terms)
        for key, coeff in other.terms:
            result[key] = result[key] + coeff if key in result else coeff
        return type(self).from_dict(self.q, result)

    def __neg__(self):
        return type(self)(self.q, tuple((key, -coeff) for key, coeff in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        _check_same_ring(self, other)
        result: Dict[Tuple[int, ...], "Scalar"] = {}
        for k1, c1 in self.terms:
            for k2, c2 in other.terms:
                key = tuple(a + b for a, b in zip(k1, k2))
                product = c1 * c2
                result[key] = result[key] + product if key in result else product
        return type(self).from_dict(self.q, result)

    def scale(self, factor: "Scalar"):
        factor = self.q.scalar(factor)
        return type(self)(self.q, tuple((key, coeff * factor) for key, coeff in self.terms))

    def __pow__(self, exponent: int):
        result = type(self).one(self.q)
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, point: Sequence["Scalar"]) -> "Scalar":
        total = self.q.zero()
        for key, coeff in self.terms:
            term = coeff
            for value, power in zip(point, key):
                term = term * value ** power
            total = total + term
        return total


class BiPoly(SparsePoly):
    """Polynomial in (lambda, mu); keys are (a, b) for lambda^a mu^b."""

    NVARS = 2
    VARIABLES = BI_VARIABLES


class TriPoly(SparsePoly):
    """Polynomial in (X, lambda, mu); keys are (i, a, b) for X^i lambda^a mu^b."""

    NVARS = 3
    VARIABLES = TRI_VARIABLES

    @classmethod
    def from_x_poly(cls, p: UniPoly) -> "TriPoly":
        return cls.from_dict(p.q, {(i, 0, 0): c for i, c in enumerate(p.coeffs)})

    @classmethod
    def from_bipoly(cls, b: BiPoly, x_power: int = 0) -> "TriPoly":
        return cls.from_dict(b.q, {(x_power, a, m): c for (a, m), c in b.terms})

    def exact_divide(self, divisor: "TriPoly") -> "TriPoly":
        """Exact division in Q[q, 1/q][X, lambda, mu].

        The coefficients are flattened so q becomes a fourth (Laurent)
        variable; long division in lex order then terminates whenever the
        quotient exists.

        Raises:
            ArithmeticError: If divisor does not divide self
        """
        _check_same_ring(self, divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        remainder = _flatten(self)
        den = _flatten(divisor)
        lead_key = max(den)
        lead_coeff = den[lead_key]
        quotient: Dict[Tuple[int, ...], Fraction] = {}
        budget = 64 * (len(remainder) + 1) * (len(den) + 1)
        while remainder:
            budget -= 1
            if budget < 0:
                raise ArithmeticError("polynomial division did not terminate")
            key = max(remainder)
            shift = tuple(a - b for a, b in zip(key, lead_key))
            if any(s < 0 for s in shift[:3]):
                raise ArithmeticError("polynomial division is not exact")
            factor = remainder[key] / lead_coeff
            quotient[shift] = quotient.get(shift, 0) + factor
            for dkey, dcoeff in den.items():
                target = tuple(a + b for a, b in zip(dkey, shift))
                value = remainder.get(target, 0) - factor * dcoeff
                if value == 0:
                    remainder.pop(target, None)
                else:
                    remainder[target] = value
        return _unflatten(self.q, quotient)


def _flatten(p: TriPoly) -> Dict[Tuple[int, ...], Fraction]:
    flat: Dict[Tuple[int, ...], Fraction] = {}
    for key, coeff in p.terms:
        if p.q.is_symbolic:
            for exponent, c in coeff.items():
                flat[key + (exponent,)] = c
        else:
            flat[key + (0,)] = coeff
    return flat


def _unflatten(q: "QParam", flat: Mapping[Tuple[int, ...], Fraction]) -> TriPoly:
    grouped: Dict[Tuple[int, ...], "Scalar"] = {}
    for key, c in flat.items():
        if c == 0:
            continue
        value = c * q.power(key[3]) if q.is_symbolic else c
        grouped[key[:3]] = grouped[key[:3]] + value if key[:3] in grouped else q.scalar(value)
    return TriPoly.from_dict(q, grouped)


@dataclass(frozen=True)
class TriMatrix:
    """Square matrix of TriPoly entries, stored row by row."""

    rows: Tuple[Tuple[TriPoly, ...], ...]
    q: Optional["QParam"] = field(default=None)

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("TriMatrix must be square")
        if self.q is None and rows:
            object.__setattr__(self, "q", rows[0][0].q)

    @property
    def size(self) -> int:
        return len(self.rows)

    def entry(self, row: int, col: int) -> TriPoly:
        return self.rows[row][col]

    def swap_rows(self, i: int, j: int) -> "TriMatrix":
        rows = list(self.rows)
        rows[i], rows[j] = rows[j], rows[i]
        return TriMatrix(tuple(rows), self.q)

    def evaluate(self, point: Sequence["Scalar"], q_value=None) -> List[List[Fraction]]:
        """Specialize every entry at (X, lambda, mu) = point (and q in symbolic mode)."""
        return [
            [self.q.evaluate(entry.evaluate(point), q_value) for entry in row]
            for row in self.rows
        ]


def determinant(mat: TriMatrix, method: str = "minor") -> TriPoly:
    """Exact determinant of a TriMatrix.

    Args:
        mat: Square matrix over K[X, lambda, mu]
        method: "minor" (memoized expansion, no division) or "bareiss"
            (fraction-free elimination, used as a cross-check)

    Returns:
        The determinant as a TriPoly
    """
    if method not in DETERMINANT_METHODS:
        raise ValueError(f"unknown determinant method {method!r}")
    logger.info(f"Computing {mat.size}x{mat.size} determinant ({method})")
    if mat.size == 0:
        raise ValueError("determinant of an empty matrix")
    if method == "bareiss":
        return _bareiss(mat)
    return _minor_expansion(mat)


def _minor_expansion(mat: TriMatrix) -> TriPoly:
    n = mat.size
    rows = mat.rows
    q = mat.q

    # expansion along the first remaining row; the memo key is the set of
    # columns still available, which also fixes the row
    @lru_cache(maxsize=None)
    def minor(mask: int) -> TriPoly:
        row = n - bin(mask).count("1")
        if row == n:
            return TriPoly.one(q)
        total = TriPoly.zero(q)
        sign = 1
        for col in range(n):
            if not (mask >> col) & 1:
                continue
            entry = rows[row][col]
            if not entry.is_zero():
                rest = minor(mask & ~(1 << col))
                if not rest.is_zero():
                    term = entry * rest
                    total = total + term if sign > 0 else total - term
            sign = -sign
        return total

    return minor((1 << n) - 1)


def _bareiss(mat: TriMatrix) -> TriPoly:
    n = mat.size
    work = [list(row) for row in mat.rows]
    q = mat.q
    sign = 1
    previous = TriPoly.one(q)
    for k in range(n - 1):
        if work[k][k].is_zero():
            pivot = next((r for r in range(k + 1, n) if not work[r][k].is_zero()), None)
            if pivot is None:
                return TriPoly.zero(q)
            work[k], work[pivot] = work[pivot], work[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = work[i][j] * work[k][k] - work[i][k] * work[k][j]
                work[i][j] = numerator.exact_divide(previous)
        previous = work[k][k]
    result = work[n - 1][n - 1]
    return result if sign > 0 else -result


def numeric_determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a rational matrix, computed by sympy."""
    if not rows:
        return Fraction(1)
    matrix = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in rows])
    value = sympy.Rational(matrix.det(method="bareiss"))
    return Fraction(int(value.p), int(value.q))


def extract_x_coefficients(d: TriPoly) -> List[BiPoly]:
    """Split a TriPoly into BiPoly coefficients of X^0 .. X^deg.

    Args:
        d: Polynomial in (X, lambda, mu)

    Returns:
        List whose i-th entry is the coefficient of X^i; empty for zero
    """
    degree = d.degree_in("x")
    buckets: List[Dict[Tuple[int, int], "Scalar"]] = [{} for _ in range(degree + 1)]
    for (i, a, b), coeff in d.terms:
        buckets[i][(a, b)] = coeff
    return [BiPoly.from_dict(d.q, bucket) for bucket in buckets]


def assemble_x_coefficients(q: "QParam", parts: Iterable[BiPoly]) -> TriPoly:
    """Inverse of extract_x_coefficients."""
    total = TriPoly.zero(q)
    for i, part in enumerate(parts):
        total = total + TriPoly.from_bipoly(part, i)
    return total
