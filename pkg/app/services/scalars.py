# app/services/scalars.py

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

import sympy

from app.services.errors import InvalidQ, ModeMismatch
from app.services.poly import UniPoly

logger = logging.getLogger(__name__)

NUMERIC = "numeric"
SYMBOLIC = "symbolic"

Rational = Union[int, Fraction]


def to_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Convert an int, Fraction or "num/den" string to a Fraction.

    Args:
        value: Value to convert

    Returns:
        The exact rational value
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


class LaurentPoly:
    """Laurent polynomial in q with exact rational coefficients.

    Stored as a sorted tuple of (exponent, coefficient) pairs with no zero
    coefficients, so structural equality is mathematical equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, Rational]] = None):
        items = []
        for exponent, coeff in (terms or {}).items():
            coeff = to_fraction(coeff)
            if coeff != 0:
                items.append((int(exponent), coeff))
        items.sort()
        self._terms: Tuple[Tuple[int, Fraction], ...] = tuple(items)

    @classmethod
    def _exact(cls, terms: Dict[int, Fraction]) -> "LaurentPoly":
        """Build from exponents and Fraction coefficients without re-validating."""
        poly = cls.__new__(cls)
        poly._terms = tuple(sorted((e, c) for e, c in terms.items() if c))
        return poly

    @classmethod
    def constant(cls, value: Rational) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coeff: Rational = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def degree(self) -> Optional[int]:
        """Highest exponent, or None for the zero polynomial."""
        return self._terms[-1][0] if self._terms else None

    def valuation(self) -> Optional[int]:
        """Lowest exponent, or None for the zero polynomial."""
        return self._terms[0][0] if self._terms else None

    def constant_term(self) -> Fraction:
        return dict(self._terms).get(0, Fraction(0))

    def evaluate(self, value: Rational) -> Fraction:
        value = to_fraction(value)
        total = Fraction(0)
        for exponent, coeff in self._terms:
            total += coeff * value ** exponent
        return total

    @staticmethod
    def _coerce(other) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        result = dict(self._terms)
        for exponent, coeff in other._terms:
            result[exponent] = result.get(exponent, 0) + coeff
        return LaurentPoly._exact(result)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._exact({e: -c for e, c in self._terms})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return LaurentPoly()
            return LaurentPoly._exact({e: c * other for e, c in self._terms})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) == 1:
            (e2, c2), = other._terms
            return LaurentPoly._exact({e1 + e2: c1 * c2 for e1, c1 in self._terms})
        if len(self._terms) == 1:
            return other * self
        result: Dict[int, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                result[e1 + e2] = result.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly._exact(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            if len(self._terms) != 1:
                raise ArithmeticError("only monomials are invertible in Q[q, 1/q]")
            (e, c), = self._terms
            return LaurentPoly({e * exponent: c ** exponent})
        result = LaurentPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division of a Laurent polynomial by zero")
            return LaurentPoly({e: c / other for e, c in self._terms})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) == 1:
            return self * other ** -1
        return self.divide_exact(other)

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division in Q[q, 1/q].

        Args:
            divisor: Nonzero Laurent polynomial dividing self

        Returns:
            The quotient

        Raises:
            ArithmeticError: If the division leaves a remainder
        """
        divisor = self._coerce(divisor)
        if divisor is None or divisor.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly()
        shift_num = self.valuation()
        shift_den = divisor.valuation()
        # dense ordinary polynomials, constant term first
        num = [Fraction(0)] * (self.degree() - shift_num + 1)
        for e, c in self._terms:
            num[e - shift_num] = c
        den = [Fraction(0)] * (divisor.degree() - shift_den + 1)
        for e, c in divisor._terms:
            den[e - shift_den] = c
        if len(num) < len(den):
            raise ArithmeticError("Laurent division is not exact")
        quotient = [Fraction(0)] * (len(num) - len(den) + 1)
        for i in range(len(quotient) - 1, -1, -1):
            factor = num[i + len(den) - 1] / den[-1]
            quotient[i] = factor
            for j, d in enumerate(den):
                num[i + j] -= factor * d
        if any(num):
            raise ArithmeticError("Laurent division is not exact")
        offset = shift_num - shift_den
        return LaurentPoly({i + offset: c for i, c in enumerate(quotient)})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return not self._terms
            return self._terms == ((0, other),)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_term())
        return hash(self._terms)

    def __repr__(self):
        return f"LaurentPoly({dict(self._terms)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exponent, coeff in reversed(self._terms):
            if exponent == 0:
                mono = ""
            elif exponent == 1:
                mono = "q"
            else:
                mono = f"q^{exponent}"
            if mono and coeff == 1:
                text = mono
            elif mono and coeff == -1:
                text = f"-{mono}"
            elif mono:
                text = f"{coeff}*{mono}"
            else:
                text = str(coeff)
            parts.append(text)
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out


Scalar = Union[Fraction, LaurentPoly]


@dataclass(frozen=True)
class QParam:
    """The deformation parameter together with the scalar ring built over it.

    In numeric mode scalars are Fractions; in symbolic mode they are
    LaurentPoly values in the indeterminate q.
    """

    mode: str
    value: Optional[Fraction] = None

    @classmethod
    def numeric(cls, value: Union[int, str, Fraction]) -> "QParam":
        return cls(NUMERIC, to_fraction(value))

    @classmethod
    def symbolic(cls) -> "QParam":
        return cls(SYMBOLIC, None)

    @classmethod
    def parse(cls, text: str) -> "QParam":
        """Parse "symbolic" or a rational literal such as "3/2"."""
        text = str(text).strip()
        if text.lower() in (SYMBOLIC, "sym", "q"):
            return cls.symbolic()
        try:
            return cls.numeric(text)
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidQ(f"cannot parse q from {text!r}: {e}") from e

    @property
    def is_symbolic(self) -> bool:
        return self.mode == SYMBOLIC

    @property
    def is_one(self) -> bool:
        return not self.is_symbolic and self.value == 1

    def scalar(self, value) -> Scalar:
        """Coerce an int, Fraction, string or LaurentPoly into this ring."""
        if isinstance(value, LaurentPoly):
            if self.is_symbolic:
                return value
            if value.is_constant():
                return value.constant_term()
            raise ModeMismatch(f"Laurent polynomial {value} used with numeric q={self.value}")
        value = to_fraction(value)
        return LaurentPoly.constant(value) if self.is_symbolic else value

    def zero(self) -> Scalar:
        return self.scalar(0)

    def one(self) -> Scalar:
        return self.scalar(1)

    def gen(self) -> Scalar:
        """The parameter q itself as a scalar."""
        return LaurentPoly.monomial(1) if self.is_symbolic else self.value

    def power(self, exponent: int) -> Scalar:
        """q raised to an integer exponent."""
        if self.is_symbolic:
            return LaurentPoly.monomial(exponent)
        return self.value ** exponent

    def evaluate(self, value: Scalar, at: Optional[Rational] = None) -> Fraction:
        """Specialize a scalar to a rational (symbolic mode needs `at`)."""
        if isinstance(value, LaurentPoly):
            if at is None:
                raise ValueError("a symbolic scalar needs a value for q")
            return value.evaluate(at)
        return value

    def __str__(self):
        return SYMBOLIC if self.is_symbolic else str(self.value)


def validate_q(q: QParam) -> None:
    """Check the standing assumption q != 0 and {n}_q != 0 for n != 0.

    Over the rationals the only violations are q = 0 and q = -1 (the other
    roots of unity are irrational); q = 1 is valid in characteristic 0.

    Args:
        q: Parameter to validate

    Raises:
        InvalidQ: If q is 0 or -1
    """
    if q.mode not in (NUMERIC, SYMBOLIC):
        raise InvalidQ(f"unknown q mode {q.mode!r}")
    if q.is_symbolic:
        return
    if q.value is None:
        raise InvalidQ("numeric q needs a value")
    if q.value == 0:
        raise InvalidQ("q must be nonzero")
    if q.value == -1:
        raise InvalidQ("q = -1 gives {2}_q = 0")


def q_int(q: QParam, n: int) -> Scalar:
    """Return the q-integer {n}_q = (q^n - 1)/(q - 1), or n when q = 1.

    Args:
        q: Deformation parameter
        n: Any integer

    Returns:
        A rational, or a Laurent polynomial in symbolic mode
    """
    if q.is_symbolic:
        numerator = LaurentPoly({n: 1}) - 1
        return numerator.divide_exact(LaurentPoly({1: 1, 0: -1}))
    if q.value == 1:
        return Fraction(n)
    return (q.value ** n - 1) / (q.value - 1)


def q_falling(q: QParam, j: int) -> UniPoly:
    """Polynomial r_j with {k}{k-1}...{k-j+1} = r_j({k}_q) for all k.

    Built from {n-1}_q = ({n}_q - 1)/q: r_0 = 1 and
    r_j(Z) = Z * r_{j-1}((Z - 1)/q).

    Args:
        q: Deformation parameter
        j: Nonnegative integer

    Returns:
        UniPoly in Z of degree exactly j
    """
    if j < 0:
        raise ValueError("q_falling needs j >= 0")
    inverse = q.power(-1)
    shift = UniPoly(q, (-inverse, inverse))
    z = UniPoly.variable(q)
    result = UniPoly.constant(q, 1)
    for _ in range(j):
        result = z * result.compose(shift)
    return result


def exact_q_log(q: QParam, target: Rational) -> Optional[int]:
    """Solve q^k = target for an integer k, exactly.

    The candidate exponent comes from comparing the multiplicity of one prime
    of q's numerator or denominator in the target; it is then confirmed by
    exact exponentiation. Requires numeric q outside {0, 1, -1}.

    Args:
        q: Numeric deformation parameter
        target: Nonzero rational

    Returns:
        The unique k, or None if no integer power of q equals target
    """
    if q.is_symbolic or q.value in (0, 1, -1):
        raise ValueError("exact_q_log needs a numeric q outside {0, 1, -1}")
    target = to_fraction(target)
    if target == 0:
        return None
    if target == 1:
        return 0
    base = q.value
    prime_source = abs(base.numerator) if abs(base.numerator) > 1 else base.denominator
    prime = min(sympy.factorint(prime_source))
    base_val = sympy.multiplicity(prime, abs(base.numerator)) - sympy.multiplicity(prime, base.denominator)
    target_val = sympy.multiplicity(prime, abs(target.numerator)) - sympy.multiplicity(prime, target.denominator)
    if target_val % base_val:
        return None
    k = target_val // base_val
    return k if base ** k == target else None
