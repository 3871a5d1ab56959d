# app/services/spectral.py

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import sympy

from app.services.algebra import AlgebraElement, homogeneous_parts
from app.services.errors import (
    ConstantElement,
    DegenerateWindow,
    SymbolicModeUnsupported,
    ZeroElement,
)
from app.services.laurent import LaurentWindow
from app.services.poly import UniPoly
from app.services.scalars import QParam, Scalar, exact_q_log, q_falling, q_int

logger = logging.getLogger(__name__)

_Z = sympy.Symbol("z")


@dataclass(frozen=True)
class BandProfile:
    """The diagonals beta_d of the band matrix of P.

    P t^k = sum_d beta_d({k}_q) t^(k+d), where beta_d is a polynomial in Z.

    Attributes:
        beta: d -> beta_d as a UniPoly in Z, only for occurring d
        with_differentiation: d -> True if some term X^i A^j with j >= 1 has i - j = d
        order: Order m of P
    """

    q: QParam
    beta: Dict[int, UniPoly]
    with_differentiation: Dict[int, bool]
    order: int

    @property
    def occurring(self) -> Tuple[int, ...]:
        return tuple(sorted(self.beta))

    @property
    def d_max(self) -> int:
        return max(self.beta)

    @property
    def d_min(self) -> int:
        return min(self.beta)

    @property
    def single_diagonal(self) -> bool:
        return self.d_max == self.d_min

    def value(self, d: int, k: int) -> Scalar:
        """beta_d(k), i.e. the polynomial evaluated at Z = {k}_q."""
        poly = self.beta.get(d)
        if poly is None:
            return self.q.zero()
        return poly.evaluate(q_int(self.q, k))


def _require_nonzero(p: AlgebraElement) -> None:
    if p.is_zero():
        raise ZeroElement("the zero element has no band profile")


def _require_numeric(q: QParam, what: str) -> None:
    if q.is_symbolic:
        raise SymbolicModeUnsupported(f"{what} needs a numeric q")


def band_profile(p: AlgebraElement) -> BandProfile:
    """Collect beta_d = sum_{i-j=d} p_{j,i} r_j(Z) for every occurring d.

    Args:
        p: Nonzero element

    Returns:
        The BandProfile of P

    Raises:
        ZeroElement: If P is zero
    """
    _require_nonzero(p)
    q = p.q
    beta: Dict[int, UniPoly] = {}
    with_diff: Dict[int, bool] = {}
    for d, coeffs in homogeneous_parts(p).items():
        total = UniPoly.zero(q)
        for (j, _i), c in coeffs.items():
            total = total + q_falling(q, j).scale(c)
            with_diff[d] = with_diff.get(d, False) or j >= 1
        beta[d] = total
    return BandProfile(q=q, beta=beta, with_differentiation=with_diff, order=p.order)


def beta_value(profile: BandProfile, d: int, k: int) -> Scalar:
    return profile.value(d, k)


def act_on_monomial(p: AlgebraElement, k: int) -> Dict[int, Scalar]:
    """Coefficients of P t^k, keyed by exponent, from the band profile."""
    if p.is_zero():
        return {}
    profile = band_profile(p)
    result = {}
    for d in profile.occurring:
        value = profile.value(d, k)
        if value != 0:
            result[k + d] = value
    return result


def _rational_roots(poly: UniPoly) -> List[Fraction]:
    if poly.degree < 1:
        return []
    coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(poly.coeffs)]
    roots = sympy.Poly(coeffs, _Z, domain=sympy.QQ).ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


def integer_zeros(poly: UniPoly) -> List[int]:
    """All integers k with poly({k}_q) = 0, for numeric q.

    Each rational root z gives q^k = 1 + z(q - 1), solved exactly; for
    q = 1 the root itself must be an integer.
    """
    q = poly.q
    _require_numeric(q, "integer zero finding")
    zeros = []
    for z in _rational_roots(poly):
        if q.is_one:
            if z.denominator == 1:
                zeros.append(int(z))
            continue
        k = exact_q_log(q, 1 + z * (q.value - 1))
        if k is not None:
            zeros.append(k)
    return sorted(zeros)


def boundary_zeros(p: AlgebraElement) -> Tuple[List[int], List[int]]:
    """Integer zeros of beta_{d_max} and of beta_{d_min}.

    Raises:
        ZeroElement: If P is zero
        SymbolicModeUnsupported: In symbolic mode
    """
    _require_nonzero(p)
    _require_numeric(p.q, "boundary_zeros")
    profile = band_profile(p)
    return integer_zeros(profile.beta[profile.d_max]), integer_zeros(profile.beta[profile.d_min])


@dataclass(frozen=True)
class FiniteSubmatrix:
    """Finite window of the band matrix: gamma_{k,l} = beta_{k-l}(l).

    Columns run over [col_lo, col_hi], rows over
    [col_lo + d_max, col_hi + d_min]; entries[r][c] belongs to
    row row_lo + r and column col_lo + c.
    """

    col_lo: int
    col_hi: int
    row_lo: int
    row_hi: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.row_hi - self.row_lo + 1, self.col_hi - self.col_lo + 1

    def to_sympy(self) -> sympy.Matrix:
        rows, cols = self.shape
        return sympy.Matrix(
            rows,
            cols,
            lambda r, c: sympy.Rational(self.entries[r][c].numerator, self.entries[r][c].denominator),
        )

    def nullity(self) -> int:
        return self.shape[1] - self.to_sympy().rank()


def _column_range(profile: BandProfile, zeros: Iterable[int], margin: int) -> Tuple[int, int]:
    zeros = list(zeros)
    l_lo = min([0] + zeros) - 1 - margin
    l_hi = max([0] + zeros) + 1 + (profile.d_max - profile.d_min) + margin
    return l_lo, l_hi


def finite_submatrix(p: AlgebraElement, margin: int = 0) -> FiniteSubmatrix:
    """Build a finite window of the band matrix that sees the whole kernel.

    Column range [min(0, zeros) - 1, max(0, zeros) + 1 + d_max - d_min],
    widened by margin on both sides.
    """
    profile = band_profile(p)
    top, bottom = boundary_zeros(p)
    col_lo, col_hi = _column_range(profile, top + bottom, margin)
    row_lo, row_hi = col_lo + profile.d_max, col_hi + profile.d_min
    rows = []
    for k in range(row_lo, row_hi + 1):
        rows.append(tuple(profile.value(k - l, l) for l in range(col_lo, col_hi + 1)))
    logger.info(f"Finite submatrix columns [{col_lo}, {col_hi}], rows [{row_lo}, {row_hi}]")
    return FiniteSubmatrix(col_lo, col_hi, row_lo, row_hi, tuple(rows))


@dataclass(frozen=True)
class KernelReport:
    dim: int
    lower: int
    upper: int
    d_max: int
    d_min: int
    n_max: int
    n_min: int


def kernel_dimension(p: AlgebraElement, margin: int = 0) -> KernelReport:
    """Exact dim ker P on Laurent series, with the band bounds.

    Args:
        p: Nonzero element over a numeric q
        margin: Extra columns on each side of the finite submatrix

    Returns:
        KernelReport with d_max - d_min <= dim <= d_max - d_min + min(N_max, N_min)

    Raises:
        ZeroElement: If P is zero
        SymbolicModeUnsupported: In symbolic mode
    """
    _require_nonzero(p)
    _require_numeric(p.q, "kernel_dimension")
    profile = band_profile(p)
    top, bottom = boundary_zeros(p)
    width = profile.d_max - profile.d_min
    if profile.single_diagonal:
        dim = len(top)
    else:
        dim = finite_submatrix(p, margin).nullity()
    report = KernelReport(
        dim=dim,
        lower=width,
        upper=width + min(len(top), len(bottom)),
        d_max=profile.d_max,
        d_min=profile.d_min,
        n_max=len(top),
        n_min=len(bottom),
    )
    if not report.lower <= dim <= report.upper:
        logger.warning(f"Kernel dimension {dim} outside [{report.lower}, {report.upper}]")
    return report


def kernel_dimension_bounds(p: AlgebraElement) -> Tuple[int, int]:
    """(d_max - d_min, d_max - d_min + m); available for symbolic q too."""
    _require_nonzero(p)
    profile = band_profile(p)
    width = profile.d_max - profile.d_min
    return width, width + profile.order


def _extend(
    profile: BandProfile, known: Dict[int, Fraction], lo: int, hi: int, col_lo: int, col_hi: int
) -> Dict[int, Fraction]:
    """Extend a kernel vector of the finite submatrix to [lo, hi]."""
    d_max, d_min = profile.d_max, profile.d_min
    coeffs = dict(known)
    for l in range(col_hi + 1, hi + 1):
        k = l + d_min
        rest = sum(
            (profile.value(k - ll, ll) * coeffs[ll] for ll in range(k - d_max, l)),
            Fraction(0),
        )
        coeffs[l] = -rest / profile.value(d_min, l)
    for l in range(col_lo - 1, lo - 1, -1):
        k = l + d_max
        rest = sum(
            (profile.value(k - ll, ll) * coeffs[ll] for ll in range(l + 1, k - d_min + 1)),
            Fraction(0),
        )
        coeffs[l] = -rest / profile.value(d_max, l)
    return coeffs


def kernel_basis_window(p: AlgebraElement, window: Tuple[int, int]) -> List[LaurentWindow]:
    """A basis of ker P, each vector truncated to the window [lo, hi].

    Raises:
        DegenerateWindow: If the window misses part of the finite submatrix
    """
    _require_nonzero(p)
    _require_numeric(p.q, "kernel_basis_window")
    lo, hi = window
    profile = band_profile(p)
    if profile.single_diagonal:
        top, _ = boundary_zeros(p)
        missing = [k for k in top if not lo <= k <= hi]
        if missing:
            raise DegenerateWindow(f"window [{lo}, {hi}] misses kernel monomials t^{missing}")
        return [LaurentWindow.monomial(k, lo, hi) for k in top]

    sub = finite_submatrix(p)
    if lo > sub.col_lo or hi < sub.col_hi:
        raise DegenerateWindow(
            f"window [{lo}, {hi}] must contain columns [{sub.col_lo}, {sub.col_hi}]"
        )
    basis = []
    for vector in sub.to_sympy().nullspace():
        known = {
            sub.col_lo + i: Fraction(int(sympy.Rational(v).p), int(sympy.Rational(v).q))
            for i, v in enumerate(vector)
        }
        coeffs = _extend(profile, known, lo, hi, sub.col_lo, sub.col_hi)
        basis.append(LaurentWindow(lo, tuple(coeffs[n] for n in range(lo, hi + 1)), (lo, hi)))
    logger.info(f"Kernel basis of size {len(basis)} on window [{lo}, {hi}]")
    return basis


def _shifted(p: AlgebraElement, value: Fraction) -> AlgebraElement:
    return p - AlgebraElement.constant(p.q, value)


def _candidates() -> Iterator[Fraction]:
    yield Fraction(0)
    n = 1
    while True:
        yield Fraction(n)
        yield Fraction(-n)
        n += 1


def spectrum_sample(p: AlgebraElement, count: int, search_limit: int = 200) -> List[Fraction]:
    """Return `count` distinct eigenvalues of P, each certified by kernel_dimension.

    For P made only of homogeneous degree 0 the eigenvalues are beta_0(k),
    scanned for k = 0, 1, 2, ... and then k = -1, -2, ...; otherwise
    candidates 0, 1, -1, 2, -2, ... are tested.

    Raises:
        ConstantElement: If P is constant
        SymbolicModeUnsupported: In symbolic mode
    """
    if p.is_constant():
        raise ConstantElement("a constant element has a single eigenvalue")
    _require_numeric(p.q, "spectrum_sample")
    profile = band_profile(p)
    found: List[Fraction] = []

    if profile.occurring == (0,):
        half = search_limit // 2
        scan = list(range(0, half)) + list(range(-1, -half - 1, -1))
        candidates: Iterable[Fraction] = (profile.value(0, k) for k in scan)
    else:
        source = _candidates()
        candidates = (next(source) for _ in range(search_limit))

    for value in candidates:
        if len(found) >= count:
            break
        if value in found:
            continue
        if kernel_dimension(_shifted(p, value)).dim >= 1:
            found.append(value)
    if len(found) < count:
        logger.warning(f"Found only {len(found)} of {count} eigenvalues within {search_limit} candidates")
    return found


def uniform_bound_check(p: AlgebraElement, samples: Sequence[Fraction]) -> bool:
    """True iff dim ker(P - lambda) <= |d_max| + |d_min| + m for every sample.

    d_max, d_min and m are those of P itself.
    """
    profile = band_profile(p)
    bound = abs(profile.d_max) + abs(profile.d_min) + profile.order
    for value in samples:
        dim = kernel_dimension(_shifted(p, Fraction(value))).dim
        if dim > bound:
            logger.warning(f"dim ker(P - {value}) = {dim} exceeds {bound}")
            return False
    return True
