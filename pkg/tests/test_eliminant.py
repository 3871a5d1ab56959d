"""Tests for the eliminant matrix, the curves and the verification report."""

import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from app.services import eliminant as elim
from app.services.algebra import AlgebraElement, commutator
from app.services.errors import ConstantPolynomial, ZeroOrder
from app.services.expr_parser import parse_element, parse_poly
from app.services.poly import BiPoly, TriPoly, UniPoly, determinant, numeric_determinant
from app.services.scalars import LaurentPoly, QParam

CORPUS_QS = ["1", "2", "1/2", "3/2", "5", "symbolic"]


def tri(q, terms):
    return TriPoly.from_dict(q, terms)


def lam2_minus_mu(q):
    return tri(q, {(0, 2, 0): 1, (0, 0, 1): -1})


class TestBuildMatrix:
    def test_a_and_a_squared(self, el, q2):
        mat = elim.build_matrix(el("A", q2), el("A^2", q2))
        one, lam, mu = tri(q2, {(0, 0, 0): 1}), tri(q2, {(0, 1, 0): 1}), tri(q2, {(0, 0, 1): 1})
        zero = TriPoly.zero(q2)
        assert mat.rows == ((-lam, one, zero), (zero, -lam, one), (-mu, zero, one))

    def test_ba_pair(self, el, q2):
        mat = elim.build_matrix(el("B*A", q2), el("q*B^2*A^2 + B*A", q2))
        lam, mu = tri(q2, {(0, 1, 0): 1}), tri(q2, {(0, 0, 1): 1})
        x = tri(q2, {(1, 0, 0): 1})
        one, zero = tri(q2, {(0, 0, 0): 1}), TriPoly.zero(q2)
        assert mat.rows == (
            (-lam, x, zero),
            (zero, one - lam, x.scale(2)),
            (-mu, x, tri(q2, {(2, 0, 0): 2})),
        )

    def test_zero_pattern_m3_n2(self, q2):
        w = parse_element("B*A + A", q2)
        p, q_elem = elim.make_commuting_pair(w, parse_poly("T^3", q2), parse_poly("T^2", q2))
        mat = elim.build_matrix(p, q_elem)
        assert mat.size == 5
        # 1-based (row, column) positions that are always zero
        for row, col in [(1, 5), (3, 4), (3, 5), (4, 5)]:
            assert mat.entry(row - 1, col - 1).is_zero()

    def test_zero_order(self, el, q2):
        with pytest.raises(ZeroOrder):
            elim.build_matrix(el("B", q2), el("A", q2))


class TestEliminant:
    def test_a_a_squared(self, el, any_q):
        assert elim.eliminant(el("A", any_q), el("A^2", any_q)) == lam2_minus_mu(any_q)

    def test_a_a(self, el, any_q):
        assert elim.eliminant(el("A", any_q), el("A", any_q)) == tri(any_q, {(0, 0, 1): 1, (0, 1, 0): -1})

    def test_ba_pair(self, el, any_q):
        delta = elim.eliminant(el("B*A", any_q), el("(B*A)^2", any_q))
        q_x2 = tri(any_q, {(2, 0, 0): any_q.gen()})
        assert delta == q_x2 * lam2_minus_mu(any_q)

    def test_bareiss_agrees(self, el, qsym):
        p, q_elem = el("B*A", qsym), el("(B*A)^2", qsym)
        assert elim.eliminant(p, q_elem, "bareiss") == elim.eliminant(p, q_elem)


class TestCurves:
    def test_a_a_squared(self, el, q2):
        cs = elim.curves(el("A", q2), el("A^2", q2))
        assert (cs.s, cs.t) == (0, 0)
        assert cs.deltas == (BiPoly.from_dict(q2, {(2, 0): 1, (0, 1): -1}),)

    def test_ba_pair(self, el, qsym):
        cs = elim.curves(el("B*A", qsym), el("(B*A)^2", qsym))
        assert (cs.m, cs.n, cs.s, cs.t) == (1, 2, 4, 1)
        assert len(cs.deltas) == 5
        assert cs.nonzero_indices() == [2]
        qv = qsym.gen()
        assert cs.deltas[2] == BiPoly.from_dict(qsym, {(2, 0): qv, (0, 1): -qv})

    def test_a_a(self, el, q2):
        assert elim.curves(el("A", q2), el("A", q2)).deltas == (BiPoly.from_dict(q2, {(0, 1): 1, (1, 0): -1}),)


class TestVerify:
    def test_a_a_squared(self, el, any_q):
        report = elim.verify(el("A", any_q), el("A^2", any_q))
        assert report.passed
        assert report.residuals[0].residual.is_zero()

    def test_leading_coefficients_ba_pair(self, el, qsym):
        p, q_elem = el("B*A", qsym), el("(B*A)^2", qsym)
        report = elim.verify(p, q_elem)
        assert report.passed
        qv = qsym.gen()
        assert elim.expected_lambda_leading(p, q_elem) == tri(qsym, {(2, 0, 0): qv})
        assert elim.expected_mu_leading(p, q_elem) == tri(qsym, {(2, 0, 0): -qv})
        assert report.checks["q_integral"] is True
        assert report.q_degree == 1 == report.curves.t

    def test_q_integral_not_applicable_numeric(self, el, q2):
        report = elim.verify(el("A", q2), el("A^2", q2))
        assert report.checks["q_integral"] is None
        assert report.passed

    def test_non_commuting(self, el, q2):
        report = elim.verify(el("A", q2), el("B*A", q2))
        assert not report.commuting
        assert not report.passed
        assert report.checks["annihilation"] is None
        assert all(r.residual is None for r in report.residuals)

    def test_non_commuting_forced(self, el, q2):
        report = elim.verify(el("A", q2), el("B*A", q2), force=True)
        assert not report.passed
        assert any(not r.residual.is_zero() for r in report.residuals)

    def test_swapped_pair(self, el, q2):
        p, q_elem = el("A + 1", q2), el("A^2 + 3*A + 2", q2)
        assert elim.verify(p, q_elem).passed
        assert elim.verify(q_elem, p).passed


class TestMakeCommutingPair:
    def test_a(self, q2):
        p, q_elem = elim.make_commuting_pair(
            AlgebraElement.gen_a(q2), parse_poly("T", q2), parse_poly("T^2", q2)
        )
        assert p == parse_element("A", q2)
        assert q_elem == parse_element("A^2", q2)

    def test_ba(self, any_q):
        p, q_elem = elim.make_commuting_pair(
            parse_element("B*A", any_q), parse_poly("T", any_q), parse_poly("T^2", any_q)
        )
        assert q_elem == parse_element("q*B^2*A^2 + B*A", any_q)

    def test_shifted_a(self, q2):
        p, q_elem = elim.make_commuting_pair(
            parse_element("A + 1", q2), parse_poly("T", q2), parse_poly("T^2 + T", q2)
        )
        assert q_elem == parse_element("A^2 + 3*A + 2", q2)
        assert commutator(p, q_elem).is_zero()

    def test_constant_w(self, q2):
        with pytest.raises(ZeroOrder):
            elim.make_commuting_pair(parse_element("B", q2), parse_poly("T", q2), parse_poly("T", q2))

    def test_constant_f(self, q2):
        with pytest.raises(ConstantPolynomial):
            elim.make_commuting_pair(parse_element("A", q2), parse_poly("3", q2), parse_poly("T", q2))


def test_padding_zero_coefficients_keeps_delta(el, q2):
    p, q_elem = el("B*A", q2), el("(B*A)^2", q2)
    padded = AlgebraElement(q2, p.terms + ((0, UniPoly(q2, (0, 0, 0))),))
    assert elim.eliminant(padded, q_elem) == elim.eliminant(p, q_elem)


@pytest.mark.slow
@pytest.mark.parametrize("q_text", CORPUS_QS)
def test_random_corpus(q_text):
    q = QParam.parse(q_text)
    rng = random.Random(2024)
    pairs = [elim.random_commuting_pair(rng, q) for _ in range(5)]
    reports = elim.verify_corpus([(pair.p, pair.q_elem) for pair in pairs])
    for pair, report in zip(pairs, reports):
        assert report.passed, f"W = {pair.w}: failed {report.failed_checks()}"
        assert report.curves.nonzero_indices()


@pytest.mark.slow
def test_symbolic_verify_stays_fast():
    rng = random.Random(2024)
    pairs = [elim.random_commuting_pair(rng, QParam.symbolic()) for _ in range(5)]
    for pair in pairs:
        started = time.perf_counter()
        report = elim.verify(pair.p, pair.q_elem)
        elapsed = time.perf_counter() - started
        assert report.passed, f"W = {pair.w}: failed {report.failed_checks()}"
        assert elapsed < 10, f"W = {pair.w}: verify took {elapsed:.1f}s"


@pytest.mark.slow
def test_corpus_workers_keep_order(q2):
    rng = random.Random(11)
    pairs = [elim.random_commuting_pair(rng, q2, max_order=1) for _ in range(4)]
    sequential = elim.verify_corpus([(p.p, p.q_elem) for p in pairs])
    parallel = elim.verify_corpus([(p.p, p.q_elem) for p in pairs], workers=2)
    assert [r.curves.eliminant for r in sequential] == [r.curves.eliminant for r in parallel]


@pytest.mark.slow
@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10_000), symbolic=st.booleans())
def test_determinant_paths_on_eliminant_matrices(seed, symbolic):
    q = QParam.symbolic() if symbolic else QParam.numeric(3)
    rng = random.Random(seed)
    pair = elim.random_commuting_pair(rng, q, max_order=1, max_degree=1, max_poly_degree=2)
    mat = elim.build_matrix(pair.p, pair.q_elem)
    minor = determinant(mat, "minor")
    assert determinant(mat, "bareiss") == minor
    point = [rng.randint(-3, 3) for _ in range(3)]
    q_value = 2 if symbolic else None
    assert q.evaluate(minor.evaluate(point), q_value) == numeric_determinant(mat.evaluate(point, q_value))


def test_symbolic_coefficients_are_laurent(el, qsym):
    cs = elim.curves(el("B*A", qsym), el("(B*A)^2", qsym))
    assert all(isinstance(c, LaurentPoly) for d in cs.deltas for _, c in d.terms)
