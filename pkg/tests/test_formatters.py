"""Tests for the text, table and highlighted renderings."""

import re

from app.services import eliminant as elim
from app.services import laurent
from app.services.algebra import AlgebraElement
from app.services.poly import BiPoly, TriPoly, UniPoly
from app.services.scalars import LaurentPoly
from app.utils import formatters


class TestText:
    def test_unipoly(self, q2):
        assert formatters.format_unipoly(UniPoly(q2, (-1, 0, 1))) == "X^2 - 1"
        assert formatters.format_unipoly(UniPoly.zero(q2)) == "0"

    def test_element_numeric(self, el, q2):
        assert formatters.format_element(el("q*B^2*A^2 + B*A", q2)) == "2*B^2*A^2 + B*A"

    def test_element_symbolic(self, el, qsym):
        assert formatters.format_element(el("(q + 1)*B - q*A", qsym)) == "-q*A + (q + 1)*B"

    def test_element_fraction(self, el, q2):
        assert formatters.format_element(el("1 - 1/2*B", q2)) == "-1/2*B + 1"

    def test_zero_element(self, q2):
        assert formatters.format_element(AlgebraElement.zero(q2)) == "0"

    def test_bipoly(self, q2):
        assert formatters.format_bipoly(BiPoly.from_dict(q2, {(2, 0): 1, (0, 1): -1})) == "λ^2 - μ"

    def test_tripoly(self, qsym):
        delta = TriPoly.from_dict(
            qsym, {(2, 2, 0): LaurentPoly.monomial(1), (2, 0, 1): LaurentPoly.monomial(1, -1)}
        )
        assert formatters.format_tripoly(delta) == "q*X^2*λ^2 - q*X^2*μ"

    def test_window(self):
        (psi,) = laurent.psi_chain(2, 1, (-3, 3))
        assert formatters.format_window(psi, limit=3) == "[-3, 3] trusted [-3, 3]  t^-3: 8, t^-2: 4, t^-1: 2, ..."

    def test_report(self, el, q2):
        text = formatters.format_report(elim.verify(el("A", q2), el("A^2", q2)))
        assert text.startswith("PASS (m=1, n=2, s=0, t=0)")
        assert "delta_0 = λ^2 - μ  ->  0" in text


class TestFrames:
    def test_checks_frame(self, el, q2):
        frame = formatters.checks_frame(elim.verify(el("A", q2), el("A^2", q2)))
        assert list(frame.columns) == ["check", "result"]
        assert frame.set_index("check").loc["q_integral", "result"] == "n/a"

    def test_curves_frame(self, el, q2):
        frame = formatters.curves_frame(elim.verify(el("B*A", q2), el("(B*A)^2", q2)))
        assert len(frame) == 5
        assert frame.loc[2, "degree"] == 2
        assert (frame["residual"] == "0").all()

    def test_window_frame(self):
        chain = laurent.psi_chain(2, 2, (-2, 2))
        frame = formatters.window_frame(chain, ["psi1", "psi2"])
        assert frame.index.name == "n"
        assert list(frame.index) == [-2, -1, 0, 1, 2]
        assert frame.loc[0, "psi1"] == "1"
        assert frame.loc[2, "psi2"] == ""


class TestHighlight:
    def test_html(self):
        html = formatters.highlight_html("q*B^2*A + 1")
        assert "<span" in html
        assert re.sub(r"<[^>]+>", "", html).strip() == "q*B^2*A + 1"

    def test_terminal(self):
        text = formatters.highlight_terminal("B*A - 2")
        assert re.sub(r"\x1b\[[0-9;]*m", "", text) == "B*A - 2"
