"""Tests for the JSON wire shapes."""

import json
from fractions import Fraction

from app.services import eliminant as elim
from app.services import laurent, spectral
from app.services.poly import TriPoly
from app.services.scalars import LaurentPoly, QParam
from app.utils import serializers


def test_scalars(q2, qsym):
    assert serializers.scalar_to_json(Fraction(-3, 4)) == "-3/4"
    assert serializers.scalar_to_json(Fraction(5)) == "5"
    poly = LaurentPoly({-1: 2, 3: Fraction(1, 2)})
    data = serializers.scalar_to_json(poly)
    assert data == {"-1": "2", "3": "1/2"}
    assert serializers.scalar_from_json(qsym, data) == poly
    assert serializers.scalar_from_json(q2, "7/3") == Fraction(7, 3)


def test_element_round_trip(el, any_q):
    element = el("q*B^2*A^2 + 1/2*B*A - 3", any_q)
    data = json.loads(serializers.dumps(serializers.element_to_json(element)))
    assert serializers.element_from_json(data) == element


def test_element_shape(el, q2):
    data = serializers.element_to_json(el("B*A + 2", q2))
    assert data == {"q": "2", "terms": [{"j": 0, "p": ["2"]}, {"j": 1, "p": ["0", "1"]}]}


def test_tripoly_round_trip(qsym):
    delta = TriPoly.from_dict(qsym, {(2, 2, 0): LaurentPoly.monomial(1), (2, 0, 1): LaurentPoly.monomial(1, -1)})
    assert serializers.tripoly_from_json(qsym, serializers.tripoly_to_json(delta)) == delta


def test_curveset_keys(el, qsym):
    cs = elim.curves(el("B*A", qsym), el("(B*A)^2", qsym))
    data = serializers.curveset_to_json(cs)
    assert (data["m"], data["n"], data["s"], data["t"]) == (1, 2, 4, 1)
    assert len(data["delta"]) == 5
    assert data["Delta"]["terms"]


def test_report_is_json(el, q2):
    report = elim.verify(el("A", q2), el("A^2", q2))
    data = json.loads(serializers.dumps(serializers.report_to_json(report)))
    assert data["pass"] is True
    assert data["checks"]["q_integral"] is None
    assert data["residuals"][0]["zero"] is True


def test_kernel_report(el, q2):
    data = serializers.kernel_report_to_json(spectral.kernel_dimension(el("A - 1", q2)))
    assert data == {"dim": 1, "bounds": [1, 1], "d_max": 0, "d_min": -1, "N_max": 0, "N_min": 1}


def test_window_round_trip():
    (psi,) = laurent.psi_chain(2, 1, (-3, 3))
    data = serializers.window_to_json(psi)
    assert data["coeffs"][0] == "8"
    assert serializers.window_from_json(data).agrees(psi, min_width=7)


def test_lpd(q2):
    data = serializers.lpd_to_json(laurent.lpd_index_set([(1, 1), (2, 1)], 1, 1, q2))
    assert data["maximal"] == ["1"]
    assert data["J"] == 1
    assert [i["alpha"] for i in data["indices"]] == ["1", "2", "4"]


def test_qparam():
    assert serializers.qparam_from_json(serializers.qparam_to_json(QParam.symbolic())).is_symbolic
    assert serializers.qparam_from_json("3/2") == QParam.numeric(Fraction(3, 2))
