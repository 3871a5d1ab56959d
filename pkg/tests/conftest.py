# tests/conftest.py
import pytest

from app.services.expr_parser import parse_element
from app.services.scalars import QParam

NUMERIC_QS = ["1", "2", "1/2", "3"]
ALL_QS = NUMERIC_QS + ["symbolic"]


@pytest.fixture
def q2() -> QParam:
    return QParam.numeric(2)


@pytest.fixture
def qsym() -> QParam:
    return QParam.symbolic()


@pytest.fixture(params=ALL_QS)
def any_q(request) -> QParam:
    return QParam.parse(request.param)


@pytest.fixture(params=NUMERIC_QS)
def numeric_q(request) -> QParam:
    return QParam.parse(request.param)


@pytest.fixture
def el():
    """Parse DSL text into an element: el("B*A", q)."""
    return lambda src, q: parse_element(src, q)
