# app/utils/serializers.py
"""JSON conversions for the qheis value types.

Rationals are written as "num/den" strings (plain "n" for integers) and
Laurent polynomials in q as {"exponent": "coefficient"} objects.
"""

import json
from fractions import Fraction
from typing import Any, Dict, List

from app.services.algebra import AlgebraElement
from app.services.eliminant import CurveSet, VerificationReport
from app.services.laurent import LaurentWindow, LpdIndexSet, PairIndex
from app.services.poly import BiPoly, TriPoly, UniPoly
from app.services.scalars import LaurentPoly, QParam, Scalar
from app.services.spectral import KernelReport


def scalar_to_json(value: Scalar) -> Any:
    if isinstance(value, LaurentPoly):
        return {str(e): str(c) for e, c in value.items()}
    return str(value)


def scalar_from_json(q: QParam, data: Any) -> Scalar:
    if isinstance(data, dict):
        return q.scalar(LaurentPoly({int(e): Fraction(c) for e, c in data.items()}))
    return q.scalar(Fraction(str(data)))


def qparam_to_json(q: QParam) -> str:
    return str(q)


def qparam_from_json(data: str) -> QParam:
    return QParam.parse(data)


def unipoly_to_json(p: UniPoly) -> List[Any]:
    return [scalar_to_json(c) for c in p.coeffs]


def unipoly_from_json(q: QParam, data: List[Any]) -> UniPoly:
    return UniPoly(q, tuple(scalar_from_json(q, c) for c in data))


def element_to_json(element: AlgebraElement) -> Dict[str, Any]:
    return {
        "q": qparam_to_json(element.q),
        "terms": [{"j": j, "p": unipoly_to_json(p)} for j, p in element.terms],
    }


def element_from_json(data: Dict[str, Any]) -> AlgebraElement:
    q = qparam_from_json(data["q"])
    return AlgebraElement(q, tuple((int(t["j"]), unipoly_from_json(q, t["p"])) for t in data["terms"]))


def bipoly_to_json(p: BiPoly) -> Dict[str, Any]:
    return {"terms": [{"l": a, "m": b, "c": scalar_to_json(c)} for (a, b), c in p.terms]}


def tripoly_to_json(p: TriPoly) -> Dict[str, Any]:
    return {"terms": [{"x": i, "l": a, "m": b, "c": scalar_to_json(c)} for (i, a, b), c in p.terms]}


def tripoly_from_json(q: QParam, data: Dict[str, Any]) -> TriPoly:
    return TriPoly.from_dict(
        q, {(t["x"], t["l"], t["m"]): scalar_from_json(q, t["c"]) for t in data["terms"]}
    )


def curveset_to_json(cs: CurveSet) -> Dict[str, Any]:
    return {
        "m": cs.m,
        "n": cs.n,
        "s": cs.s,
        "t": cs.t,
        "delta": [bipoly_to_json(d) for d in cs.deltas],
        "Delta": tripoly_to_json(cs.eliminant),
    }


def report_to_json(report: VerificationReport) -> Dict[str, Any]:
    return {
        "pass": report.passed,
        "commuting": report.commuting,
        "checks": dict(report.checks),
        "q_degree": report.q_degree,
        "q_degree_bound": report.q_degree_bound,
        "curves": curveset_to_json(report.curves),
        "residuals": [
            {
                "i": r.index,
                "zero": None if r.residual is None else r.residual.is_zero(),
                "residual": None if r.residual is None else element_to_json(r.residual),
            }
            for r in report.residuals
        ],
    }


def kernel_report_to_json(report: KernelReport) -> Dict[str, Any]:
    return {
        "dim": report.dim,
        "bounds": [report.lower, report.upper],
        "d_max": report.d_max,
        "d_min": report.d_min,
        "N_max": report.n_max,
        "N_min": report.n_min,
    }


def window_to_json(v: LaurentWindow) -> Dict[str, Any]:
    return {"lo": v.lo, "coeffs": [str(c) for c in v.coeffs], "trusted": list(v.trusted)}


def window_from_json(data: Dict[str, Any]) -> LaurentWindow:
    return LaurentWindow(
        int(data["lo"]), tuple(Fraction(c) for c in data["coeffs"]), tuple(data["trusted"])
    )


def pair_index_to_json(index: PairIndex) -> Dict[str, Any]:
    return {"alpha": str(index.alpha), "s": index.s}


def lpd_to_json(lpd: LpdIndexSet) -> Dict[str, Any]:
    return {
        "m": lpd.m,
        "d": lpd.d,
        "maximal": [str(b) for b in lpd.maximal],
        "J": lpd.j_max,
        "dimension": lpd.dimension,
        "indices": [pair_index_to_json(i) for i in lpd.indices],
    }


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2)
