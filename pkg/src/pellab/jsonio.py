"""JSON codecs for every wire format, plus a deterministic serializer.

Rationals travel as strings in lowest terms ("-3/4"); polynomials as arrays
of rational strings, ascending degree, no trailing zeros; complex numbers as
{"re": float, "im": float} pairs.  Serialization is byte-deterministic:
insertion-ordered keys and floats printed with 17 significant digits.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputError
from .exactpoly import Poly, ScaledMatrixPoly, SeriesAtInfinity, as_rat
from .jacobi import PeriodData
from .monodromy import AdmissibilityReport, AlgebraicForm, PellCertificate
from .pfrac import (
    PFraction,
    PStep,
    Periodic,
    PrePeriodic,
    RationalTail,
    SeriesTail,
    SurdTail,
    Terminated,
    Truncated,
)


# -- encoding ----------------------------------------------------------------

def rat_str(q: Fraction) -> str:
    return str(q)


def poly_json(p: Poly) -> list[str]:
    return [rat_str(c) for c in p.coeffs]


def step_json(st: PStep) -> dict:
    return {"p": poly_json(st.p), "epsilon": st.epsilon, "beta": rat_str(st.beta)}


def period_json(period: PeriodData) -> dict:
    return {"blocks": [step_json(b) for b in period.blocks]}


def terminal_json(t) -> dict:
    if isinstance(t, Terminated):
        return {"kind": "terminated"}
    if isinstance(t, Periodic):
        return {"kind": "periodic", "period": t.period}
    if isinstance(t, PrePeriodic):
        return {"kind": "preperiodic", "start": t.start, "cycle_len": t.cycle_len}
    if isinstance(t, Truncated):
        return {"kind": "truncated"}
    raise TypeError(f"unknown terminal {t!r}")


def pfraction_json(pf: PFraction) -> dict:
    return {
        "steps": [step_json(s) for s in pf.steps],
        "terminal": terminal_json(pf.terminal),
    }


def matrix_json(T: ScaledMatrixPoly) -> dict:
    return {
        "M": [[poly_json(T.m[i][j]) for j in range(2)] for i in range(2)],
        "D": rat_str(T.scale),
    }


def admissibility_json(rep: AdmissibilityReport) -> dict:
    return {
        "det_one": rep.det_one,
        "degrees_ok": rep.degrees_ok,
        "lead_t22_positive": rep.lead_t22_positive,
        "strict_leading_equality": rep.strict_leading_equality,
        "expandable": rep.expandable,
        "verdict": rep.verdict,
    }


def form_json(form: AlgebraicForm) -> dict:
    return {"R": poly_json(form.R), "U": poly_json(form.U), "V": poly_json(form.V)}


def certificate_json(cert: PellCertificate) -> dict:
    return {
        "X": poly_json(cert.X),
        "Y": poly_json(cert.Y),
        "Z": poly_json(cert.Z),
        "sqrt_scale": rat_str(cert.sqrt_scale),
    }


def complex_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def tail_json(tail) -> dict:
    if isinstance(tail, RationalTail):
        return {"rational": {"num": poly_json(tail.num), "den": poly_json(tail.den)}}
    if isinstance(tail, SurdTail):
        return {
            "surd": {
                "a": poly_json(tail.a),
                "b": poly_json(tail.b),
                "d": poly_json(tail.d),
                "R": poly_json(tail.R),
            }
        }
    if isinstance(tail, SeriesTail):
        return {
            "series": {
                "top_degree": tail.series.top_degree,
                "coeffs": [rat_str(c) for c in tail.series.coeffs],
            }
        }
    raise TypeError(f"unknown tail {tail!r}")


# -- decoding ----------------------------------------------------------------

def _expect(doc, key, where):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"missing key {key!r}", where)
    return doc[key]


def parse_rat(v, where) -> Fraction:
    try:
        if isinstance(v, bool):
            raise ValueError
        if isinstance(v, (str, int)):
            return as_rat(v)
        raise ValueError
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"not a rational: {v!r}", where) from None


def parse_poly(v, where) -> Poly:
    if not isinstance(v, list):
        raise InputError("polynomial must be an array of rational strings", where)
    coeffs = [parse_rat(c, f"{where}/{i}") for i, c in enumerate(v)]
    if coeffs and coeffs[-1] == 0:
        raise InputError("polynomial has trailing zero coefficients", where)
    return Poly(coeffs)


def parse_step(doc, where) -> PStep:
    p = parse_poly(_expect(doc, "p", where), f"{where}/p")
    eps = _expect(doc, "epsilon", where)
    if eps not in (1, -1):
        raise InputError("epsilon must be 1 or -1", f"{where}/epsilon")
    beta = parse_rat(_expect(doc, "beta", where), f"{where}/beta")
    try:
        return PStep(p, eps, beta)
    except ValueError as exc:
        raise InputError(str(exc), where) from None


def parse_period(doc, where="") -> PeriodData:
    blocks = _expect(doc, "blocks", where)
    if not isinstance(blocks, list) or not blocks:
        raise InputError("blocks must be a nonempty array", f"{where}/blocks")
    return PeriodData(
        tuple(parse_step(b, f"{where}/blocks/{i}") for i, b in enumerate(blocks))
    )


def parse_matrix(doc, where="") -> ScaledMatrixPoly:
    m = _expect(doc, "M", where)
    if not isinstance(m, list) or len(m) != 2 or any(len(r) != 2 for r in m):
        raise InputError("M must be a 2x2 array of polynomials", f"{where}/M")
    rows = tuple(
        tuple(parse_poly(m[i][j], f"{where}/M/{i}/{j}") for j in range(2))
        for i in range(2)
    )
    d = parse_rat(_expect(doc, "D", where), f"{where}/D")
    if d <= 0:
        raise InputError("D must be positive", f"{where}/D")
    return ScaledMatrixPoly(rows, d)


def parse_form(doc, where="") -> AlgebraicForm:
    return AlgebraicForm(
        R=parse_poly(_expect(doc, "R", where), f"{where}/R"),
        U=parse_poly(_expect(doc, "U", where), f"{where}/U"),
        V=parse_poly(_expect(doc, "V", where), f"{where}/V"),
    )


def parse_tail(doc, where=""):
    if not isinstance(doc, dict) or len(doc) != 1:
        raise InputError(
            'tail must be exactly one of {"rational": ...}, {"surd": ...}, {"series": ...}',
            where,
        )
    kind, body = next(iter(doc.items()))
    if kind == "rational":
        num = parse_poly(_expect(body, "num", f"{where}/rational"), f"{where}/rational/num")
        den = parse_poly(_expect(body, "den", f"{where}/rational"), f"{where}/rational/den")
        if den.is_zero():
            raise InputError("zero denominator", f"{where}/rational/den")
        return RationalTail(num, den)
    if kind == "surd":
        w = f"{where}/surd"
        try:
            return SurdTail(
                a=parse_poly(_expect(body, "a", w), f"{w}/a"),
                b=parse_poly(_expect(body, "b", w), f"{w}/b"),
                d=parse_poly(_expect(body, "d", w), f"{w}/d"),
                R=parse_poly(_expect(body, "R", w), f"{w}/R"),
            )
        except ValueError as exc:
            raise InputError(str(exc), w) from None
    if kind == "series":
        w = f"{where}/series"
        top = _expect(body, "top_degree", w)
        if not isinstance(top, int) or isinstance(top, bool):
            raise InputError("top_degree must be an integer", f"{w}/top_degree")
        cs = _expect(body, "coeffs", w)
        if not isinstance(cs, list):
            raise InputError("coeffs must be an array", f"{w}/coeffs")
        coeffs = [parse_rat(c, f"{w}/coeffs/{i}") for i, c in enumerate(cs)]
        return SeriesTail(SeriesAtInfinity(top, coeffs))
    raise InputError(f"unknown tail kind {kind!r}", where)


def parse_points(doc, where="") -> list[complex]:
    pts = _expect(doc, "points", where)
    if not isinstance(pts, list) or not pts:
        raise InputError("points must be a nonempty array", f"{where}/points")
    out = []
    for i, p in enumerate(pts):
        w = f"{where}/points/{i}"
        re = _expect(p, "re", w)
        im = _expect(p, "im", w)
        if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
            raise InputError("re and im must be numbers", w)
        out.append(complex(re, im))
    return out


# -- deterministic serialization ----------------------------------------------

def _emit(value, pieces: list[str]) -> None:
    if value is None:
        pieces.append("null")
    elif value is True:
        pieces.append("true")
    elif value is False:
        pieces.append("false")
    elif isinstance(value, int):
        pieces.append(str(value))
    elif isinstance(value, float):
        pieces.append(format(value, ".17g"))
    elif isinstance(value, str):
        pieces.append(json.dumps(value))
    elif isinstance(value, (list, tuple)):
        pieces.append("[")
        for i, v in enumerate(value):
            if i:
                pieces.append(",")
            _emit(v, pieces)
        pieces.append("]")
    elif isinstance(value, dict):
        pieces.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                pieces.append(",")
            pieces.append(json.dumps(str(k)))
            pieces.append(":")
            _emit(v, pieces)
        pieces.append("}")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(document: dict) -> str:
    """Deterministic JSON text: insertion-ordered keys, .17g floats."""
    pieces: list[str] = []
    _emit(document, pieces)
    return "".join(pieces) + "\n"
