"""Command-line front end: one JSON document in, one JSON document out.

Every command reads exactly one input document (``--input`` or a
command-specific file flag), writes one output document (``--output``,
default stdout), and embeds both a canonicalized echo of its input and a
``checks`` object with the exact identities it verified.  Exit codes:
0 success / Realized, 1 NotRealizable, 2 Inconclusive, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio, pell
from .errors import InputError, PellabError
from .jacobi import truncate
from .jsonio import dumps
from .monodromy import (
    check_admissible,
    j_unitarity_holds,
    monodromy,
    reconstruct,
    solution_matrix_of,
)
from .pfrac import expand, to_series
from .spectral import bands, discriminant, m_eval, mfh2_residual


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pellab",
        description="exact periodic P-fractions, block Jacobi operators, and the polynomial Pell system",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    names = [
        "expand",
        "series",
        "monodromy",
        "reconstruct",
        "admissible",
        "spectrum",
        "mfunc",
        "pell",
        "realize",
        "dump",
    ]
    for name in names:
        p = sub.add_parser(name)
        p.add_argument("--input", "-i", default=None)
        p.add_argument("--output", "-o", default=None)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--max-steps", type=int, default=64)
        p.add_argument("--max-power", type=int, default=16)
        p.add_argument("--grid", type=int, default=512)
        if name in ("spectrum", "mfunc", "dump"):
            p.add_argument("--period", default=None)
        if name == "mfunc":
            p.add_argument("--points", default=None)
        if name == "dump":
            p.add_argument("--blocks", type=int, default=1)
    return ap


def _load(path, what) -> dict:
    if path is None:
        raise InputError(f"no input file given for {what}", "argv")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}", "argv") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}", "argv") from None


def _cmd_expand(args) -> tuple[int, dict]:
    doc = _load(args.input, "tail")
    tail = jsonio.parse_tail(doc)
    pf = expand(tail, args.max_steps)
    checks = {}
    if pf.steps:
        from .pfrac import recurrence, solution_matrix, transfer_matrix, product

        steps = list(pf.steps)
        rec = recurrence(steps)
        checks["wronskian"] = _wronskian_ok(steps, rec)
        prod = product([transfer_matrix(s) for s in steps])
        checks["det_scale"] = prod.det_poly() == _const(prod.scale)
        checks["solution_matrix_form"] = prod == solution_matrix(steps)
    return 0, {
        "input": jsonio.tail_json(tail),
        "result": jsonio.pfraction_json(pf),
        "checks": checks,
    }


def _const(q):
    from .exactpoly import Poly

    return Poly.const(q)


def _wronskian_ok(steps, rec) -> bool:
    from fractions import Fraction

    prod = Fraction(1)
    for j in range(len(steps)):
        lhs = steps[j].epsilon * (
            rec.Qhat[j + 1] * rec.Phat[j] - rec.Qhat[j] * rec.Phat[j + 1]
        )
        if lhs != _const(prod):
            return False
        prod *= steps[j].beta
    return True


def _cmd_series(args) -> tuple[int, dict]:
    doc = _load(args.input, "period")
    period = jsonio.parse_period(doc)
    n = doc.get("n_moments", 2 * period.period_degree + 2)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("n_moments must be a positive integer", "/n_moments")
    moments = to_series(list(period.blocks), n)
    pf = expand(jsonio.parse_tail({"series": {
        "top_degree": -1,
        "coeffs": [str(-m) for m in moments],
    }}), max_steps=period.s) if n >= 2 * period.period_degree + 2 else None
    checks = {}
    if pf is not None:
        checks["round_trip"] = tuple(pf.steps) == period.blocks
    return 0, {
        "input": jsonio.period_json(period),
        "moments": [jsonio.rat_str(m) for m in moments],
        "checks": checks,
    }


def _cmd_monodromy(args) -> tuple[int, dict]:
    doc = _load(args.input, "period")
    period = jsonio.parse_period(doc)
    T = monodromy(period)
    checks = {
        "det_scale": T.det_poly() == _const(T.scale),
        "j_unitary": j_unitarity_holds(T),
        "solution_matrix_form": T == solution_matrix_of(period),
    }
    return 0, {
        "input": jsonio.period_json(period),
        "result": jsonio.matrix_json(T),
        "checks": checks,
    }


def _cmd_reconstruct(args) -> tuple[int, dict]:
    doc = _load(args.input, "monodromy matrix")
    T = jsonio.parse_matrix(doc)
    period = reconstruct(T)
    checks = {"round_trip": monodromy(period) == T}
    return 0, {
        "input": jsonio.matrix_json(T),
        "result": jsonio.period_json(period),
        "checks": checks,
    }


def _cmd_admissible(args) -> tuple[int, dict]:
    doc = _load(args.input, "monodromy matrix")
    T = jsonio.parse_matrix(doc)
    rep = check_admissible(T)
    return 0, {
        "input": jsonio.matrix_json(T),
        "result": jsonio.admissibility_json(rep),
        "checks": {"j_unitary": j_unitarity_holds(T)},
    }


def _cmd_spectrum(args) -> tuple[int, dict]:
    doc = _load(args.period or args.input, "period")
    period = jsonio.parse_period(doc)
    spec = bands(period, grid=args.grid, tol=args.tol)
    delta = discriminant(period).delta
    endpoint_ok = all(
        abs(abs(delta(z)) - 2.0) <= max(args.tol, 1e-8) * max(1.0, abs(delta(z)))
        for z in spec.band_endpoints
    )
    return 0, {
        "input": jsonio.period_json(period),
        "result": {
            "band_endpoints": [jsonio.complex_json(z) for z in spec.band_endpoints],
            "arcs": [[jsonio.complex_json(z) for z in arc] for arc in spec.arcs],
            "eigenvalues": [jsonio.complex_json(z) for z in spec.eigenvalues],
        },
        "checks": {"endpoints_on_level_set": endpoint_ok},
    }


def _cmd_mfunc(args) -> tuple[int, dict]:
    pdoc = _load(args.period or args.input, "period")
    period = jsonio.parse_period(pdoc)
    points_path = getattr(args, "points", None)
    ptdoc = _load(points_path or args.input, "points")
    points = jsonio.parse_points(ptdoc)
    values, residuals = [], []
    for z in points:
        m = m_eval(period, z, tol=args.tol)
        values.append(m)
        residuals.append(mfh2_residual(period, z, m))
    return 0, {
        "input": {
            "period": jsonio.period_json(period),
            "points": [jsonio.complex_json(z) for z in points],
        },
        "result": {"values": [jsonio.complex_json(v) for v in values]},
        "checks": {
            "max_residual": max(residuals),
            "residuals_ok": max(residuals) <= args.tol,
        },
    }


def _cmd_pell(args) -> tuple[int, dict]:
    doc = _load(args.input, "R")
    R = jsonio.parse_poly(doc.get("R"), "/R")
    sol = pell.pell_fundamental(R, args.max_steps)
    out: dict = {"input": {"R": jsonio.poly_json(R)}}
    if sol is None:
        out["result"] = {"found": False}
        out["checks"] = {}
        return 2, out
    X, Y = sol
    from .exactpoly import Poly

    out["result"] = {
        "found": True,
        "X": jsonio.poly_json(X),
        "Y": jsonio.poly_json(Y),
    }
    out["checks"] = {"pell_identity": X * X - R * Y * Y == Poly.one()}
    return 0, out


def _cmd_realize(args) -> tuple[int, dict]:
    doc = _load(args.input, "algebraic form")
    form = jsonio.parse_form(doc)
    report = pell.realize(form, max_cf_steps=args.max_steps, max_power=args.max_power)
    status = report.status
    out: dict = {
        "input": jsonio.form_json(form),
        "canonical_form": jsonio.form_json(report.canonical_form),
        "status": {"kind": status.kind},
        "cross_check": report.cross_check,
        "detail": report.detail,
    }
    checks: dict = {}
    if status.kind == "realized":
        out["period"] = jsonio.period_json(report.period)
        out["T"] = jsonio.matrix_json(report.T)
        out["certificate"] = jsonio.certificate_json(report.certificate)
        checks["certificate"] = pell.verify_certificate(
            report.canonical_form, report.certificate
        )
        checks["det_scale"] = report.T.det_poly() == _const(report.T.scale)
        checks["round_trip"] = monodromy(report.period) == report.T
        code = 0
    elif status.kind == "not_realizable":
        out["status"]["reason"] = status.reason
        code = 1
    else:
        out["status"]["bound_hit"] = status.bound_hit
        code = 2
    out["checks"] = checks
    return code, out


def _cmd_dump(args) -> tuple[int, dict]:
    doc = _load(args.period or args.input, "period")
    period = jsonio.parse_period(doc)
    pair = truncate(period, args.blocks)
    from .jacobi import is_symmetric, mat_mul

    gh = mat_mul(pair.G, pair.H)
    return 0, {
        "input": jsonio.period_json(period),
        "result": {
            "H": [[jsonio.rat_str(v) for v in row] for row in pair.H],
            "G": [[jsonio.rat_str(v) for v in row] for row in pair.G],
        },
        "checks": {"gram_symmetry": is_symmetric(gh)},
    }


_COMMANDS = {
    "expand": _cmd_expand,
    "series": _cmd_series,
    "monodromy": _cmd_monodromy,
    "reconstruct": _cmd_reconstruct,
    "admissible": _cmd_admissible,
    "spectrum": _cmd_spectrum,
    "mfunc": _cmd_mfunc,
    "pell": _cmd_pell,
    "realize": _cmd_realize,
    "dump": _cmd_dump,
}


def run(argv: list[str]) -> tuple[int, dict]:
    """Dispatch a command line; returns (exit code, output document)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit:
        return 3, {"error": {"kind": "UsageError", "message": "bad arguments", "location": "argv"}}
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        return 3, {
            "error": {"kind": exc.kind, "message": str(exc), "location": exc.location}
        }
    except PellabError as exc:
        return 3, {
            "error": {
                "kind": type(exc).__name__,
                "message": str(exc),
                "location": "",
            }
        }


def main(argv=None) -> int:
    code, doc = run(sys.argv[1:] if argv is None else argv)
    out_path = None
    src = sys.argv[1:] if argv is None else argv
    for i, a in enumerate(src):
        if a in ("--output", "-o") and i + 1 < len(src):
            out_path = src[i + 1]
        elif a.startswith("--output="):
            out_path = a.split("=", 1)[1]
    text = dumps(doc)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
