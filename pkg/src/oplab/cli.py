"""Command-line front end.

Subcommands
-----------
  verdict hilbert|bergman   boundedness condition reports
  sharp-norm                closed-form diagonal norm of the half-line operator
  certify                   construct a Schur-type certificate (JSON document)
  certify verify            re-verify a certificate document numerically
  estimate                  apply the half-line operator to an --expr function
  extremal                  xi-sweep of the extremal Rayleigh quotient
  dilate                    dilation growth-exponent experiment
  sweep                     vary one parameter on a grid, CSV out
  bergman reproduce         projection fixed-point check
  solve-gamma               the gamma that balances the relation exactly

Exit codes: 0 success, 2 invalid parameters or usage, 3 divergence
detected (the expected signal in unbounded regimes), 4 quadrature
accuracy failure or a failed certificate verification.

Reports are JSON with a versioned schema; every numeric result carries
the tolerance it was computed to.  Identical argv produce byte-identical
output apart from the elapsed_s field.  Infinity is spelled "inf" both
in flags and in JSON.  Tolerance precedence: --tol flag, then the
OPLAB_TOL environment variable, then per-command defaults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

import numpy as np

from . import bergman, hilbert, quad, schur
from .errors import (
    AccuracyError,
    CertificateVerificationError,
    DivergenceError,
    OplabError,
)
from .funcdsl import func1d
from .hilbert import OperatorParams, WeightedSpaceSpec

SCHEMA = 1

EXIT_OK = 0
EXIT_PARAMS = 2
EXIT_DIVERGENCE = 3
EXIT_ACCURACY = 4


def _jsonable(obj):
    """Make infinities JSON-safe ('inf'/'-inf') recursively."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, (np.floating, np.integer)):
        return _jsonable(float(obj))
    return obj


def num(value: float, tol: float) -> dict:
    """A numeric report field: the value together with its tolerance."""
    return {"value": value, "tol": tol}


def emit(report: dict, out: str | None = None) -> None:
    text = json.dumps(_jsonable(report), indent=2, sort_keys=True, allow_nan=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _report(command: str, argv, inputs: dict, results: dict, tolerances: dict, t0: float) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "argv": list(argv),
        "inputs": inputs,
        "results": results,
        "tolerances": tolerances,
        "elapsed_s": round(time.perf_counter() - t0, 6),
    }


def resolve_tol(flag_value: float | None, default: float) -> float:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("OPLAB_TOL")
    if env:
        return float(env)
    return default


def _float(text: str) -> float:
    # accepts "inf" for the extended-real exponents
    return float(text)


def _add_params(ap: argparse.ArgumentParser):
    ap.add_argument("--alpha", type=float, required=True)
    ap.add_argument("--beta", type=float, required=True)
    ap.add_argument("--gamma", type=float, required=True)


def _add_spaces(ap: argparse.ArgumentParser, weights=True):
    ap.add_argument("--p", type=_float, required=True)
    ap.add_argument("--q", type=_float, required=True)
    if weights:
        ap.add_argument("--a", type=float, default=None)
        ap.add_argument("--b", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="oplab",
        description="Numerical laboratory for weighted Hilbert-type and Bergman-type operators",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    # verdict
    v = sub.add_parser("verdict", help="boundedness condition report")
    vsub = v.add_subparsers(dest="family", required=True)
    vh = vsub.add_parser("hilbert")
    _add_spaces(vh)
    _add_params(vh)
    vh.add_argument("--out")
    vb = vsub.add_parser("bergman")
    vb.add_argument("--operator", choices=["tplus", "t", "projection"], default="tplus")
    vb.add_argument("--p", type=_float, required=True)
    vb.add_argument("--q", type=_float, required=True)
    vb.add_argument("--r", type=_float, required=True)
    vb.add_argument("--a", type=float, default=None)
    vb.add_argument("--b", type=float, default=None)
    vb.add_argument("--alpha", type=float, default=0.0)
    vb.add_argument("--beta", type=float, required=True)
    vb.add_argument("--gamma", type=float, default=None)
    vb.add_argument("--out")

    # sharp-norm
    sn = sub.add_parser("sharp-norm", help="closed-form diagonal operator norm")
    sn.add_argument("--p", type=_float, required=True)
    sn.add_argument("--a", type=float, default=None)
    _add_params(sn)
    sn.add_argument("--out")

    # certify (make | verify)
    ce = sub.add_parser("certify", help="construct or verify a Schur-type certificate")
    ce.add_argument("--p", type=_float)
    ce.add_argument("--q", type=_float)
    ce.add_argument("--a", type=float)
    ce.add_argument("--b", type=float)
    ce.add_argument("--alpha", type=float)
    ce.add_argument("--beta", type=float)
    ce.add_argument("--gamma", type=float)
    ce.add_argument("--d", type=float, default=None, help="force the exponent gap d = r - s")
    ce.add_argument("--out")
    cesub = ce.add_subparsers(dest="mode")
    cv = cesub.add_parser("verify")
    cv.add_argument("--cert", required=True, help="certificate JSON document")
    cv.add_argument("--samples", type=int, default=100)
    cv.add_argument("--tol", type=float, default=None)
    cv.add_argument("--out")

    # estimate
    es = sub.add_parser("estimate", help="apply the operator to an --expr function")
    es.add_argument("--expr", required=True)
    _add_spaces(es)
    _add_params(es)
    es.add_argument("--points", default="0.5,1,2", help="comma-separated probe abscissae")
    es.add_argument("--tol", type=float, default=None)
    es.add_argument("--out")

    # extremal
    ex = sub.add_parser("extremal", help="xi-sweep of the extremal Rayleigh quotient")
    ex.add_argument("--p", type=_float, required=True)
    ex.add_argument("--a", type=float, required=True)
    _add_params(ex)
    ex.add_argument("--xi", type=float, action="append", required=True)
    ex.add_argument("--tol", type=float, default=None)
    ex.add_argument("--out")

    # dilate
    di = sub.add_parser("dilate", help="dilation growth-exponent experiment")
    _add_spaces(di)
    _add_params(di)
    di.add_argument("--expr", default="ind(1,2)")
    di.add_argument("--r-decades", type=float, default=3.0)
    di.add_argument("--r-num", type=int, default=7)
    di.add_argument("--cutoff", type=float, default=10.0)
    di.add_argument("--tol", type=float, default=None)
    di.add_argument("--out")

    # sweep
    sw = sub.add_parser("sweep", help="vary one parameter on a grid, CSV out")
    sw.add_argument("--vary", required=True,
                    choices=["alpha", "beta", "gamma", "a", "b", "p", "q"])
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--num", type=int, required=True)
    sw.add_argument("--p", type=_float)
    sw.add_argument("--q", type=_float)
    sw.add_argument("--a", type=float)
    sw.add_argument("--b", type=float)
    sw.add_argument("--alpha", type=float)
    sw.add_argument("--beta", type=float)
    sw.add_argument("--gamma", type=float)
    sw.add_argument("--out")

    # bergman subcommands
    bg = sub.add_parser("bergman", help="upper half-plane checks")
    bgsub = bg.add_subparsers(dest="action", required=True)
    br = bgsub.add_parser("reproduce", help="projection fixed-point check")
    br.add_argument("--nu", type=float, default=0.0)
    br.add_argument("--power", type=int, default=3)
    br.add_argument("--tol", type=float, default=None)
    br.add_argument("--out")

    # solve-gamma
    sg = sub.add_parser("solve-gamma", help="gamma balancing the relation exactly")
    _add_spaces(sg)
    sg.add_argument("--alpha", type=float, required=True)
    sg.add_argument("--beta", type=float, required=True)
    sg.add_argument("--out")

    return ap


# --------------------------------------------------------------------------
# command bodies
# --------------------------------------------------------------------------

def _cmd_verdict(args, argv, t0) -> int:
    if args.family == "hilbert":
        params = OperatorParams(args.alpha, args.beta, args.gamma)
        rep = hilbert.hilbert_verdict(args.p, args.q, args.a, args.b, params)
        inputs = {"p": args.p, "q": args.q, "a": args.a, "b": args.b,
                  "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma}
        results = {"verdict": "bounded" if rep.bounded else "unbounded",
                   "report": rep.to_dict()}
        emit(_report("verdict hilbert", argv, inputs, results,
                     {"relation_epsilon": 1e-12}, t0), args.out)
        return EXIT_OK
    gamma = args.gamma
    if args.operator == "projection" and gamma is None:
        gamma = args.beta + 1.0
    elif gamma is None:
        raise OplabError("--gamma is required for tplus/t verdicts")
    params = OperatorParams(args.alpha, args.beta, gamma)
    src = bergman.MixedNormSpec(args.p, args.q, args.a)
    tgt = bergman.MixedNormSpec(args.p, args.r, args.b)
    req = bergman.BergmanVerdictRequest(args.operator, src, tgt, params)
    rep = bergman.bergman_verdict(req)
    inputs = {"operator": args.operator, "p": args.p, "q": args.q, "r": args.r,
              "a": args.a, "b": args.b, "alpha": args.alpha, "beta": args.beta,
              "gamma": gamma}
    results = {"verdict": "bounded" if rep.bounded else "unbounded",
               "report": rep.to_dict()}
    emit(_report("verdict bergman", argv, inputs, results,
                 {"relation_epsilon": 1e-12}, t0), args.out)
    return EXIT_OK


def _cmd_sharp_norm(args, argv, t0) -> int:
    params = OperatorParams(args.alpha, args.beta, args.gamma)
    space = WeightedSpaceSpec(args.p, args.a)
    value = hilbert.sharp_norm(space, params)
    inputs = {"p": args.p, "a": args.a, "alpha": args.alpha,
              "beta": args.beta, "gamma": args.gamma}
    results = {"norm": num(value, 1e-13)}
    emit(_report("sharp-norm", argv, inputs, results, {"relation_epsilon": 1e-12}, t0), args.out)
    return EXIT_OK


def _cmd_certify(args, argv, t0) -> int:
    if getattr(args, "mode", None) == "verify":
        with open(args.cert) as fh:
            doc = json.load(fh)
        if doc.get("kind") != "schur-certificate" and "results" in doc:
            doc = doc["results"]["certificate"]  # accept a full report too
        cert = schur.SchurCertificate.from_dict(doc)
        cert.validate()
        tol = resolve_tol(args.tol, 1e-8)
        rep = schur.verify_certificate(
            cert, cert.p, cert.q, cert.a, cert.b, cert.params,
            n_samples=args.samples, tol=tol)
        inputs = {"certificate": cert.to_dict()}
        results = {"verification": rep.to_dict(),
                   "max_residual": num(rep.max_residual, tol)}
        emit(_report("certify verify", argv, inputs, results, {"tol": tol}, t0), args.out)
        return EXIT_OK
    required = ("p", "q", "a", "b", "alpha", "beta", "gamma")
    missing = [k for k in required if getattr(args, k) is None]
    if missing:
        raise OplabError(f"certify needs --{' --'.join(missing)}")
    params = OperatorParams(args.alpha, args.beta, args.gamma)
    cert = schur.find_certificate(args.p, args.q, args.a, args.b, params, d=args.d)
    inputs = {k: getattr(args, k) for k in required}
    results = {"certificate": cert.to_dict(), "bound": num(cert.bound, 1e-13)}
    # --out receives the portable certificate document itself; the full
    # report always goes to stdout
    emit(_report("certify", argv, inputs, results, {"relation_epsilon": 1e-12}, t0))
    if args.out:
        emit(cert.to_dict(), args.out)
    return EXIT_OK


def _cmd_estimate(args, argv, t0) -> int:
    tol = resolve_tol(args.tol, quad.DEFAULT_TOL_1D)
    params = OperatorParams(args.alpha, args.beta, args.gamma)
    f = func1d(args.expr)
    points = [float(s) for s in args.points.split(",") if s.strip()]
    values = hilbert.apply_H_many(params, f, np.array(points), tol)
    src = WeightedSpaceSpec(args.p, args.a)
    nf = hilbert.weighted_lp_norm(f, src, tol)
    verdict = hilbert.hilbert_verdict(args.p, args.q, args.a, args.b, params)
    results = {
        "applied": [{"x": x, "Hf": num(float(v), tol)} for x, v in zip(points, values)],
        "source_norm": num(nf, tol),
        "verdict": "bounded" if verdict.bounded else "unbounded",
        "report": verdict.to_dict(),
    }
    if verdict.bounded and not math.isinf(args.q):
        nHf = hilbert.image_norm(params, f, args.q, args.b, tol)
        results["image_norm"] = num(nHf, tol)
        results["quotient"] = num(nHf / nf, tol)
        if args.p == args.q and args.a == args.b:
            try:
                results["sharp_norm"] = num(hilbert.sharp_norm(src, params), 1e-13)
            except OplabError:
                pass
    inputs = {"expr": args.expr, "p": args.p, "q": args.q, "a": args.a, "b": args.b,
              "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma,
              "points": points}
    emit(_report("estimate", argv, inputs, results, {"tol": tol}, t0), args.out)
    return EXIT_OK


def _cmd_extremal(args, argv, t0) -> int:
    tol = resolve_tol(args.tol, quad.DEFAULT_TOL_1D)
    params = OperatorParams(args.alpha, args.beta, args.gamma)
    space = WeightedSpaceSpec(args.p, args.a)
    sharp = hilbert.sharp_norm(space, params)
    rows = []
    for xi in args.xi:
        qv = hilbert.extremal_quotient(space, params, xi, tol)
        rows.append({"xi": xi, "quotient": num(qv, tol), "gap": num(sharp - qv, tol)})
    inputs = {"p": args.p, "a": args.a, "alpha": args.alpha, "beta": args.beta,
              "gamma": args.gamma, "xi": list(args.xi)}
    results = {"sharp_norm": num(sharp, 1e-13), "sweep": rows}
    emit(_report("extremal", argv, inputs, results, {"tol": tol}, t0), args.out)
    return EXIT_OK


def _cmd_dilate(args, argv, t0) -> int:
    tol = resolve_tol(args.tol, 1e-9)
    params = OperatorParams(args.alpha, args.beta, args.gamma)
    f = func1d(args.expr)
    half = args.r_decades / 2.0
    grid = np.logspace(-half, half, args.r_num)
    slope = hilbert.growth_exponent(args.p, args.q, args.a, args.b, params,
                                    f=f, R_grid=grid, tol=tol, cutoff=args.cutoff)
    kappa = (args.gamma - args.alpha - args.beta - 1.0
             - hilbert.weight_term(args.b, args.q) + hilbert.weight_term(args.a, args.p))
    predicted = -kappa
    inputs = {"p": args.p, "q": args.q, "a": args.a, "b": args.b,
              "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma,
              "expr": args.expr, "R_grid": [float(r) for r in grid],
              "cutoff": args.cutoff}
    results = {
        "growth_exponent": num(slope, tol),
        "predicted": num(predicted, 0.0),
        "residual": num(abs(slope - predicted), tol),
    }
    emit(_report("dilate", argv, inputs, results, {"tol": tol}, t0), args.out)
    return EXIT_OK


_SWEEP_COLUMNS = ["value", "bounded", "sharp_norm", "schur_bound", "relation_residual"]


def _cmd_sweep(args, argv, t0) -> int:
    base = {k: getattr(args, k) for k in ("p", "q", "a", "b", "alpha", "beta", "gamma")}
    missing = [k for k, v in base.items() if v is None and k != args.vary]
    if missing:
        raise OplabError(f"sweep needs --{' --'.join(missing)}")
    grid = np.linspace(args.start, args.stop, args.num)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow([args.vary] + _SWEEP_COLUMNS[1:])
    for value in grid:
        point = dict(base)
        point[args.vary] = float(value)
        params = OperatorParams(point["alpha"], point["beta"], point["gamma"])
        row = [f"{value:.12g}"]
        try:
            verdict = hilbert.hilbert_verdict(point["p"], point["q"], point["a"],
                                              point["b"], params)
        except OplabError:
            writer.writerow(row + ["error", "", "", ""])
            continue
        row.append("yes" if verdict.bounded else "no")
        try:
            row.append(f"{hilbert.sharp_norm(WeightedSpaceSpec(point['p'], point['a']), params):.12g}"
                       if point["p"] == point["q"] and point["a"] == point["b"] else "")
        except OplabError:
            row.append("")
        try:
            row.append(f"{schur.find_certificate(point['p'], point['q'], point['a'], point['b'], params).bound:.12g}"
                       if verdict.bounded and not math.isinf(point["q"]) else "")
        except OplabError:
            row.append("")
        residual = verdict.relation.residual if verdict.relation else 0.0
        row.append(f"{residual:.12g}")
        writer.writerow(row)
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_bergman(args, argv, t0) -> int:
    tol = resolve_tol(args.tol, quad.DEFAULT_TOL_2D)
    rows = bergman.reproduce_check(args.nu, args.power, tol=tol)
    worst = max(r["abs_error"] for r in rows)
    inputs = {"nu": args.nu, "power": args.power}
    results = {"points": [{k: num(v, tol) if isinstance(v, float) else v
                           for k, v in r.items()} for r in rows],
               "worst_abs_error": num(worst, tol)}
    emit(_report("bergman reproduce", argv, inputs, results, {"tol": tol}, t0), args.out)
    return EXIT_OK


def _cmd_solve_gamma(args, argv, t0) -> int:
    value = hilbert.solve_gamma(args.p, args.q, args.a, args.b, args.alpha, args.beta)
    inputs = {"p": args.p, "q": args.q, "a": args.a, "b": args.b,
              "alpha": args.alpha, "beta": args.beta}
    emit(_report("solve-gamma", argv, inputs, {"gamma": num(value, 0.0)}, {}, t0), args.out)
    return EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.command == "verdict":
            return _cmd_verdict(args, argv, t0)
        if args.command == "sharp-norm":
            return _cmd_sharp_norm(args, argv, t0)
        if args.command == "certify":
            return _cmd_certify(args, argv, t0)
        if args.command == "estimate":
            return _cmd_estimate(args, argv, t0)
        if args.command == "extremal":
            return _cmd_extremal(args, argv, t0)
        if args.command == "dilate":
            return _cmd_dilate(args, argv, t0)
        if args.command == "sweep":
            return _cmd_sweep(args, argv, t0)
        if args.command == "bergman":
            return _cmd_bergman(args, argv, t0)
        if args.command == "solve-gamma":
            return _cmd_solve_gamma(args, argv, t0)
        parser.error(f"unknown command {args.command}")
    except DivergenceError as exc:
        print(json.dumps({"error": "divergence", "detail": str(exc)}), file=sys.stderr)
        return EXIT_DIVERGENCE
    except (AccuracyError, CertificateVerificationError) as exc:
        print(json.dumps({"error": "accuracy", "detail": str(exc)}), file=sys.stderr)
        return EXIT_ACCURACY
    except OplabError as exc:
        print(json.dumps({"error": "parameters", "detail": str(exc)}), file=sys.stderr)
        return EXIT_PARAMS
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
