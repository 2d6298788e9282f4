"""Command-line front end: ``bemwe fit|eval|simulate|moments``.

Exit status: 0 ok, 2 input error, 3 domain error, 4 non-convergence,
5 quadrature accuracy failure.
"""
from __future__ import annotations

import argparse
import io
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .bivariate import (
    BemweParams,
    bemwe_sample,
    bivariate_hazard,
    joint_cdf,
    joint_pdf,
    joint_survival,
    max_cdf,
    min_cdf,
)
from .data import Dataset, load_csv, load_nfl
from .errors import BemweError, DomainError, InputError
from .inference import FixedShape, fit_mle, partition_sample
from .moments import MomentRequest, marginal_moment, moment_mc_estimate
from .report import ReportDocument

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_NONCONVERGENCE = 4
EXIT_ACCURACY = 5

EVAL_KINDS = ("pdf", "cdf", "survival", "hazard", "max_cdf", "min_cdf")


def cmd_fit(
    dataset: Dataset,
    fixed: FixedShape = FixedShape(),
    confidence: float = 0.95,
    init=(1.0, 1.0, 1.0),
    tol: float = 1e-8,
    max_iter: int = 100,
) -> ReportDocument:
    if len(dataset) == 0:
        raise InputError("dataset is empty")
    part = partition_sample(dataset.sample(), fixed)
    fit = fit_mle(part, init=init, tol=tol, max_iter=max_iter, confidence=confidence)
    return ReportDocument.from_fit(fit, part, scale=dataset.scale, source=dataset.source)


def _eval_one(params: BemweParams, what: str, x1: float, x2: Optional[float], tie_tol: float) -> dict:
    row = {"x1": x1, "x2": x2, "what": what, "value": None, "region": "", "kind": "", "error": ""}
    if what in ("max_cdf", "min_cdf"):
        f = max_cdf if what == "max_cdf" else min_cdf
        row["value"] = float(f(params, x1))
        return row
    if x2 is None:
        raise InputError(f"{what} needs a pair x1,x2")
    if what == "cdf":
        row["value"] = float(joint_cdf(params, x1, x2))
    elif what == "survival":
        row["value"] = float(joint_survival(params, x1, x2))
    elif what == "pdf":
        d = joint_pdf(params, x1, x2, tie_tol)
        row.update(value=d.value, region=d.region.name, kind=d.kind.value)
    elif what == "hazard":
        d = joint_pdf(params, x1, x2, tie_tol)
        row.update(
            value=bivariate_hazard(params, x1, x2, tie_tol), region=d.region.name, kind=d.kind.value
        )
    else:
        raise InputError(f"unknown quantity {what!r}; choose from {', '.join(EVAL_KINDS)}")
    return row


def cmd_eval(params: BemweParams, what: str, points, tie_tol: float = 0.0) -> list[dict]:
    """One row per point; domain errors are recorded in the row's ``error`` field."""
    if what not in EVAL_KINDS:
        raise InputError(f"unknown quantity {what!r}; choose from {', '.join(EVAL_KINDS)}")
    rows = []
    for pt in points:
        pt = tuple(pt) if np.ndim(pt) else (pt,)
        x1 = float(pt[0])
        x2 = float(pt[1]) if len(pt) > 1 else None
        try:
            rows.append(_eval_one(params, what, x1, x2, tie_tol))
        except (DomainError, OverflowError) as exc:
            rows.append({"x1": x1, "x2": x2, "what": what, "value": None,
                         "region": "", "kind": "", "error": f"{type(exc).__name__}: {exc}"})
    return rows


def cmd_simulate(params: BemweParams, n: int, seed: int = 0) -> tuple[str, dict]:
    """Return (CSV text with header ``x1,x2``, summary)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    rng = np.random.default_rng(seed)
    sample = bemwe_sample(params, rng, n)
    buf = io.StringIO()
    buf.write("x1,x2\n")
    for a, b in zip(sample.x1, sample.x2):
        buf.write(f"{float(a)!r},{float(b)!r}\n")
    regions = sample.regions()
    counts = [int(np.sum(regions == k)) for k in (1, 2, 3)]
    summary = {
        "n": n,
        "seed": seed,
        "n1": counts[0],
        "n2": counts[1],
        "n3": counts[2],
        "tie_fraction": counts[2] / n,
        "expected_tie_fraction": params.gamma3 / params.gamma_sum,
    }
    return buf.getvalue(), summary


def cmd_moments(
    params: BemweParams,
    which: int,
    orders: Sequence[int],
    method: str = "quadrature",
    n: int = 1_000_000,
    seed: int = 0,
    rel_tol: float = 1e-8,
) -> list[dict]:
    rows = []
    rng = np.random.default_rng(seed)
    for r in orders:
        req = MomentRequest(params, which, int(r), rel_tol)
        if method == "quadrature":
            rows.append({"order": int(r), "value": marginal_moment(req), "std_error": None})
        elif method == "mc":
            est, se = moment_mc_estimate(req, rng, n)
            rows.append({"order": int(r), "value": est, "std_error": se})
        else:
            raise InputError(f"unknown method {method!r}")
    return rows


# argument plumbing ---------------------------------------------------------


def _fixed_args(p: argparse.ArgumentParser):
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--beta", type=float, default=0.3)
    p.add_argument("--lambda", dest="lam", type=float, default=0.05)


def _params_args(p: argparse.ArgumentParser):
    p.add_argument("--gammas", type=float, nargs=3, required=True, metavar=("G1", "G2", "G3"))
    _fixed_args(p)


def _params(ns) -> BemweParams:
    return BemweParams(*ns.gammas, ns.alpha, ns.beta, ns.lam)


def _parse_point(text: str):
    toks = [t for t in text.replace(",", " ").split() if t]
    if len(toks) not in (1, 2):
        raise InputError(f"bad point {text!r}; expected 'x' or 'x1,x2'")
    try:
        return tuple(float(t) for t in toks)
    except ValueError:
        raise InputError(f"bad point {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bemwe", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="maximum likelihood fit of (gamma1, gamma2, gamma3)")
    p.add_argument("csv", nargs="?", help="two-column CSV of (x1, x2); omit with --embedded")
    p.add_argument("--embedded", action="store_true", help="use the built-in NFL table")
    p.add_argument("--scale", type=float, default=None,
                   help="divide every value by this (default 1; 100 with --embedded)")
    p.add_argument("--tie-tol", type=float, default=0.0)
    p.add_argument("--level", type=float, default=0.95, help="confidence level of the intervals")
    p.add_argument("--init", type=float, nargs=3, default=(1.0, 1.0, 1.0))
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--json", type=Path, help="write the full-precision report here")
    _fixed_args(p)

    p = sub.add_parser("eval", help="evaluate a distribution function at points")
    _params_args(p)
    p.add_argument("--what", choices=EVAL_KINDS, default="pdf")
    p.add_argument("--tie-tol", type=float, default=0.0)
    p.add_argument("points", nargs="*", help="'x1,x2' (or 'y' for max_cdf/min_cdf)")
    p.add_argument("--points-file", type=Path)

    p = sub.add_parser("simulate", help="draw pairs from the shock model")
    _params_args(p)
    p.add_argument("-n", "--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, help="CSV destination (default: stdout)")

    p = sub.add_parser("moments", help="marginal moments E[X_i^r]")
    _params_args(p)
    p.add_argument("--which", type=int, choices=(1, 2), default=1)
    p.add_argument("--orders", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--method", choices=("quadrature", "mc"), default="quadrature")
    p.add_argument("-n", "--n", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rel-tol", type=float, default=1e-8)
    return parser


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6g}" if math.isfinite(v) else str(v)
    return str(v)


def _run(ns, out) -> int:
    if ns.command == "fit":
        if ns.embedded == bool(ns.csv):
            raise InputError("give exactly one of a CSV path or --embedded")
        if ns.embedded:
            ds = load_nfl(100.0 if ns.scale is None else ns.scale, ns.tie_tol)
        else:
            ds = load_csv(ns.csv, 1.0 if ns.scale is None else ns.scale, ns.tie_tol)
        doc = cmd_fit(ds, FixedShape(ns.alpha, ns.beta, ns.lam), ns.level,
                      init=ns.init, tol=ns.tol, max_iter=ns.max_iter)
        out.write(doc.render_text())
        if ns.json:
            ns.json.write_text(doc.to_json() + "\n", encoding="utf-8")
        return EXIT_OK if doc.converged else EXIT_NONCONVERGENCE

    params = _params(ns)
    if ns.command == "eval":
        points = [_parse_point(t) for t in ns.points]
        if ns.points_file:
            if not ns.points_file.exists():
                raise InputError(f"{ns.points_file}: no such file")
            points += [_parse_point(line) for line in ns.points_file.read_text().splitlines()
                       if line.strip() and not line.lstrip().startswith(("#", "x"))]
        if not points:
            raise InputError("no points given")
        rows = cmd_eval(params, ns.what, points, ns.tie_tol)
        out.write("x1\tx2\twhat\tvalue\tregion\tkind\terror\n")
        for r in rows:
            out.write("\t".join(_fmt(r[k]) for k in ("x1", "x2", "what", "value", "region", "kind", "error")) + "\n")
        return EXIT_DOMAIN if any(r["error"] for r in rows) else EXIT_OK

    if ns.command == "simulate":
        text, summary = cmd_simulate(params, ns.n, ns.seed)
        summary_text = "".join(f"{k} = {_fmt(v)}\n" for k, v in summary.items())
        if ns.out:
            ns.out.write_text(text, encoding="utf-8")
            out.write(summary_text)
        else:
            out.write(text)
            sys.stderr.write(summary_text)
        return EXIT_OK

    if ns.command == "moments":
        rows = cmd_moments(params, ns.which, ns.orders, ns.method, ns.n, ns.seed, ns.rel_tol)
        out.write("order\tvalue\tstd_error\n")
        for r in rows:
            out.write(f"{r['order']}\t{_fmt(r['value'])}\t{_fmt(r['std_error'])}\n")
        return EXIT_OK
    raise InputError(f"unknown command {ns.command!r}")


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return _run(ns, out)
    except BemweError as exc:
        sys.stderr.write(f"bemwe: error: {exc}\n")
        return exc.exit_code
    except ValueError as exc:  # e.g. which not in {1, 2}
        sys.stderr.write(f"bemwe: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
