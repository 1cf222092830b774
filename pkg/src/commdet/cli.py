"""Command-line front end.

    commdet catalog [--json]
    commdet verify SUITE [--N N] [--tol EQ] [--psd-tol T] [--rank-tol T] [--seed S] [--trials K] [--json]
    commdet trace --model FAMILY [--d D] [--lambda L] [--delta SPEC] [--N N] [--closed-form] [--json | --csv]
    commdet eval --expr EXPR --model FAMILY [--d D] [--N N] [--json]

Exit codes: 0 when every verdict is PASS, NOT-APPLICABLE or NECESSARY-ONLY,
1 on any FAIL, 2 on usage or parameter errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__, analysis, freealg, linalg, models, suites
from .errors import CommdetError, GradingError, ParameterError, ParseError, ValidationError
from .gradedop import FiniteTuple, evaluate, evaluate_finite

SCHEMA = 1


def _clean(obj):
    """JSON-safe copy: numpy scalars to Python, complex to [re, im], tuples to lists."""
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(float(obj.real)), _clean(float(obj.imag))]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            return str(x)
        return x
    return obj


def dumps(report: dict) -> str:
    return json.dumps(_clean(report), sort_keys=True, indent=2)


def _report(args, command: str, payload: dict, descriptor: dict | None = None, tol=None, notes=None) -> dict:
    tol = tol or linalg.DEFAULT_TOL
    return {
        "schema": SCHEMA,
        "tool": "commdet",
        "version": __version__,
        "command": command,
        "argv": getattr(args, "_argv", []),
        "descriptor": descriptor or {},
        "seed": getattr(args, "seed", None),
        "tolerances": tol.as_dict(),
        "result": payload,
        "provenance": notes or {},
    }


def _tolerances(args) -> linalg.ToleranceConfig:
    try:
        return linalg.ToleranceConfig(
            psd_tol=args.psd_tol if args.psd_tol is not None else linalg.DEFAULT_TOL.psd_tol,
            rank_tol=args.rank_tol if args.rank_tol is not None else linalg.DEFAULT_TOL.rank_tol,
            eq_tol=args.tol if args.tol is not None else linalg.DEFAULT_TOL.eq_tol,
        )
    except ValueError as exc:
        raise ParameterError(str(exc)) from None


# ---------------------------------------------------------------- commands

def cmd_catalog(args, out) -> int:
    listing = {name: dict(info) for name, info in sorted(models.CATALOG.items())}
    if args.json:
        out.write(dumps(_report(args, "catalog", {"families": listing})) + "\n")
    else:
        for name, info in listing.items():
            params = ", ".join(f"{k}: {v}" for k, v in info["params"].items())
            out.write(f"{name:<20} {info['kind']:<7} {params}\n")
    return 0


def cmd_verify(args, out) -> int:
    tol = _tolerances(args)
    opt = suites.SuiteOptions(N=args.N, seed=args.seed, trials=args.trials, tol=tol)
    names = sorted(suites.SUITES) if args.suite == "all" else [args.suite]
    verdicts = []
    for name in names:
        for v in suites.run_suite(name, opt):
            verdicts.append({"suite": name, **v.as_dict()})
    failed = any(v["status"] == analysis.FAIL for v in verdicts)
    notes = {
        "scope": "finite-window computations; infinite-dimensional claims (trace-class membership, "
                 "spectra) are checked through windowed partial sums and exact block identities only",
        "model_facts": "spectra, volumes and BS constants taken from ModelFacts are cited, not computed",
    }
    if args.json:
        payload = {"suite": args.suite, "verdicts": verdicts, "exit_code": 1 if failed else 0}
        out.write(dumps(_report(args, "verify", payload, {"suite": args.suite, "N": args.N}, tol, notes)) + "\n")
    else:
        for v in verdicts:
            summary = ", ".join(f"{k}={_short(val)}" for k, val in v["details"].items()
                                if not isinstance(val, (list, dict)))
            out.write(f"{v['status']:<15} {v['suite']:<12} {v['name']}  {summary}\n")
        out.write(f"{'FAIL' if failed else 'PASS'}: {len(verdicts)} checks\n")
    return 1 if failed else 0


def _short(x):
    if isinstance(x, float):
        return f"{x:.6g}"
    return x


def _descriptor(args) -> dict:
    desc = {"family": args.model, "N": args.N}
    if args.d is not None:
        desc["d"] = args.d
    if getattr(args, "lam", None) is not None:
        desc["lambda"] = args.lam
    if getattr(args, "delta", None) is not None:
        desc["delta_spec"] = args.delta
    if getattr(args, "restricted", False):
        desc["restricted"] = True
    if getattr(args, "seed", None) is not None:
        desc["seed"] = args.seed
    if getattr(args, "n", None) is not None:
        desc["n"] = args.n
    return desc


def cmd_trace(args, out) -> int:
    desc = _descriptor(args)
    model = models.from_descriptor(desc)
    if not isinstance(model, models.GradedModel):
        raise ParameterError(f"trace needs a graded model, {args.model!r} is a finite tuple")
    ts = analysis.trace_series(model, args.N, use_closed_form=args.closed_form)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "dim", "block_trace", "partial_sum"])
        for e, s in zip(ts.entries, ts.partial_sums):
            w.writerow([e["k"], e["dim"], repr(e["trace"]), repr(s)])
        out.write(buf.getvalue())
    elif args.json:
        notes = {"facts": model.facts.as_dict()}
        out.write(dumps(_report(args, "trace", ts.as_dict(), desc, notes=notes)) + "\n")
    else:
        out.write(f"{'k':>4} {'dim':>6} {'block trace':>22} {'partial sum':>22}\n")
        for e, s in zip(ts.entries, ts.partial_sums):
            out.write(f"{e['k']:>4} {e['dim']:>6} {e['trace']:>22.15g} {s:>22.15g}\n")
        if ts.closed_form_partial_sum is not None:
            out.write(f"closed-form partial sum at N={ts.N}: {ts.closed_form_partial_sum:.15g}\n")
        out.write(f"window N={ts.N} (operators built at {ts.window}); "
                  "partial sums of a PSD dEt are lower bounds for its trace\n")
    return 0


def _word_margin(expr: freealg.FormalSum, shifts) -> int:
    """Largest degree excursion above the source along any word (applied right to left)."""
    worst = 0
    for word, _ in expr:
        level = 0
        for letter in reversed(word):
            g = shifts[letter.index - 1]
            level += -g if letter.starred else g
            worst = max(worst, level)
    return worst


def cmd_eval(args, out) -> int:
    desc = _descriptor(args)
    model = models.from_descriptor(desc)
    d = model.d
    expr = freealg.parse_word_expr(args.expr, d)
    if isinstance(model, FiniteTuple):
        M = evaluate_finite(expr, model)
        payload = {"expression": str(expr), "matrix": M, "operator_norm": linalg.operator_norm(M),
                   "trace": complex(np.trace(M)), "window": None}
    else:
        N = model.N
        ops = model.operators(N + _word_margin(expr, model.shifts))
        op = evaluate(expr, ops)
        degrees = [k for k in range(N + 1) if k in op.valid]
        blocks = [{"k": k, "target": k + op.shift, "norm": linalg.operator_norm(op.valid_block(k)),
                   "block": op.valid_block(k)} for k in degrees]
        payload = {"expression": str(expr), "shift": op.shift, "window": N, "degrees": degrees, "blocks": blocks,
                   "max_norm": max((b["norm"] for b in blocks), default=0.0)}
        if op.shift == 0:
            payload["trace"] = float(sum(np.trace(op.valid_block(k)).real for k in degrees))
    if args.json:
        out.write(dumps(_report(args, "eval", payload, desc)) + "\n")
    else:
        out.write(f"expression: {payload['expression']}\n")
        if "blocks" in payload:
            out.write(f"shift {payload['shift']}, exact degrees {degrees[:1]}..{degrees[-1:]}\n")
            for b in payload["blocks"]:
                out.write(f"  degree {b['k']:>3} -> {b['target']:>3}: norm {b['norm']:.6g}\n")
            if "trace" in payload:
                out.write(f"trace over degrees 0..{N}: {payload['trace']:.15g}\n")
        else:
            out.write(f"operator norm {payload['operator_norm']:.6g}, trace {payload['trace']:.6g}\n")
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="commdet", description="Determinant of commutator grids: checks and traces.")
    p.add_argument("--version", action="version", version=f"commdet {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="list model families")
    c.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(suites.SUITES) + ["all"])
    v.add_argument("--N", type=int, default=None)
    v.add_argument("--tol", type=float, default=None, help="relative equality tolerance")
    v.add_argument("--psd-tol", type=float, default=None)
    v.add_argument("--rank-tol", type=float, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--json", action="store_true")

    def model_args(sp, default_N):
        sp.add_argument("--model", required=True, choices=sorted(models.CATALOG))
        sp.add_argument("--d", type=int, default=None)
        sp.add_argument("--N", type=int, default=default_N)
        sp.add_argument("--lambda", dest="lam", type=float, default=None)
        sp.add_argument("--delta", default=None, help="one | ratio(k+1,k+2) | comma-separated values")
        sp.add_argument("--restricted", action="store_true", help="antisymmetric restriction (symmetrized_bidisc)")
        sp.add_argument("--n", type=int, default=None, help="matrix size for finite families")
        sp.add_argument("--seed", type=int, default=None)

    t = sub.add_parser("trace", help="per-degree trace table of dEt")
    model_args(t, 20)
    t.add_argument("--closed-form", action="store_true", help="use closed-form eigenvalues")
    fmt = t.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")

    e = sub.add_parser("eval", help="evaluate a word expression on a model")
    model_args(e, 6)
    e.add_argument("--expr", required=True)
    e.add_argument("--json", action="store_true")
    return p


COMMANDS = {"catalog": cmd_catalog, "verify": cmd_verify, "trace": cmd_trace, "eval": cmd_eval}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._argv = argv
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        err.write(f"commdet: parse error: {exc}\n{getattr(args, 'expr', '')}\n{' ' * exc.position}^\n")
        return 2
    except (ParameterError, GradingError, ValidationError) as exc:
        err.write(f"commdet: {type(exc).__name__}: {exc}\n")
        return 2
    except CommdetError as exc:
        err.write(f"commdet: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
