"""Command-line front end: construct, verify, sweep, field-info.

stdout carries data, stderr carries diagnostics.  Exit status is 0 when every
verified case matches, 2 on any mismatch and 1 on operational errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .codes import (
    DEFAULT_BUDGET,
    WeightDistribution,
    defining_set,
    format_enumerator,
    griesmer,
    weight_distribution,
    wt_ratio,
)
from .errors import CodeWeightsError
from .gf import FieldCtx
from .theory import VerifyReport, classify, length_closed, verify

JSON_SAFE = 2 ** 53
EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2


def json_num(v: int) -> int | str:
    return str(v) if abs(v) > JSON_SAFE else v


def _griesmer_dict(wd: WeightDistribution) -> dict | None:
    if wd.k < 1:
        return None
    g = griesmer(wd)
    return {"bound_n": json_num(g.bound_n), "passes": g.passes,
            "next_passes": g.next_passes, "classification": g.classification}


def _ratio_dict(wd: WeightDistribution) -> dict | None:
    if wd.k < 1:
        return None
    r = wt_ratio(wd)
    return {"wt_min": json_num(r.wt_min), "wt_max": json_num(r.wt_max),
            "ratio": f"{r.ratio.numerator}/{r.ratio.denominator}", "exceeds": r.exceeds}


def distribution_dict(p: int, e: int, i: int, modulus, wd: WeightDistribution) -> dict:
    return {
        "p": p, "e": e, "i": i,
        "modulus": list(modulus),
        "n": json_num(wd.n), "k": wd.k, "d": None if wd.d is None else json_num(wd.d),
        "enumerator": [[json_num(w), json_num(a)] for w, a in wd.enumerator()],
        "griesmer": _griesmer_dict(wd),
        "wt_ratio": _ratio_dict(wd),
    }


def _row_json(r: dict) -> dict:
    return {k: json_num(v) if isinstance(v, int) and not isinstance(v, bool) else v
            for k, v in r.items()}


def report_dict(rep: VerifyReport) -> dict:
    c = rep.case
    out = distribution_dict(c.p, c.e, c.i, rep.modulus, rep.enumerated)
    out.update({
        "verdict": rep.verdict,
        "anomalies": [{"row": r.row, "problem": r.problem} for r in rep.predicted.anomalies],
        "theorem": c.theorem,
        "statement_theorem": c.statement_theorem,
        "claimed_length": json_num(rep.claimed_length),
        "length_closed": json_num(rep.length_closed),
        "parameter_match": rep.parameter_match,
        "rows_matched": [_row_json(r) for r in rep.rows_matched],
        "rows_mismatched": [_row_json(r) for r in rep.rows_mismatched],
    })
    return out


@dataclass
class ReportEnvelope:
    p: int
    e: int
    i: int
    modulus: list[int] | None
    status: str  # MATCH, MISMATCH, FORMULA_ANOMALY, SKIPPED, ERROR or OK
    wall_time: float
    payload: dict | None = None
    message: str | None = None
    version: str = field(default=__version__)

    def as_dict(self) -> dict:
        return {
            "version": self.version,
            "field": {"p": self.p, "e": self.e, "modulus": self.modulus},
            "i": self.i,
            "status": self.status,
            "wall_time": round(self.wall_time, 6),
            "message": self.message,
            "report": self.payload,
        }


@dataclass(frozen=True)
class SweepSpec:
    primes: tuple[int, ...] = (3, 5, 7)
    degrees: tuple[int, ...] = (2, 3, 4, 5)
    class_indices: tuple[int, ...] = (0, 1)
    work_budget: int = DEFAULT_BUDGET
    output_format: str = "text"

    def cases(self) -> list[tuple[int, int, int]]:
        return sorted((p, e, i) for p in self.primes for e in self.degrees
                      for i in self.class_indices)


# -- case runners (module level so the process pool can pickle them) --

def _ctx(p: int, e: int, modulus: list[int] | None) -> FieldCtx:
    return FieldCtx(p, e, modulus)


def run_construct(p: int, e: int, i: int, budget: int, modulus=None) -> ReportEnvelope:
    start = time.perf_counter()
    classify(p, e, i)
    ctx = _ctx(p, e, modulus)
    wd = weight_distribution(ctx, defining_set(ctx, i), budget)
    return ReportEnvelope(p, e, i, list(ctx.modulus), "OK", time.perf_counter() - start,
                          distribution_dict(p, e, i, ctx.modulus, wd))


def run_verify(p: int, e: int, i: int, budget: int, modulus=None) -> ReportEnvelope:
    start = time.perf_counter()
    classify(p, e, i)
    ctx = _ctx(p, e, modulus)
    rep = verify(p, e, i, budget, ctx)
    return ReportEnvelope(p, e, i, list(ctx.modulus), rep.verdict,
                          time.perf_counter() - start, report_dict(rep))


def sweep_case(args: tuple[int, int, int, int]) -> ReportEnvelope:
    p, e, i, budget = args
    start = time.perf_counter()
    try:
        cost = p ** e * length_closed(p, e, i)
        if cost > budget:
            return ReportEnvelope(p, e, i, None, "SKIPPED", time.perf_counter() - start,
                                  message=f"estimated cost {cost} exceeds budget {budget}")
        return run_verify(p, e, i, budget)
    except CodeWeightsError as exc:
        return ReportEnvelope(p, e, i, None, "ERROR", time.perf_counter() - start,
                              message=str(exc))


def run_sweep(spec: SweepSpec, jobs: int | None = None) -> list[ReportEnvelope]:
    tasks = [(p, e, i, spec.work_budget) for p, e, i in spec.cases()]
    jobs = jobs or os.cpu_count() or 1
    if jobs == 1 or len(tasks) <= 1:
        return [sweep_case(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(sweep_case, tasks))  # map keeps input order


# -- formatting --

def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def _text_summary(env: ReportEnvelope) -> str:
    head = f"(p={env.p}, e={env.e}, i={env.i})"
    r = env.payload
    if r is None:
        return f"{head} {env.status}: {env.message}"
    pairs = [(int(w), int(a)) for w, a in r["enumerator"]]
    parts = [head, f"[{r['n']},{r['k']},{r['d']}]", format_enumerator(pairs)]
    if r["griesmer"]:
        parts.append(r["griesmer"]["classification"])
    if r["wt_ratio"]:
        parts.append(f"wt_ratio={r['wt_ratio']['ratio']}"
                     + (" (>(p-1)/p)" if r["wt_ratio"]["exceeds"] else ""))
    if "verdict" in r:
        parts.append(f"Table {r['theorem']} (statement reading: Theorem {r['statement_theorem']})")
        parts.append(r["verdict"])
    return "  ".join(str(x) for x in parts)


def _text_rows(r: dict) -> list[str]:
    lines = []
    for row in r["rows_mismatched"]:
        label = f"row {row['row']}" if row["row"] is not None else "extra"
        lines.append(f"  {label}: weight {row['weight']} predicted {row['multiplicity']}"
                     f" observed {row['observed']}" + (f" ({row['problem']})" if row["problem"] else ""))
    if not r["parameter_match"]:
        lines.append(f"  parameters: claimed [{r['claimed_length']},{r['e']}]"
                     f" enumerated [{r['n']},{r['k']}]")
    return lines


def format_construct(env: ReportEnvelope, fmt: str) -> str:
    if fmt == "json":
        return _dump(env.as_dict())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["weight", "multiplicity"])
        w.writerows(env.payload["enumerator"])
        return buf.getvalue().rstrip("\n")
    return _text_summary(env)


def format_verify(env: ReportEnvelope, fmt: str) -> str:
    r = env.payload
    if fmt == "json":
        return _dump(env.as_dict())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "weight", "predicted", "observed", "status"])
        for row in r["rows_matched"]:
            w.writerow([row["row"], row["weight"], row["multiplicity"], row["observed"], "match"])
        for row in r["rows_mismatched"]:
            w.writerow([row["row"], row["weight"], row["multiplicity"], row["observed"],
                        row["problem"] or "mismatch"])
        return buf.getvalue().rstrip("\n")
    return "\n".join([_text_summary(env)] + _text_rows(r))


SWEEP_CSV = ["p", "e", "i", "n", "k", "d", "status", "wall_time"]


def format_sweep(envs: list[ReportEnvelope], fmt: str) -> str:
    counts = {s: sum(1 for x in envs if x.status == s)
              for s in ("MATCH", "MISMATCH", "FORMULA_ANOMALY", "SKIPPED", "ERROR")}
    summary = ("summary: " + " ".join(f"{k}={v}" for k, v in counts.items())
               + f" total={len(envs)}")
    if fmt == "json":
        lines = [_dump(x.as_dict()) for x in envs]
        lines.append(_dump({"summary": counts, "total": len(envs)}))
        return "\n".join(lines)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_CSV)
        for x in envs:
            r = x.payload or {}
            w.writerow([x.p, x.e, x.i, r.get("n", ""), r.get("k", ""), r.get("d", ""),
                        x.status, f"{x.wall_time:.6f}"])
        return buf.getvalue().rstrip("\n")
    return "\n".join([_text_summary(x) for x in envs] + [summary])


def sweep_exit(envs: list[ReportEnvelope]) -> int:
    if any(x.status == "ERROR" for x in envs):
        return EXIT_ERROR
    if any(x.status in ("MISMATCH", "FORMULA_ANOMALY") for x in envs):
        return EXIT_MISMATCH
    return EXIT_OK


# -- argument parsing --

def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _default_budget() -> int:
    env = os.environ.get("CODEWEIGHTS_BUDGET")
    if env is None:
        return DEFAULT_BUDGET
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"error: CODEWEIGHTS_BUDGET must be an integer, got {env!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="codeweights", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, need_i=True, with_modulus=True):
        sp.add_argument("-p", type=int, required=True, help="odd prime")
        sp.add_argument("-e", type=int, required=True, help="extension degree")
        if need_i:
            sp.add_argument("-i", type=int, default=0, choices=(0, 1),
                            help="0 for squares, 1 for non-squares")
        if with_modulus:
            sp.add_argument("--modulus", type=_int_list, default=None,
                            help='monic irreducible modulus "c0,c1,...,1", constant term first')
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--budget", type=int, default=None,
                        help="max p^e * n work per case (default $CODEWEIGHTS_BUDGET or 1e9)")

    common(sub.add_parser("construct", help="build C_{D_i} and print its weight distribution"))
    common(sub.add_parser("verify", help="compare the predicted table with enumeration"))
    fi = sub.add_parser("field-info", help="describe the field F_{p^e} in use")
    fi.add_argument("-p", type=int, required=True)
    fi.add_argument("-e", type=int, required=True)
    fi.add_argument("--modulus", type=_int_list, default=None)
    fi.add_argument("--format", choices=("json", "text"), default="text")

    sw = sub.add_parser("sweep", help="verify every case of a (p, e, i) grid")
    sw.add_argument("--primes", type=_int_list, default=[3, 5, 7])
    sw.add_argument("--degrees", type=_int_list, default=[2, 3, 4, 5])
    sw.add_argument("--classes", type=_int_list, default=[0, 1])
    sw.add_argument("--format", choices=("json", "csv", "text"), default="text")
    sw.add_argument("--budget", type=int, default=None)
    sw.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    return parser


def _field_info(args) -> str:
    ctx = FieldCtx(args.p, args.e, args.modulus)
    info = {
        "p": ctx.p, "e": ctx.e, "q": json_num(ctx.q), "modulus": list(ctx.modulus),
        "primitive": list(ctx.primitive.coeffs),
        "basis_traces": [ctx.trace(ctx.from_index(ctx.p ** j)) for j in range(ctx.e)],
        "version": __version__,
    }
    if args.format == "json":
        return _dump(info)
    return "\n".join(f"{k}: {v}" for k, v in info.items())


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    budget = args.budget if getattr(args, "budget", None) is not None else _default_budget()
    try:
        if budget <= 0:
            raise ValueError("budget must be positive")
        if args.command == "field-info":
            print(_field_info(args))
            return EXIT_OK
        if args.command == "construct":
            env = run_construct(args.p, args.e, args.i, budget, args.modulus)
            print(format_construct(env, args.format))
            return EXIT_OK
        if args.command == "verify":
            env = run_verify(args.p, args.e, args.i, budget, args.modulus)
            print(format_verify(env, args.format))
            return EXIT_OK if env.status == "MATCH" else EXIT_MISMATCH
        spec = SweepSpec(tuple(args.primes), tuple(args.degrees), tuple(args.classes),
                         budget, args.format)
        for p in spec.primes:
            classify(p, 2, 0)
        envs = run_sweep(spec, args.jobs)
        print(format_sweep(envs, args.format))
        return sweep_exit(envs)
    except (CodeWeightsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
