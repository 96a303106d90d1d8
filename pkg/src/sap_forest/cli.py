"""Command-line front end: gen, run, verify, bench."""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from .analysis import ScenarioAnalysis
from .ledger import run_token_ledger
from .levels import TurnClass, classify_turn
from .minimax import INF
from .oracle import OracleBudget
from .scenarios import (FAMILIES, format_instance, generate, load_instance,
                        write_run_csv)
from .verify import REGISTRY, summarize, verify_scenario


def _write_out(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_gen(args) -> int:
    try:
        inst = generate(args.family, args.n, args.seed)
    except ValueError as exc:
        print(f"gen: {exc}", file=sys.stderr)
        return 2
    _write_out(format_instance(inst), args.out)
    return 0


def cmd_run(args) -> int:
    inst = load_instance(args.instance)
    analysis = ScenarioAnalysis(inst.white_count, inst.arrivals)
    if args.csv is None or args.csv == "-":
        write_run_csv(analysis, args.beta, sys.stdout)
    else:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            write_run_csv(analysis, args.beta, fh)
    n = inst.white_count
    sum_pi = sum(r.pi_len or 0 for r in analysis.records)
    sum_dist = sum(int(r.dist) for r in analysis.records if r.dist != INF)
    ref = n * math.log2(n) if n > 1 else 0.0
    print(f"sum_pi={sum_pi} sum_dist={sum_dist} n_log2_n={ref:.1f}",
          file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    names = set(args.checks.split(",")) if args.checks else None
    if names:
        unknown = names - set(REGISTRY)
        if unknown:
            print(f"unknown checks: {sorted(unknown)}", file=sys.stderr)
            return 2
    budget = OracleBudget(max_component_size=args.oracle_budget,
                          max_subset_size=args.oracle_budget)
    key = (lambda v: -v) if args.alt_tiebreak else (lambda v: v)
    results = verify_scenario(inst.white_count, inst.arrivals,
                              beta=args.beta, budget=budget, names=names,
                              key=key)
    for r in results:
        line = f"{r.name}: {r.status}"
        if r.detail:
            line += f" ({r.detail})"
        print(line)
    s = summarize(results)
    print(f"summary: {s['passed']} passed, {s['failed']} failed, "
          f"{s['skipped']} skipped")
    return 0 if s["failed"] == 0 else 1


def cmd_bench(args) -> int:
    if args.beta <= 1:
        print("bench: beta must exceed 1", file=sys.stderr)
        return 2
    rows = []
    ok = True
    for family in args.family.split(","):
        if family not in FAMILIES:
            print(f"unknown family {family!r}", file=sys.stderr)
            return 2
        for n in (int(s) for s in args.n_list.split(",")):
            for seed in (int(s) for s in args.seeds.split(",")):
                row = _bench_cell(family, n, seed, args.beta)
                ok = ok and row["budget_ok"]
                rows.append(row)
    report = {"beta": args.beta, "rows": rows, "all_budgets_ok": ok}
    _write_out(json.dumps(report, indent=2) + "\n", args.report)
    return 0 if ok else 1


def _bench_cell(family: str, n: int, seed: int, beta: float) -> dict:
    inst = generate(family, n, seed)
    t0 = time.perf_counter()
    analysis = ScenarioAnalysis(inst.white_count, inst.arrivals)
    t1 = time.perf_counter()
    ledger = run_token_ledger(analysis, beta)
    t2 = time.perf_counter()

    sum_dist = sum(int(r.dist) for r in analysis.records if r.dist != INF)
    sum_pi = sum(r.pi_len or 0 for r in analysis.records)
    prefix = sum(r.prefix_len for r in analysis.records
                 if r.prefix_len is not None)
    slow = jump = 0
    for rec in analysis.records:
        cls = classify_turn(rec, beta)
        if cls is TurnClass.CASE_SLOW:
            slow += rec.suffix_len
        elif cls is TurnClass.CASE_JUMP:
            jump += rec.suffix_len
    slow_bound = 2 * beta * n + (beta * n * math.log2(n) if n > 1 else 0)
    jump_bound = ledger.suffix_bound
    total_bound = 2 * n + slow_bound + jump_bound
    ref = n * math.log2(n) if n > 1 else 0.0
    return {
        "family": family,
        "n": n,
        "seed": seed,
        "turns": len(analysis.records),
        "sum_dist": sum_dist,
        "sum_pi": sum_pi,
        "prefix_total": prefix,
        "slow_suffix_total": slow,
        "jump_suffix_total": jump,
        "prefix_bound": 2 * n,
        "slow_bound": round(slow_bound, 1),
        "jump_bound": round(jump_bound, 1),
        "total_bound": round(total_bound, 1),
        "budget_ok": (prefix <= 2 * n and slow <= slow_bound
                      and jump <= jump_bound and sum_dist <= total_bound
                      and ledger.conservation_ok
                      and ledger.invariant_violations == 0
                      and ledger.pay_twice_violations == 0),
        "fit_C": round(sum_dist / ref, 4) if ref else None,
        "deaths": sum(len(r.deaths) for r in analysis.records),
        "jump_turns": len(ledger.jump_turns),
        "tokens_utilized": ledger.utilized,
        "analysis_seconds": round(t1 - t0, 3),
        "ledger_seconds": round(t2 - t1, 3),
    }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sap-forest",
        description="Online bipartite forest matching laboratory",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a scenario instance")
    g.add_argument("--family", required=True, choices=sorted(FAMILIES))
    g.add_argument("--n", type=int, required=True, help="white vertex count")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None, help="file or - for stdout")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="replay an instance and emit the run CSV")
    r.add_argument("--instance", required=True)
    r.add_argument("--csv", default=None, help="file or - for stdout")
    r.add_argument("--beta", type=float, default=2.0)
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="run property checks")
    v.add_argument("--instance", required=True)
    v.add_argument("--beta", type=float, default=2.0)
    v.add_argument("--oracle-budget", type=int, default=12,
                   help="exhaustive-oracle component size budget")
    v.add_argument("--checks", default=None,
                   help="comma-separated check names (default: all)")
    v.add_argument("--alt-tiebreak", action="store_true",
                   help="rerun under the reversed tie-breaking order")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="budget and timing report")
    b.add_argument("--family", default="pendant_chain,random_tree",
                   help="comma-separated family names")
    b.add_argument("--n-list", default="64,256", dest="n_list",
                   help="comma-separated sizes")
    b.add_argument("--seeds", default="0", help="comma-separated seeds")
    b.add_argument("--beta", type=float, default=2.0)
    b.add_argument("--report", default=None, help="file or - for stdout")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
