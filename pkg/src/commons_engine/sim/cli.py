"""Batch simulation CLI.

    sim run --scenario reference --out out/
    sim analyze --log out/events.ndjson --figures 2,3,4,5 --out out/
    sim sweep --scenario scenario.json --param agents.0.policy.diligence \
              --values 0.2,0.5,0.9 --out sweep/

Scenario files are JSON (see sim/scenario.py); the names ``reference`` and
``honesty-probe`` resolve to the built-in scenarios. Figure ids map to the
analysis datasets: 2 = chore shares, 3 = specialization, 4 = hearts
trajectories, 5 = purchasing.
"""

from __future__ import annotations

import argparse
import csv
import json
from pathlib import Path
from typing import Any

from ..errors import CommonsError
from ..store import read_log
from .analytics import (
    compute_chore_shares,
    compute_hearts_trajectories,
    compute_purchase_stats,
    compute_specialization,
)
from .reference import honesty_probe_scenario, reference_scenario
from .runner import run_scenario
from .scenario import load_scenario
from . import plots

BUILTIN = {
    "reference": reference_scenario,
    "honesty-probe": honesty_probe_scenario,
}


def _resolve_scenario(spec: str) -> dict[str, Any]:
    if spec in BUILTIN:
        return BUILTIN[spec]() if spec == "reference" else BUILTIN[spec](seed=1)
    return json.loads(Path(spec).read_text(encoding="utf-8"))


def _write_log(events, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for event in events:
            fh.write(event.to_json() + "\n")


def cmd_run(args) -> int:
    scenario = load_scenario(_resolve_scenario(args.scenario))
    result = run_scenario(scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_log(result.events, out / "events.ndjson")
    report = result.engine.conservation_report(scenario.house)
    summary = {
        "house": scenario.house,
        "seed": scenario.seed,
        "months": scenario.months,
        "events": len(result.events),
        "stats": result.stats,
        "planted": result.planted,
        "conservation_residual": report["residual"],
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(f"wrote {len(result.events)} events to {out / 'events.ndjson'}")
    print(f"conservation residual: {report['residual']:.3e}")
    return 0


def cmd_analyze(args) -> int:
    events = read_log(args.log)
    figures = {f.strip() for f in args.figures.split(",") if f.strip()}
    groups = None
    if args.groups:
        groups = json.loads(Path(args.groups).read_text(encoding="utf-8"))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if "2" in figures:
        shares = compute_chore_shares(events, groups=groups)
        written.append(shares.write_csv(out / "chore_shares.csv"))
        if shares.meta.get("group_shares"):
            (out / "group_shares.json").write_text(
                json.dumps(shares.meta["group_shares"], indent=2) + "\n")
        written.append(plots.plot_chore_shares(shares, out))
    if "3" in figures:
        spec = compute_specialization(events)
        written.append(spec.write_csv(out / "specialization.csv"))
        written.append(plots.plot_specialization(spec, out))
    if "4" in figures:
        hearts = compute_hearts_trajectories(events)
        written.append(hearts.write_csv(out / "hearts_trajectories.csv"))
        written.append(plots.plot_hearts(hearts, out))
    if "5" in figures:
        stats = compute_purchase_stats(events)
        written.append(stats.balances.write_csv(out / "account_balances.csv"))
        written.append(stats.buyers.write_csv(out / "purchase_counts.csv"))
        (out / "purchase_stats.json").write_text(json.dumps({
            "settled_purchases": stats.buyers.meta["settled_purchases"],
            "residents": stats.buyers.meta["residents"],
            "coverage": stats.coverage,
            "top_share": stats.top_share,
        }, indent=2) + "\n")
        written.extend(plots.plot_purchases(stats, out))
    for path in written:
        print(f"wrote {path}")
    return 0


def _set_path(obj: Any, dotted: str, value: Any) -> None:
    parts = dotted.split(".")
    for part in parts[:-1]:
        obj = obj[int(part)] if isinstance(obj, list) else obj[part]
    last = parts[-1]
    if isinstance(obj, list):
        obj[int(last)] = value
    else:
        obj[last] = value


def _parse_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def cmd_sweep(args) -> int:
    base = _resolve_scenario(args.scenario)
    values = [_parse_value(v) for v in args.values.split(",")]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for value in values:
        variant = json.loads(json.dumps(base))
        _set_path(variant, args.param, value)
        scenario = load_scenario(variant)
        result = run_scenario(scenario)
        report = result.engine.conservation_report(scenario.house)
        stats = compute_purchase_stats(result.events)
        rows.append({
            "param": args.param,
            "value": value,
            "events": len(result.events),
            "claims": result.stats["claims"],
            "purchases_settled": stats.buyers.meta["settled_purchases"],
            "top_share": stats.top_share if stats.top_share is not None else "",
            "conservation_residual": report["residual"],
        })
        print(f"{args.param}={value}: {len(result.events)} events, "
              f"{result.stats['claims']} claims")
    path = out / "sweep_summary.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="sim", description="simulation and analytics for commons-engine")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario, write its event log")
    run.add_argument("--scenario", required=True,
                     help="scenario JSON path, or 'reference' / 'honesty-probe'")
    run.add_argument("--out", required=True)
    run.set_defaults(func=cmd_run)

    analyze = sub.add_parser("analyze", help="recompute analysis datasets from a log")
    analyze.add_argument("--log", required=True)
    analyze.add_argument("--figures", default="2,3,4,5",
                         help="comma-separated ids: 2=chore shares, 3=specialization, "
                              "4=hearts, 5=purchasing")
    analyze.add_argument("--out", required=True)
    analyze.add_argument("--groups", default=None,
                         help="JSON file mapping group name -> chore names")
    analyze.set_defaults(func=cmd_analyze)

    sweep = sub.add_parser("sweep", help="run a scenario across parameter values")
    sweep.add_argument("--scenario", required=True)
    sweep.add_argument("--param", required=True,
                       help="dotted path into the scenario JSON, e.g. "
                            "agents.0.policy.diligence")
    sweep.add_argument("--values", required=True, help="comma-separated values")
    sweep.add_argument("--out", required=True)
    sweep.set_defaults(func=cmd_sweep)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommonsError as exc:
        parser.exit(2, f"error: {exc.__class__.__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
