"""Command-line front end.

    smclab run <scenario> [--out DIR] [--dt DT] [--duration T]
    smclab compare <scenario> --controllers smc,nsmc,ncsmc [--out DIR] ...
    smclab validate <scenario>

<scenario> is a TOML file path or the name of a shipped scenario (see
smclab.scenarios).  Exit codes: 0 ok, 1 config or usage error, 2 runtime
divergence.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .config import ScenarioError, load_scenario, scenario_to_dict
from .csvlog import write_comparison_json, write_log_csv, write_metrics_json
from .numerics import IntegrationDivergedError, IntegratorConfig
from .scenarios import scenario_path
from .simulation import Scenario, run, run_comparison


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage errors are exit 1 here
        raise _UsageError(message)


def _resolve(arg: str) -> Path:
    p = Path(arg)
    if p.is_file():
        return p
    shipped = scenario_path(arg)
    if shipped is not None:
        return shipped
    raise ScenarioError(f"scenario file not found: {arg}")


def _load(args) -> Scenario:
    scenario = load_scenario(_resolve(args.scenario))
    if args.duration is not None:
        scenario = dataclasses.replace(scenario, duration=args.duration)
    if args.dt is not None:
        cfg = IntegratorConfig(method=scenario.integrator.method, dt=args.dt)
        scenario = dataclasses.replace(scenario, integrator=cfg)
    return scenario


def _cmd_run(args) -> int:
    scenario = _load(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    log, metrics = run(scenario)
    csv_path = out_dir / f"{scenario.name}_log.csv"
    json_path = out_dir / f"{scenario.name}_metrics.json"
    write_log_csv(csv_path, log)
    write_metrics_json(json_path, metrics, scenario.name, scenario.controller,
                       scenario.seed)
    print(f"{scenario.name}: {len(log)} rows -> {csv_path} {json_path}")
    return 0


def _cmd_compare(args) -> int:
    scenario = _load(args)
    controllers = [c.strip() for c in args.controllers.split(",") if c.strip()]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = run_comparison(scenario, controllers)
    for name, (log, _) in result.runs.items():
        write_log_csv(out_dir / f"{scenario.name}_{name}_log.csv", log)
    cmp_path = out_dir / "comparison.json"
    write_comparison_json(cmp_path, result)
    print(f"{scenario.name}: compared {', '.join(controllers)} -> {cmp_path}")
    return 0


def _cmd_validate(args) -> int:
    scenario = load_scenario(_resolve(args.scenario))
    print(json.dumps(scenario_to_dict(scenario), indent=2))
    return 0


def main(argv=None) -> int:
    parser = _Parser(prog="smclab",
                     description="Sliding-mode controller comparison bench")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario")
    p_run.add_argument("scenario")
    p_run.add_argument("--out", default=".", help="output directory")
    p_run.add_argument("--dt", type=float, default=None, help="override step size (s)")
    p_run.add_argument("--duration", type=float, default=None, help="override duration (s)")
    p_run.set_defaults(func=_cmd_run)

    p_cmp = sub.add_parser("compare", help="run several controllers on one scenario")
    p_cmp.add_argument("scenario")
    p_cmp.add_argument("--controllers", required=True,
                       help="comma-separated list, e.g. smc,nsmc,ncsmc")
    p_cmp.add_argument("--out", default=".", help="output directory")
    p_cmp.add_argument("--dt", type=float, default=None, help="override step size (s)")
    p_cmp.add_argument("--duration", type=float, default=None, help="override duration (s)")
    p_cmp.set_defaults(func=_cmd_compare)

    p_val = sub.add_parser("validate", help="parse and validate without running")
    p_val.add_argument("scenario")
    p_val.set_defaults(func=_cmd_validate)

    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"smclab: {exc}", file=sys.stderr)
        return 1
    except (ScenarioError, ValueError) as exc:
        print(f"smclab: {exc}", file=sys.stderr)
        return 1
    except IntegrationDivergedError as exc:
        print(f"smclab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
