"""Command-line entry points.

Exit codes: 0 success, 1 certificate violation (violating steps listed on
stderr), 2 configuration or schema error.
"""

from __future__ import annotations

import argparse
import sys

from .harness import (
    ConfigError,
    RunSummary,
    SchemaError,
    benchmark_study_configs,
    compare_schemes,
    parse_config,
    run,
    verify,
)


def _report(summaries: list[RunSummary]) -> int:
    code = 0
    for s in summaries:
        flags = (
            f"bound={s.bound_status} level-set={'ok' if s.level_set_ok else 'FAIL'} "
            f"energy-decay={'ok' if s.energy_decay_ok else 'FAIL'} "
            f"tail={'n/a' if s.tail_ok is None else ('ok' if s.tail_ok else 'FAIL')}"
        )
        print(f"[{s.problem_kind} alpha={s.alpha:g}] {flags}  ({s.wall_time:.1f}s)")
        if not s.certificates_ok:
            code = 1
            if s.bound_failing_steps:
                print(
                    f"  bound violated at steps: {list(s.bound_failing_steps)}",
                    file=sys.stderr,
                )
            if not s.level_set_ok:
                print(
                    f"  level set violated first at step {s.level_set_first_violation}",
                    file=sys.stderr,
                )
            if not s.energy_decay_ok:
                print(
                    f"  energy decay violated at {s.energy_decay_violations} steps",
                    file=sys.stderr,
                )
    return code


def _cmd_run(args) -> int:
    config = parse_config(args.config)
    return _report(run(config))


def _cmd_verify(args) -> int:
    return verify(args.certificate)


def _cmd_reproduce(args) -> int:
    code = 0
    for config in benchmark_study_configs(out_dir=args.out):
        code = max(code, _report(run(config)))
    return code


def _cmd_compare(args) -> int:
    config = parse_config(args.config)
    for row in compare_schemes(config):
        print(f"alpha={row['alpha']:g}  max final-state diff: {row['max_final_state_diff']:.3e}")
        for name, entry in row["schemes"].items():
            merit_txt = (
                f"  final merit {entry['final_merit']:.6e}" if "final_merit" in entry else ""
            )
            coords = " ".join(f"{v:.12g}" for v in entry["x_final"])
            print(f"  {name}: x_final = ({coords}){merit_txt}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="paretodyn",
        description=(
            "Simulate inertial multiobjective gradient dynamics with vanishing "
            "damping and check the decay certificates along the trajectories."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="integrate and certify one experiment config")
    p_run.add_argument("config", help="path to a flat key=value config file")
    p_run.set_defaults(fn=_cmd_run)

    p_verify = sub.add_parser("verify", help="recheck a serialized certificate CSV")
    p_verify.add_argument("certificate", help="path to a *_cert.csv file")
    p_verify.set_defaults(fn=_cmd_verify)

    p_repro = sub.add_parser(
        "reproduce-paper",
        help="run the full built-in study (2 problems x 4 damping levels)",
    )
    p_repro.add_argument("--out", default="benchmark", help="output directory")
    p_repro.set_defaults(fn=_cmd_reproduce)

    p_cmp = sub.add_parser(
        "compare-schemes", help="diff the three discretization schemes on one config"
    )
    p_cmp.add_argument("config", help="path to a flat key=value config file")
    p_cmp.set_defaults(fn=_cmd_compare)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, SchemaError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
