"""Command-line entry point: file inputs and flags in, report CSV out.

The report is the only thing written to standard output; diagnostics,
warnings and verbose matching go to the error stream, so redirecting
stdout captures exactly the CSV.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import TextIO

from .algorithms import parse_algorithm_catalog
from .errors import ConfigurationError, TufSimError
from .runner import (
    Uniform,
    default_architecture,
    emit_report_csv,
    parse_architecture_csv,
    parse_assignment_csv,
    run_sweep,
)
from .schedule import (
    Cadence,
    EventCalendar,
    generate_poisson_events,
    generate_ticks,
    load_event_dates,
    load_role_actions,
    merge_calendars,
)

DEFAULT_DEVICE = "Device_A"
DEFAULT_TARGET = "Target 1"


@dataclass(frozen=True)
class CliConfig:
    """Validated CLI inputs for one invocation."""

    algorithms_path: str
    start: date
    end: date
    cadence: Cadence
    events_path: str | None = None
    actions_path: str | None = None
    architecture_path: str | None = None
    assignment_path: str | None = None
    poisson_rate: float | None = None
    seed: int | None = None
    default_target: str = DEFAULT_TARGET
    output_path: str | None = None
    verbose: bool = False


class _Parser(argparse.ArgumentParser):
    # surface flag problems as ordinary errors instead of exiting the process
    def error(self, message: str) -> None:
        raise ConfigurationError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tufsim",
        description=(
            "Simulate the cumulative download bytes and verification cost of a "
            "multi-role update repository across signature algorithms."
        ),
    )
    parser.add_argument("--algorithms", required=True, metavar="PATH",
                        help="algorithm catalog CSV (required)")
    parser.add_argument("--events", metavar="PATH",
                        help="update event CSV with a Date column")
    parser.add_argument("--actions", metavar="PATH",
                        help="scripted role-change CSV")
    parser.add_argument("--arch", metavar="PATH",
                        help="architecture CSV; default is one instance of each role")
    parser.add_argument("--start", required=True, type=_parse_date, metavar="YYYY-MM-DD",
                        help="first simulated date (inclusive)")
    parser.add_argument("--end", required=True, type=_parse_date, metavar="YYYY-MM-DD",
                        help="last simulated date (inclusive)")
    parser.add_argument("--cadence", choices=[c.value for c in Cadence],
                        default=Cadence.DAILY.value,
                        help="timestamp cadence (default: daily)")
    parser.add_argument("--poisson-rate", type=float, metavar="FLOAT",
                        help="generate update events at this mean daily rate")
    parser.add_argument("--seed", type=int, metavar="INT",
                        help="seed for --poisson-rate event generation")
    parser.add_argument("--target", default=DEFAULT_TARGET, metavar="NAME",
                        help="target bound to events without one (default: 'Target 1')")
    parser.add_argument("--assignment", metavar="PATH",
                        help="per-role assignment CSV; default sweeps every catalog algorithm")
    parser.add_argument("--output", metavar="PATH",
                        help="write the report here instead of stdout")
    parser.add_argument("--verbose", action="store_true",
                        help="log event-date matches to stderr")
    return parser


def run_cli(
    argv: list[str] | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    """Parse flags, run the sweep, and write the report; 0 on success."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    try:
        config = _parse_config(argv)
        report = _execute(config, err)
        if config.output_path is not None:
            Path(config.output_path).write_text(report, encoding="utf-8")
        else:
            out.write(report)
    except TufSimError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 2
    return 0


def main() -> None:
    sys.exit(run_cli())


def _parse_date(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid date {text!r}; expected YYYY-MM-DD")


def _parse_config(argv: list[str] | None) -> CliConfig:
    args = build_parser().parse_args(argv)
    if args.events is not None and args.poisson_rate is not None:
        raise ConfigurationError("--events and --poisson-rate are mutually exclusive")
    if args.seed is not None and args.poisson_rate is None:
        raise ConfigurationError("--seed only applies when --poisson-rate is set")
    return CliConfig(
        algorithms_path=args.algorithms,
        events_path=args.events,
        actions_path=args.actions,
        architecture_path=args.arch,
        assignment_path=args.assignment,
        start=args.start,
        end=args.end,
        cadence=Cadence(args.cadence),
        poisson_rate=args.poisson_rate,
        seed=args.seed,
        default_target=args.target,
        output_path=args.output,
        verbose=args.verbose,
    )


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read '{path}': {exc.strerror or exc}") from None


def _execute(config: CliConfig, err: TextIO) -> str:
    catalog = parse_algorithm_catalog(_read(config.algorithms_path))
    if not catalog:
        raise ConfigurationError(
            f"algorithm catalog '{config.algorithms_path}' has no entries"
        )

    if config.architecture_path is not None:
        arch = parse_architecture_csv(
            _read(config.architecture_path), device_name=DEFAULT_DEVICE
        )
    else:
        arch = default_architecture(DEFAULT_DEVICE)

    calendar = EventCalendar()
    if config.events_path is not None:
        calendar = load_event_dates(_read(config.events_path), config.default_target)
    elif config.poisson_rate is not None:
        calendar = generate_poisson_events(
            config.poisson_rate,
            config.start,
            config.end,
            config.seed if config.seed is not None else 0,
            config.default_target,
        )
    if config.actions_path is not None:
        calendar = merge_calendars(calendar, load_role_actions(_read(config.actions_path)))

    ticks = generate_ticks(config.start, config.end, config.cadence)

    if config.verbose:
        event_dates = {day for day, _ in calendar.update_events}
        for tick in ticks:
            if tick.sub_index == 0 and tick.date in event_dates:
                print(f"- match {tick.date.isoformat()}", file=err)

    if config.assignment_path is not None:
        label = Path(config.assignment_path).stem
        assignments = [parse_assignment_csv(_read(config.assignment_path), label=label)]
    else:
        assignments = [Uniform(alg.name) for alg in catalog]

    results = run_sweep(arch, assignments, calendar, ticks, catalog)
    for result in results:
        for warning in result.warnings:
            print(f"warning: {warning}", file=err)
    return emit_report_csv(results)


if __name__ == "__main__":
    main()
