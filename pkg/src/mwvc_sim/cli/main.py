#!/usr/bin/env python3
"""
mwvc-sim CLI
Generate graphs, run the centralized / MPC / exact solvers, verify stored
reports and sweep parameters.
"""

from __future__ import annotations

import csv
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, Tuple

import click
from pydantic import ValidationError
from rich.console import Console

from mwvc_sim.cli.commands import RUN_FAILURES, SWEEP_HEADER, CLICommands, phase_scaling_bound
from mwvc_sim.cli.report import dump_report, load_report, write_report
from mwvc_sim.config import get_settings
from mwvc_sim.graph import GenSpec, WeightedGraph, generate
from mwvc_sim.utils.exceptions import (
    GraphFormatError,
    InvalidInputError,
    IterationLimitExceededError,
    InvariantViolationError,
    MemoryCapExceededError,
    OracleCapExceededError,
    PhaseCapExceededError,
    ReportSchemaError,
)
from mwvc_sim.utils.logging import get_logger, setup_logging

# human-readable output goes to stderr; stdout carries reports and CSV
console = Console(stderr=True)
logger = get_logger("cli")

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3
EXIT_ORACLE_CAP = 4

MODELS = ["gnp", "star", "path", "triangle", "power-law"]


@contextmanager
def exit_codes() -> Iterator[None]:
    """Translate library exceptions into the CLI's exit codes."""
    try:
        yield
    except OracleCapExceededError as e:
        console.print(f"❌ {e}", style="red")
        sys.exit(EXIT_ORACLE_CAP)
    except (
        InvariantViolationError,
        IterationLimitExceededError,
        PhaseCapExceededError,
        MemoryCapExceededError,
    ) as e:
        console.print(f"❌ {e}", style="red")
        sys.exit(EXIT_INVARIANT)
    except (InvalidInputError, ReportSchemaError, ValidationError) as e:
        console.print(f"❌ {e}", style="red")
        sys.exit(EXIT_USAGE)
    except (GraphFormatError, OSError) as e:
        console.print(f"❌ {e}", style="red")
        sys.exit(EXIT_IO)


def graph_options(func: Any) -> Any:
    """Generator flags shared by gen, run and sweep."""
    options = [
        click.option("--model", type=click.Choice(MODELS), help="Graph model"),
        click.option("--n", "n", type=int, help="Number of vertices"),
        click.option("--weights", default="uniform:1:1", show_default=True, help="uniform:LO:HI | exponential:MEAN | degree[:SCALE]"),
        click.option("--center-weight", type=float, help="Star center weight"),
        click.option("--leaf-weight", type=float, help="Star leaf weight"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def algorithm_options(func: Any) -> Any:
    """Solver flags shared by run and sweep."""
    options = [
        click.option("--algo", type=click.Choice(["central", "mpc", "exact"]), default="mpc", show_default=True),
        click.option("--epsilon", type=float, default=None, help="Epsilon in (0, 0.5)"),
        click.option("--preset", type=click.Choice(["paper", "practical"]), default="practical", show_default=True),
        click.option("--threshold-mode", type=click.Choice(["fixed-midpoint", "uniform-random"]), default="fixed-midpoint", show_default=True),
        click.option("--oracle", type=click.Choice(["off", "auto", "require"]), default="off", show_default=True),
        click.option("--alpha", type=float, help="Override the V^high exponent"),
        click.option("--bias-base", type=float, help="Override the estimator bias base"),
        click.option("--bias-growth", type=float, help="Override the per-iteration bias growth"),
        click.option("--bias-exponent", type=float, help="Override the bias exponent on m"),
        click.option("--stop-degree", type=float, help="Override the phase-loop stop degree (fixed rule)"),
        click.option("--iter-coeff", type=float, help="Override theta in I = floor(theta ln m)"),
        click.option("--repetitions", type=click.IntRange(min=1), help="Independent MPC copies; the lightest valid cover is kept"),
        click.option("--enforce-mem/--no-enforce-mem", default=None, help="Raise when a machine exceeds its word cap"),
        click.option("--workers", type=int, default=None, help="Threads for per-machine simulation"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _overrides(kwargs: Dict[str, Any]) -> Dict[str, Any]:
    keys = (
        "alpha", "bias_base", "bias_growth", "bias_exponent", "stop_degree", "iter_coeff",
        "enforce_mem", "repetitions",
    )
    out = {k: kwargs[k] for k in keys if kwargs.get(k) is not None}
    if "stop_degree" in out:
        out["stop_rule"] = "fixed"
    return out


def _epsilon(value: Optional[float]) -> float:
    eps = get_settings().solver.DEFAULT_EPSILON if value is None else value
    if not 0.0 < eps < 0.5:
        raise click.BadParameter(f"epsilon must lie in (0, 0.5), got {eps}", param_hint="--epsilon")
    return eps


def _spec_from_flags(
    model: Optional[str],
    n: Optional[int],
    avg_deg: Optional[float],
    weights: str,
    seed: int,
    center_weight: Optional[float],
    leaf_weight: Optional[float],
) -> GenSpec:
    if model is None or n is None:
        raise click.UsageError("--model and --n are required when no --input is given")
    return CLICommands.build_spec(model, n, avg_deg, weights, seed, center_weight, leaf_weight)


@click.group()
@click.version_option()
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose output")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]), help="Override MWVC_LOG_LEVEL")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, log_level: Optional[str]) -> None:
    """mwvc-sim: MPC simulator for (2+eps)-approximate minimum-weight vertex cover."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    setup_logging(log_level or ("INFO" if verbose else None))


@cli.command()
@graph_options
@click.option("--avg-deg", type=float, help="Target average degree (gnp, power-law)")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), required=True, help="Graph file to write")
@click.pass_context
def gen(
    ctx: click.Context,
    model: Optional[str],
    n: Optional[int],
    weights: str,
    center_weight: Optional[float],
    leaf_weight: Optional[float],
    avg_deg: Optional[float],
    seed: int,
    output: Path,
) -> None:
    """Generate a weighted graph file

    Examples:
        mwvc-sim gen --model gnp --n 1000 --avg-deg 32 --weights uniform:1:2 --seed 7 -o g.txt
        mwvc-sim gen --model star --n 5 -o star.txt
    """
    with exit_codes():
        spec = _spec_from_flags(model, n, avg_deg, weights, seed, center_weight, leaf_weight)
        graph = CLICommands.generate_graph(spec, output)
    click.echo(f"n={graph.num_vertices} m={graph.num_edges} avg_deg={graph.average_degree:.4f}")


@cli.command()
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Graph file")
@graph_options
@click.option("--avg-deg", type=float, help="Target average degree (gnp, power-law)")
@algorithm_options
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--emit-matching/--no-emit-matching", default=None, help="Store x_e per edge in the report")
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), help="Report file (stdout if omitted)")
@click.pass_context
def run(ctx: click.Context, input_path: Optional[Path], seed: int, emit_matching: Optional[bool], output: Optional[Path], **kwargs: Any) -> None:
    """Run one solver and write a RunReport

    Examples:
        mwvc-sim run --input g.txt --algo central --epsilon 0.1
        mwvc-sim run --model gnp --n 4096 --avg-deg 64 --algo mpc --seed 3 -o report.json
    """
    verbose = ctx.obj.get("verbose", False)
    epsilon = _epsilon(kwargs["epsilon"])
    with exit_codes():
        graph, spec = _load_or_generate(input_path, seed, kwargs)
        report = CLICommands.run(
            graph,
            CLICommands.describe_input(graph, input_path, spec),
            kwargs["algo"],
            epsilon,
            seed,
            preset=kwargs["preset"],
            threshold_mode=kwargs["threshold_mode"],
            oracle=kwargs["oracle"],
            emit_matching=emit_matching,
            overrides=_overrides(kwargs),
            workers=kwargs["workers"],
        )
        if output is None:
            click.echo(dump_report(report))
        else:
            write_report(report, output)

    if verbose or output is not None:
        console.print(CLICommands.summary_table(report))
    if report.failure is not None:
        console.print(f"❌ Run aborted: {report.failure}", style="red")
        sys.exit(EXIT_INVARIANT)
    if not report.checks_passed:
        failed = ", ".join(k for k, ok in report.checks.items() if not ok)
        console.print(f"❌ Checks failed: {failed}", style="red")
        sys.exit(EXIT_INVARIANT)


@cli.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("report_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--slack-factor", type=float, help="Feasibility slack (default 1 for central, 1+6eps for mpc)")
def verify(graph_file: Path, report_file: Path, slack_factor: Optional[float]) -> None:
    """Re-validate a stored report against its graph

    Examples:
        mwvc-sim verify g.txt report.json
        mwvc-sim verify g.txt report.json --slack-factor 1
    """
    with exit_codes():
        graph = CLICommands.load_input(graph_file)
        report = load_report(report_file)
        failures = CLICommands.verify(graph, report, slack_factor)
    if failures:
        for failure in failures:
            console.print(f"❌ {failure}", style="red")
        sys.exit(EXIT_INVARIANT)
    console.print("✅ Report verified", style="green")


@cli.command()
@graph_options
@click.option("--avg-deg", "avg_degs", type=float, multiple=True, required=True, help="Average degree grid (repeatable)")
@algorithm_options
@click.option("--seeds", type=int, default=10, show_default=True, help="Seeds per grid point")
@click.option("--seed-start", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True, help="Rows run concurrently")
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), help="CSV file (stdout if omitted)")
def sweep(avg_degs: Tuple[float, ...], seeds: int, seed_start: int, jobs: int, output: Optional[Path], **kwargs: Any) -> None:
    """Sweep average degree x seeds and emit one CSV row per run

    Examples:
        mwvc-sim sweep --model gnp --n 10000 --avg-deg 16 --avg-deg 64 --avg-deg 256 --seeds 10
    """
    epsilon = _epsilon(kwargs["epsilon"])
    if kwargs["model"] is None:
        kwargs["model"] = "gnp"
    if kwargs["n"] is None:
        raise click.UsageError("--n is required")
    grid = [(d, s) for d in avg_degs for s in range(seed_start, seed_start + seeds)]

    def one(point: Tuple[float, int]) -> Dict[str, Any]:
        degree, seed = point
        try:
            spec = CLICommands.build_spec(
                kwargs["model"], kwargs["n"], degree, kwargs["weights"], seed,
                kwargs["center_weight"], kwargs["leaf_weight"],
            )
            graph = generate(spec)
            report = CLICommands.run(
                graph,
                CLICommands.describe_input(graph, None, spec),
                kwargs["algo"],
                epsilon,
                seed,
                preset=kwargs["preset"],
                threshold_mode=kwargs["threshold_mode"],
                oracle=kwargs["oracle"],
                emit_matching=False,
                overrides=_overrides(kwargs),
                workers=kwargs["workers"],
            )
            return CLICommands.sweep_row(report, degree)
        except (*RUN_FAILURES, OracleCapExceededError) as e:
            logger.warning("sweep_row_failed", avg_deg=degree, seed=seed, error=str(e))
            row = {key: "" for key in SWEEP_HEADER}
            row.update(
                n=kwargs["n"], avg_deg=degree, seed=seed, algo=kwargs["algo"],
                epsilon=epsilon, preset=kwargs["preset"], checks_passed=False,
            )
            return row

    with exit_codes():
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                rows = list(pool.map(one, grid))
        else:
            rows = [one(point) for point in grid]

        handle = output.open("w", newline="", encoding="utf-8") if output else sys.stdout
        try:
            writer = csv.DictWriter(handle, fieldnames=SWEEP_HEADER)
            writer.writeheader()
            writer.writerows(rows)
        finally:
            if output:
                handle.close()

    console.print(CLICommands.phases_table(rows))
    over_budget = 0
    for row in rows:
        budget = phase_scaling_bound(float(row["avg_deg"]))
        if row["phases"] != "" and budget is not None and int(row["phases"]) > budget:
            over_budget += 1
    if over_budget:
        console.print(f"⚠️  {over_budget} runs exceed the phase budget", style="yellow")
    if not all(r["checks_passed"] for r in rows):
        console.print("❌ Some rows failed their checks", style="red")
        sys.exit(EXIT_INVARIANT)


def _load_or_generate(
    input_path: Optional[Path], seed: int, kwargs: Dict[str, Any]
) -> Tuple[WeightedGraph, Optional[GenSpec]]:
    if input_path is not None:
        return CLICommands.load_input(input_path), None
    spec = _spec_from_flags(
        kwargs["model"], kwargs["n"], kwargs["avg_deg"], kwargs["weights"], seed,
        kwargs["center_weight"], kwargs["leaf_weight"],
    )
    return generate(spec), spec


def main() -> None:
    """Main CLI entry point"""
    try:
        cli()
    except KeyboardInterrupt:
        console.print("\n👋 Interrupted", style="yellow")
        sys.exit(130)


if __name__ == "__main__":
    main()
