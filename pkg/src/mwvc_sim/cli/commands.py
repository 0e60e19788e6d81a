"""
CLI Commands Module
Command implementations behind the mwvc-sim CLI
"""

from __future__ import annotations

import math
import statistics
import time
from pathlib import Path
from typing import Any, Dict, Iterable, List, Literal, Optional, Tuple

from rich.table import Table

from mwvc_sim.central import ThresholdPolicy, iteration_guard, run_centralized
from mwvc_sim.cli.report import InputDescriptor, RunReport
from mwvc_sim.config import describe_settings, get_settings
from mwvc_sim.graph import GenSpec, WeightDist, WeightedGraph, generate, load_graph, save_graph
from mwvc_sim.mpc import MpcConfig, run_mpc
from mwvc_sim.oracle import (
    ExactResult,
    exact_mwvc,
    ratio_report,
    validate_cover,
    validate_fractional_matching,
)
from mwvc_sim.oracle.validators import approximation_bound
from mwvc_sim.utils.exceptions import (
    InvariantViolationError,
    IterationLimitExceededError,
    MemoryCapExceededError,
    OracleCapExceededError,
    PhaseCapExceededError,
)
from mwvc_sim.utils.logging import get_logger

logger = get_logger("cli")

OracleMode = Literal["off", "auto", "require"]

RUN_FAILURES = (
    InvariantViolationError,
    IterationLimitExceededError,
    MemoryCapExceededError,
    PhaseCapExceededError,
)

SWEEP_HEADER = [
    "n",
    "avg_deg",
    "seed",
    "algo",
    "epsilon",
    "preset",
    "phases",
    "rounds",
    "max_words_per_n",
    "cover_weight",
    "matching_value",
    "ratio_vs_matching",
    "ratio_vs_opt",
    "checks_passed",
]


def phase_scaling_bound(avg_degree: float) -> Optional[float]:
    """4 log2(log2 d) + 6, the desk-scale phase budget; None for d <= 2."""
    if avg_degree <= 2.0:
        return None
    return 4.0 * math.log2(math.log2(avg_degree)) + 6.0


class CLICommands:
    """Collection of CLI command implementations"""

    @staticmethod
    def build_spec(
        model: str,
        n: int,
        avg_deg: Optional[float],
        weights: str,
        seed: int,
        center_weight: Optional[float] = None,
        leaf_weight: Optional[float] = None,
    ) -> GenSpec:
        spec = GenSpec(
            model=model,  # type: ignore[arg-type]
            num_vertices=n,
            target_avg_degree=avg_deg,
            weight_dist=WeightDist.parse(weights),
            seed=seed,
            center_weight=center_weight,
            leaf_weight=leaf_weight,
        )
        spec.check()
        return spec

    @staticmethod
    def generate_graph(spec: GenSpec, output: Path) -> WeightedGraph:
        graph = generate(spec)
        with output.open("w", encoding="utf-8") as handle:
            save_graph(graph, handle)
        return graph

    @staticmethod
    def load_input(path: Path) -> WeightedGraph:
        with path.open("r", encoding="utf-8") as handle:
            return load_graph(handle)

    @staticmethod
    def describe_input(
        graph: WeightedGraph, path: Optional[Path] = None, spec: Optional[GenSpec] = None
    ) -> InputDescriptor:
        return InputDescriptor(
            path=str(path) if path is not None else None,
            gen_spec=spec.model_dump(mode="json") if spec is not None else None,
            num_vertices=graph.num_vertices,
            num_edges=graph.num_edges,
            average_degree=graph.average_degree,
        )

    @staticmethod
    def attach_oracle(graph: WeightedGraph, mode: OracleMode) -> Optional[ExactResult]:
        """Exact optimum per the oracle mode; ``require`` lets the cap error through."""
        if mode == "off":
            return None
        if mode == "auto" and graph.num_vertices > get_settings().oracle.AUTO_MAX_N:
            return None
        try:
            return exact_mwvc(graph)
        except OracleCapExceededError:
            if mode == "require":
                raise
            return None

    @staticmethod
    def run(
        graph: WeightedGraph,
        descriptor: InputDescriptor,
        algo: Literal["central", "mpc", "exact"],
        epsilon: float,
        seed: int,
        preset: str = "practical",
        threshold_mode: str = "fixed-midpoint",
        oracle: OracleMode = "off",
        emit_matching: Optional[bool] = None,
        overrides: Optional[Dict[str, Any]] = None,
        workers: Optional[int] = None,
    ) -> RunReport:
        """Run one algorithm and report it; invariant or cap failures yield a failed report.

        Oracle cap errors still propagate.
        """
        started = time.perf_counter()
        try:
            return CLICommands.run_checked(
                graph, descriptor, algo, epsilon, seed, preset, threshold_mode,
                oracle, emit_matching, overrides, workers,
            )
        except RUN_FAILURES as exc:
            logger.warning("run_aborted", algo=algo, seed=seed, error=str(exc))
            report = RunReport(
                algorithm=algo,
                input=descriptor,
                config={
                    "settings": describe_settings(),
                    "oracle": oracle,
                    "overrides": overrides or {},
                    **({"mpc": {"preset": preset}} if algo == "mpc" else {}),
                },
                seed=seed,
                epsilon=epsilon,
                checks={"completed": False},
                failure=f"{type(exc).__name__}: {exc}",
            )
            report.wall_time = time.perf_counter() - started
            return report.seal()

    @staticmethod
    def run_checked(
        graph: WeightedGraph,
        descriptor: InputDescriptor,
        algo: Literal["central", "mpc", "exact"],
        epsilon: float,
        seed: int,
        preset: str = "practical",
        threshold_mode: str = "fixed-midpoint",
        oracle: OracleMode = "off",
        emit_matching: Optional[bool] = None,
        overrides: Optional[Dict[str, Any]] = None,
        workers: Optional[int] = None,
    ) -> RunReport:
        """Run one algorithm on one graph and collect every check into a report."""
        settings = get_settings()
        emit = settings.report.EMIT_MATCHING if emit_matching is None else emit_matching
        started = time.perf_counter()
        config_echo: Dict[str, Any] = {"settings": describe_settings(), "oracle": oracle}

        if algo == "exact":
            exact = exact_mwvc(graph)
            check = validate_cover(graph, exact.opt_cover)
            report = RunReport(
                algorithm="exact",
                input=descriptor,
                config=config_echo,
                seed=seed,
                epsilon=epsilon,
                cover=list(exact.opt_cover),
                cover_size=len(exact.opt_cover),
                cover_weight=exact.opt_weight,
                opt_weight=exact.opt_weight,
                checks={"valid_cover": check.valid},
            )
            report.wall_time = time.perf_counter() - started
            return report.seal()

        exact = CLICommands.attach_oracle(graph, oracle)
        if algo == "central":
            policy = ThresholdPolicy(mode=threshold_mode, epsilon=epsilon, seed=seed)  # type: ignore[arg-type]
            config_echo["threshold_policy"] = policy.model_dump()
            result = run_centralized(graph, epsilon=epsilon, policy=policy)
            feasibility = validate_fractional_matching(graph, result.x)
            ratios = ratio_report(result, exact, epsilon, graph)
            checks = {
                "valid_cover": validate_cover(graph, result.cover).valid,
                "dual_feasible": feasibility.feasible,
                "iteration_guard": result.iterations <= iteration_guard(graph.max_degree, epsilon),
                "ratio": ratios.passed is not False,
            }
            report = RunReport(
                algorithm="central",
                input=descriptor,
                config=config_echo,
                seed=seed,
                epsilon=epsilon,
                cover=list(result.cover),
                cover_size=len(result.cover),
                cover_weight=result.cover_weight,
                matching_value=result.matching_value,
                iterations=result.iterations,
                feasibility=feasibility,
                checks=checks,
            )
        else:
            config = MpcConfig.from_preset(preset, epsilon, seed, **(overrides or {}))  # type: ignore[arg-type]
            config_echo["mpc"] = config.model_dump()
            result = run_mpc(graph, config, workers=workers)
            feasibility = validate_fractional_matching(
                graph, result.x, slack_factor=1.0 + 6.0 * epsilon
            )
            ratios = ratio_report(result, exact, epsilon, graph)
            checks = {
                "valid_cover": validate_cover(graph, result.cover).valid,
                "sparsification": result.sparsification_ok,
                "near_feasible": feasibility.feasible,
                "ratio_certificate": result.certificate.ratio_certificate_ok,
                "memory": all(r.checks.get("memory", True) for r in result.phase_records),
                "ratio": ratios.passed is not False,
            }
            n = max(graph.num_vertices, 1)
            report = RunReport(
                algorithm="mpc",
                input=descriptor,
                config=config_echo,
                seed=seed,
                epsilon=epsilon,
                cover=list(result.cover),
                cover_size=len(result.cover),
                cover_weight=result.cover_weight,
                matching_value=result.matching_value,
                iterations=result.central_iterations,
                phases=result.phases,
                rounds=result.mpc_rounds,
                max_machine_words=result.max_machine_words,
                max_machine_edges=result.max_machine_edges,
                max_words_per_n=result.max_machine_words / n,
                phase_records=result.phase_records,
                certificate=result.certificate,
                feasibility=feasibility,
                repetition=result.repetition,
                repetition_weights=result.repetition_weights,
                checks=checks,
            )

        report.opt_weight = ratios.opt_weight
        report.ratio_vs_matching = ratios.ratio_vs_matching
        report.ratio_vs_opt = ratios.ratio_vs_opt
        report.ratio_bound = ratios.bound
        if emit:
            report.matching = [float(v) for v in result.x]
        report.wall_time = time.perf_counter() - started
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            logger.warning("run_checks_failed", algo=algo, seed=seed, failed=failed)
        return report.seal()

    @staticmethod
    def verify(
        graph: WeightedGraph, report: RunReport, slack_factor: Optional[float] = None
    ) -> List[str]:
        """Re-run the validators on a stored report; returns the failures."""
        failures: List[str] = []
        if report.input.num_vertices != graph.num_vertices or report.input.num_edges != graph.num_edges:
            failures.append(
                f"graph mismatch: report has n={report.input.num_vertices} m={report.input.num_edges}, "
                f"file has n={graph.num_vertices} m={graph.num_edges}"
            )
            return failures

        cover_check = validate_cover(graph, report.cover)
        if not cover_check.valid:
            failures.append(f"cover leaves edge {cover_check.witness} uncovered")

        cover_weight = float(sum(graph.weights[v] for v in report.cover))
        if not math.isclose(cover_weight, report.cover_weight, rel_tol=1e-9, abs_tol=1e-12):
            failures.append(f"cover weight {report.cover_weight} does not match graph ({cover_weight})")

        eps = report.epsilon
        if report.matching is not None:
            factor = slack_factor
            if factor is None:
                factor = 1.0 + 6.0 * eps if report.algorithm == "mpc" else 1.0
            feasibility = validate_fractional_matching(graph, report.matching, slack_factor=factor)
            if not feasibility.feasible:
                failures.append(
                    f"matching infeasible at vertex {feasibility.worst_vertex} "
                    f"(slack {feasibility.worst_slack}, factor {factor})"
                )
            matching = float(sum(report.matching))
            if report.algorithm == "mpc" and (1.0 - 16.0 * eps) * cover_weight > 2.0 * matching * (1.0 + 1e-9):
                failures.append("ratio certificate (1-16eps) w(C) <= 2 W fails")

        if report.opt_weight is not None and report.algorithm != "exact" and report.opt_weight > 0:
            bound = approximation_bound(report.algorithm, eps)
            if cover_weight / report.opt_weight > bound + get_settings().oracle.RATIO_SLACK:
                failures.append(f"cover/OPT {cover_weight / report.opt_weight:.6f} exceeds {bound}")
        return failures

    @staticmethod
    def sweep_row(report: RunReport, avg_deg: float) -> Dict[str, Any]:
        mpc = report.config.get("mpc", {})
        return {
            "n": report.input.num_vertices,
            "avg_deg": avg_deg,
            "seed": report.seed,
            "algo": report.algorithm,
            "epsilon": report.epsilon,
            "preset": mpc.get("preset", ""),
            "phases": report.phases if report.phases is not None else "",
            "rounds": report.rounds if report.rounds is not None else "",
            "max_words_per_n": report.max_words_per_n if report.max_words_per_n is not None else "",
            "cover_weight": report.cover_weight if report.failure is None else "",
            "matching_value": report.matching_value if report.matching_value is not None else "",
            "ratio_vs_matching": report.ratio_vs_matching if report.ratio_vs_matching is not None else "",
            "ratio_vs_opt": report.ratio_vs_opt if report.ratio_vs_opt is not None else "",
            "checks_passed": report.checks_passed,
        }

    @staticmethod
    def summary_table(report: RunReport) -> Table:
        table = Table(title=f"{report.algorithm} run", show_header=True, header_style="bold magenta")
        table.add_column("Field", style="cyan", no_wrap=True)
        table.add_column("Value", style="green")
        rows: Iterable[Tuple[str, Any]] = (
            ("n / m", f"{report.input.num_vertices} / {report.input.num_edges}"),
            ("cover size", report.cover_size),
            ("cover weight", f"{report.cover_weight:.6g}"),
            ("matching value", _fmt(report.matching_value)),
            ("OPT", _fmt(report.opt_weight)),
            ("cover / matching", _fmt(report.ratio_vs_matching)),
            ("cover / OPT", _fmt(report.ratio_vs_opt)),
            ("bound", _fmt(report.ratio_bound)),
            ("phases / rounds", f"{_fmt(report.phases)} / {_fmt(report.rounds)}"),
            ("max words / n", _fmt(report.max_words_per_n)),
        )
        for name, value in rows:
            table.add_row(name, str(value))
        for name, ok in report.checks.items():
            table.add_row(f"check: {name}", "✅ pass" if ok else "❌ fail")
        return table

    @staticmethod
    def phases_table(rows: List[Dict[str, Any]]) -> Table:
        """Median phases per average degree, against the desk-scale budget."""
        table = Table(title="Phases vs average degree", show_header=True, header_style="bold magenta")
        for column in ("avg_deg", "runs", "median phases", "max phases", "budget", "within"):
            table.add_column(column, style="cyan" if column == "avg_deg" else None)
        by_degree: Dict[float, List[int]] = {}
        for row in rows:
            if row["phases"] != "":
                by_degree.setdefault(float(row["avg_deg"]), []).append(int(row["phases"]))
        for degree in sorted(by_degree):
            phases = by_degree[degree]
            budget = phase_scaling_bound(degree)
            within = budget is None or max(phases) <= budget
            table.add_row(
                f"{degree:g}",
                str(len(phases)),
                f"{statistics.median(phases):g}",
                str(max(phases)),
                "-" if budget is None else f"{budget:.2f}",
                "✅" if within else "❌",
            )
        return table


def _fmt(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


__all__ = ["CLICommands", "OracleMode", "RUN_FAILURES", "SWEEP_HEADER", "phase_scaling_bound"]
