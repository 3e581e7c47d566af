"""Metrics calculation for verification runs."""

import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List

from loguru import logger
from rich.console import Console
from rich.table import Table


@dataclass
class SweepMetrics:
    """Container for one sweep of one verification run."""
    sweep: str
    checked: int
    counterexamples: int
    passed: bool
    informational: bool
    configuration: str


class MetricsCalculator:
    """Calculate metrics over verification runs and reference cases."""

    def __init__(self, console: Console = None):
        self.console = console or Console()

    def calculate_accuracy(self, evaluations: List[Dict[str, Any]]) -> float:
        """Average accuracy across evaluations."""
        if not evaluations:
            return 0.0
        return sum(result.get("accuracy", 0.0) for result in evaluations) / len(evaluations)

    def calculate_pass_rate(self, sweeps: List[SweepMetrics]) -> float:
        """Share of non-informational sweeps that passed."""
        binding = [sweep for sweep in sweeps if not sweep.informational]
        if not binding:
            return 0.0
        return sum(1 for sweep in binding if sweep.passed) / len(binding)

    def measure_latency(self, func, *args, **kwargs) -> tuple:
        """Measure function execution time in milliseconds."""
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        latency_ms = (time.perf_counter() - start_time) * 1000
        return result, latency_ms

    def compile_results(
        self,
        sweep_results: Dict[str, List[SweepMetrics]],
        latencies: Dict[str, float],
    ) -> Dict[str, Dict[str, float]]:
        """Compile sweep results per configuration."""
        summary = {}
        for config_name, sweeps in sweep_results.items():
            summary[config_name] = {
                "pass_rate": self.calculate_pass_rate(sweeps),
                "items_checked": sum(sweep.checked for sweep in sweeps),
                "counterexamples": sum(sweep.counterexamples for sweep in sweeps if not sweep.informational),
                "informational_findings": sum(sweep.counterexamples for sweep in sweeps if sweep.informational),
                "latency_ms": latencies.get(config_name, 0.0),
            }
        return summary

    def print_comparison_report(self, summary: Dict[str, Dict[str, float]]):
        """Print a table comparing the configurations."""
        table = Table(title="Verification report", show_header=True, header_style="bold")
        for column in ("Configuration", "Pass rate", "Checked", "Counterexamples", "Informational", "Latency (ms)"):
            table.add_column(column)
        for config_name, metrics in summary.items():
            table.add_row(
                config_name,
                f"{metrics['pass_rate'] * 100:.1f}%",
                str(metrics["items_checked"]),
                str(metrics["counterexamples"]),
                str(metrics["informational_findings"]),
                f"{metrics['latency_ms']:.1f}",
            )
        self.console.print(table)

        if summary:
            slowest = max(summary.items(), key=lambda item: item[1]["latency_ms"])
            self.console.print(f"Slowest: {slowest[0]} ({slowest[1]['latency_ms']:.1f}ms)")

    def export_results_to_json(self, summary: Dict[str, Any], filename: str) -> Path:
        """Export results to a JSON file."""
        path = Path(filename)
        path.write_text(json.dumps(summary, indent=2), encoding="utf-8")
        logger.info(f"Results exported to {path}")
        return path


# Global metrics calculator
metrics_calculator = MetricsCalculator()
