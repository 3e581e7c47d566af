"""Verification pipeline across period and depth bounds, plus the reference cases."""

import sys
from dataclasses import dataclass
from typing import Any, Dict, List

from loguru import logger

from evaluation.evaluator import ReferenceCaseEvaluator
from evaluation.metrics import SweepMetrics, metrics_calculator
from evaluation.reference_cases import get_reference_cases
from lamination_invariants.atlas import Atlas
from lamination_invariants.verification import run_verification


@dataclass
class VerificationConfiguration:
    """Bounds for one verification run."""
    name: str
    max_period: int
    depth: int
    description: str


CONFIGURATIONS = [
    VerificationConfiguration("P4_D8", 4, 8, "Periods up to 4, solenoid depth 8"),
    VerificationConfiguration("P5_D10", 5, 10, "Periods up to 5, solenoid depth 10"),
    VerificationConfiguration("P6_D12", 6, 12, "Periods up to 6, solenoid depth 12"),
    VerificationConfiguration("P8_D16", 8, 16, "Periods up to 8, solenoid depth 16"),
]


class CensusPipeline:
    """Run every verification sweep for each configuration and score the reference cases."""

    def __init__(self, configurations: List[VerificationConfiguration] = None):
        self.configurations = configurations or CONFIGURATIONS
        self.evaluator = ReferenceCaseEvaluator()
        self.reference_cases = get_reference_cases()

    def run_full_evaluation(self, output: str = "evaluation/results.json") -> Dict[str, Any]:
        logger.info(f"Starting verification pipeline over {len(self.configurations)} configurations")

        sweep_results: Dict[str, List[SweepMetrics]] = {}
        latencies: Dict[str, float] = {}
        for config in self.configurations:
            logger.info(f"Running configuration: {config.description}")
            sweep_results[config.name], latencies[config.name] = self._run_configuration(config)

        summary = metrics_calculator.compile_results(sweep_results, latencies)
        metrics_calculator.print_comparison_report(summary)

        cases = [self.evaluator.evaluate_case(case) for case in self.reference_cases]
        results = {
            "configurations": summary,
            "reference_cases": {
                "accuracy": metrics_calculator.calculate_accuracy(cases),
                "correct": sum(1 for case in cases if case["is_correct"]),
                "total": len(cases),
                "failures": [case for case in cases if not case["is_correct"]],
            },
        }
        metrics_calculator.export_results_to_json(results, output)
        return results

    def _run_configuration(self, config: VerificationConfiguration):
        atlas, build_ms = metrics_calculator.measure_latency(Atlas.build, config.max_period)
        report, verify_ms = metrics_calculator.measure_latency(
            run_verification, config.max_period, config.depth, atlas
        )
        logger.info(f"{config.name}: atlas in {build_ms:.1f}ms, sweeps in {verify_ms:.1f}ms, status {report.status.value}")
        sweeps = [
            SweepMetrics(
                sweep=outcome.name,
                checked=outcome.checked,
                counterexamples=len(outcome.counterexamples),
                passed=outcome.passed,
                informational=outcome.informational,
                configuration=config.name,
            )
            for outcome in report.outcomes
        ]
        return sweeps, build_ms + verify_ms


def run_evaluation():
    """Main function to run the verification pipeline."""
    pipeline = CensusPipeline()
    results = pipeline.run_full_evaluation()
    failures = results["reference_cases"]["failures"]
    if failures:
        logger.error(f"{len(failures)} reference cases failed")
    return results


if __name__ == "__main__":
    outcome = run_evaluation()
    sys.exit(1 if outcome["reference_cases"]["failures"] else 0)
