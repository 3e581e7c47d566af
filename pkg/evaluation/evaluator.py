"""Field-by-field evaluator for reference cases."""

from typing import Any, Callable, Dict, Optional

from loguru import logger

from lamination_invariants.cli import cmd_address, cmd_bundle, cmd_kneading, cmd_orbit, cmd_portrait
from lamination_invariants.schemas import CommandResult

COMMANDS: Dict[str, Callable[..., CommandResult]] = {
    "orbit": cmd_orbit,
    "address": cmd_address,
    "kneading": cmd_kneading,
    "portrait": cmd_portrait,
    "bundle": cmd_bundle,
}


class ReferenceCaseEvaluator:
    """Run a reference case through the command layer and compare the payload with its expectation."""

    def __init__(self, commands: Optional[Dict[str, Callable[..., CommandResult]]] = None):
        self.commands = commands or COMMANDS

    def evaluate_case(self, case: Dict[str, Any]) -> Dict[str, Any]:
        """
        Evaluate one reference case.

        Args:
            case: Dict with command, args, expected payload fields and an optional status

        Returns:
            Dict with accuracy (share of matching checks), is_correct and reasoning
        """
        try:
            result = self.commands[case["command"]](*case["args"])
        except Exception as e:
            logger.error(f"Error running case {case.get('command')} {case.get('args')}: {str(e)}")
            return {"accuracy": 0.0, "is_correct": False, "reasoning": f"command failed: {e}", "error": str(e)}

        expected_status = case.get("status", "ok")
        checks = {"status": result.status.value == expected_status}
        payload = result.payload[0] if result.payload else {}
        for key, value in case["expected"].items():
            checks[key] = payload.get(key) == value

        mismatched = [key for key, ok in checks.items() if not ok]
        reasoning = "all fields match" if not mismatched else f"mismatched fields: {', '.join(mismatched)}"
        return {
            "accuracy": sum(checks.values()) / len(checks),
            "is_correct": not mismatched,
            "reasoning": reasoning,
            "command": case["command"],
            "args": list(case["args"]),
        }
