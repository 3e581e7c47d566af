"""Reference cases with known answers, checked against the command layer."""

from typing import Any, Dict, List

# Each case names a command, its arguments and the payload fields it must produce
REFERENCE_CASES = [
    {
        "command": "orbit",
        "args": ["1/7"],
        "expected": {"cycle": ["1/7", "2/7", "4/7"], "preperiod": 0, "period": 3},
        "description": "Period 3 cycle of the rabbit angle",
    },
    {
        "command": "orbit",
        "args": ["1/6"],
        "expected": {"prefix": ["1/6"], "cycle": ["1/3", "2/3"], "preperiod": 1},
        "description": "Preperiodic angle entering the basilica cycle",
    },
    {
        "command": "kneading",
        "args": ["1/3"],
        "expected": {"kneading": "(1*)", "period": 2},
        "description": "Kneading sequence of the basilica angle",
    },
    {
        "command": "kneading",
        "args": ["3/7"],
        "expected": {"kneading": "(10*)"},
        "description": "Kneading sequence of the airplane angle",
    },
    {
        "command": "address",
        "args": ["7/15"],
        "expected": {"address": [1, 2, 3, 4]},
        "description": "Address along the real axis",
    },
    {
        "command": "address",
        "args": ["11/31"],
        "expected": {"address": [1, 2, 5]},
        "description": "Primitive component in the 1/3 limb of the basilica",
    },
    {
        "command": "portrait",
        "args": ["1/7", "2/7"],
        "expected": {"kind": "satellite", "rotation": "1/3", "critical_arc": ["4/7", "1/7"]},
        "description": "Rabbit portrait",
    },
    {
        "command": "portrait",
        "args": ["5/7", "6/7"],
        "expected": {"kind": "satellite", "rotation": "2/3", "valence": 3},
        "description": "Co-rabbit portrait",
    },
    {
        "command": "portrait",
        "args": ["3/7", "4/7"],
        "expected": {
            "kind": "primitive",
            "classes": [["3/7", "4/7"], ["1/7", "6/7"], ["2/7", "5/7"]],
            "characteristic_arc": ["3/7", "4/7"],
        },
        "description": "Airplane portrait in canonical order",
    },
    {
        "command": "portrait",
        "args": ["1/7", "3/7"],
        "expected": {},
        "status": "error",
        "description": "An orbit point inside the arc rules out a portrait",
    },
    {
        "command": "bundle",
        "args": ["11/31"],
        "expected": {"period": 5, "kind": "primitive", "irregular_points": 6},
        "description": "Bundle of the left period 5 component",
    },
    {
        "command": "bundle",
        "args": ["1/3"],
        "expected": {"period": 2, "kind": "satellite", "irregular_points": 3},
        "description": "Bundle of the basilica",
    },
]


def get_reference_cases() -> List[Dict[str, Any]]:
    """Return the list of reference cases."""
    return REFERENCE_CASES


def get_case_by_index(index: int) -> Dict[str, Any]:
    """Get a specific reference case by index."""
    if 0 <= index < len(REFERENCE_CASES):
        return REFERENCE_CASES[index]
    else:
        raise IndexError(f"Case index {index} out of range (0-{len(REFERENCE_CASES)-1})")
