from typing import Any

from schema.models import PresetName

# Sample sizes used along the n axis of the consistency experiments.
N_GRID = [150, 300, 500, 700]


def _ratio_grid(c: float) -> dict[str, Any]:
    return {"c": c, "n": N_GRID}


def _steps(stop: float, step: float) -> list[float]:
    count = round(stop / step)
    return [round(i * step, 10) for i in range(count + 1)]


PRESETS: dict[PresetName, dict[str, Any]] = {
    # Distinct factors, c = 10
    PresetName.A: {"name": "A", "strengths": [6.0, 5.0], "grid": _ratio_grid(10), "C": 11.0},
    PresetName.B: {"name": "B", "strengths": [10.0, 5.0], "grid": _ratio_grid(10), "C": 11.0},
    # Distinct factors close to the critical value, c = 1
    PresetName.C: {"name": "C", "strengths": [1.5], "grid": _ratio_grid(1), "C": 5.0},
    PresetName.D: {"name": "D", "strengths": [2.5, 1.5], "grid": _ratio_grid(1), "C": 5.0},
    # Two equal factors of swept strength
    PresetName.E: {
        "name": "E",
        "strengths": ["alpha", "alpha", 5.0],
        "grid": [[200, 800]],
        "alphas": _steps(2.5, 0.25),
        "C": 6.0,
    },
    PresetName.F: {
        "name": "F",
        "strengths": ["alpha", "alpha", 15.0],
        "grid": [[2000, 500]],
        "alphas": _steps(8.0, 0.5),
        "C": 9.9,
    },
    # Equal factors, c = 10
    PresetName.G: {"name": "G", "strengths": [6.0, 5.0, 5.0], "grid": _ratio_grid(10), "C": 9.9},
    PresetName.H: {"name": "H", "strengths": [10.0, 5.0, 5.0], "grid": _ratio_grid(10), "C": 9.9},
    # Equal factors close to the critical value, c = 1
    PresetName.I: {"name": "I", "strengths": [1.5, 1.5], "grid": _ratio_grid(1), "C": 5.0},
    PresetName.J: {"name": "J", "strengths": [2.5, 1.5, 1.5], "grid": _ratio_grid(1), "C": 5.0},
    # No factor
    PresetName.K: {"name": "K", "strengths": [], "grid": _ratio_grid(1), "C": 8.0},
    PresetName.K10: {"name": "K10", "strengths": [], "grid": _ratio_grid(10), "C": 15.0},
    # Single factor of swept strength
    PresetName.S025: {
        "name": "S025",
        "strengths": ["alpha"],
        "grid": [[200, 800]],
        "alphas": _steps(2.0, 0.1),
        "C": 5.5,
    },
    PresetName.S4: {
        "name": "S4",
        "strengths": ["alpha"],
        "grid": [[2000, 500]],
        "alphas": _steps(6.0, 0.25),
        "C": 9.0,
    },
}
