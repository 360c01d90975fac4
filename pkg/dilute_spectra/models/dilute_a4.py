"""
Dilute A4 Model
===============
The L = 4 model: E7 masses, the thermal perturbation of the tricritical
Ising model. Carries the string data used by the Bethe solver.
"""

from typing import Dict, List, Tuple

from .base_model import DiluteModel


class DiluteA4(DiluteModel):
    """Dilute A4 in regime 2-."""

    def get_level(self) -> int:
        return 4

    def get_algebra(self) -> str:
        return "E7"

    def get_coxeter_number(self) -> int:
        return 18

    def get_table(self) -> List[Tuple[str, Tuple[int, ...]]]:
        return [
            ("1", (6,)),
            ("2", (1, 7)),
            ("3", (4, 8)),
            ("4", (5, 7)),
            ("5", (2, 6, 8)),
            ("6", (4, 6, 8)),
            ("7", (3, 5, 7, 9)),
        ]

    def get_parities(self) -> Dict[str, str]:
        return {
            "1": "odd",
            "2": "even",
            "3": "odd",
            "4": "even",
            "5": "even",
            "6": "odd",
            "7": "even",
        }

    def get_string_positions(self) -> Dict[str, Tuple[int, ...]]:
        # units of pi/20; a root at position m sits at |w| = x^{2m}
        return {
            "1": (-2, 2, 10),
            "2": (-7, 7),
            "3": (-6, 6, 10),
            "4": (-9, 9, -3, 3),
            "5": (-8, 8, -6, 6),
            "6": (10, -8, 8, -4, 4),
            "7": (-9, 9, -7, 7, -5, 5),
        }

    def get_bands(self) -> Dict[str, int]:
        return {"1": 1, "2": 2, "3": 2, "4": 2, "5": 3, "6": 3, "7": 4}

    def get_holes(self) -> Dict[str, int]:
        return {"1": 1}

    def get_string_groups(self) -> Dict[str, Tuple[Tuple[str, Tuple[int, ...]], ...]]:
        groups = {label: (("b", positions),) for label, positions in self.get_string_positions().items()}
        # the +-6 pair of the third string carries its own phase alpha
        groups["3"] = (("alpha", (-6, 6)), ("b", (10,)))
        return groups

    def get_reduced_powers(self) -> Dict[str, int]:
        return {"1": 2, "2": 2, "3": 3, "4": 4, "5": 4, "6": 5, "7": 6}

    def get_phase_powers(self) -> Dict[str, int]:
        return {"2": 2, "3": 2, "4": 4, "5": 5, "6": 5, "7": 4}

    def absent_in_regime_2plus(self) -> Tuple[str, ...]:
        return ("1", "3")
