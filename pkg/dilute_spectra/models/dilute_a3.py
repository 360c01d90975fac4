"""
Dilute A3 Model
===============
The L = 3 model: E8 masses (magnetic perturbation of the Ising model).
"""

from typing import List, Tuple

from .base_model import DiluteModel


class DiluteA3(DiluteModel):
    """Dilute A3 in regime 2."""

    def get_level(self) -> int:
        return 3

    def get_algebra(self) -> str:
        return "E8"

    def get_coxeter_number(self) -> int:
        return 30

    def get_table(self) -> List[Tuple[str, Tuple[int, ...]]]:
        return [
            ("1", (1, 11)),
            ("2", (7, 13)),
            ("3", (2, 10, 12)),
            ("4", (6, 10, 14)),
            ("5", (3, 9, 11, 13)),
            ("6", (6, 8, 12, 14)),
            ("7", (4, 8, 10, 12, 14)),
            ("8", (5, 7, 9, 11, 13, 15)),
        ]
