"""
Dilute A6 Model
===============
The L = 6 model: E6 masses. Labels 1/1bar and 3/3bar are degenerate pairs
sharing one integer set.
"""

from typing import List, Tuple

from .base_model import DiluteModel


class DiluteA6(DiluteModel):
    """Dilute A6 in regime 2."""

    def get_level(self) -> int:
        return 6

    def get_algebra(self) -> str:
        return "E6"

    def get_coxeter_number(self) -> int:
        return 12

    def get_table(self) -> List[Tuple[str, Tuple[int, ...]]]:
        return [
            ("1", (4,)),
            ("1bar", (4,)),
            ("2", (1, 5)),
            ("3", (3, 5)),
            ("3bar", (3, 5)),
            ("4", (2, 4, 6)),
        ]
