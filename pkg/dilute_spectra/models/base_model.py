"""
Base Dilute Model
=================
Abstract base class for the dilute A_L models in regime 2.
"""

import math
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence, Tuple


class DiluteModel(ABC):
    """Base class for a dilute A_L model and its excitation tables."""

    def __init__(self):
        """
        Initialize the model.

        Derived integers follow regime 2: s = L + 2, r = 4(L + 1).
        """
        self.level = self.get_level()
        self.algebra = self.get_algebra()
        self.s = self.level + 2
        self.r = 4 * (self.level + 1)
        self.g = self.get_coxeter_number()

    @abstractmethod
    def get_level(self) -> int:
        """Return L (number of heights)."""
        pass

    @abstractmethod
    def get_algebra(self) -> str:
        """Return the exceptional algebra label of the scaling limit (e.g. 'E7')."""
        pass

    @abstractmethod
    def get_coxeter_number(self) -> int:
        """Return the Coxeter number g."""
        pass

    @abstractmethod
    def get_table(self) -> List[Tuple[str, Tuple[int, ...]]]:
        """Return (label, a_set) rows in excitation order."""
        pass

    def get_parities(self) -> Dict[str, str]:
        """Return the Z_2 parity of each excitation, where known."""
        return {}

    def get_string_positions(self) -> Dict[str, Tuple[int, ...]]:
        """Return string positions in units of pi/r' (r' = 20 for L = 4), where known."""
        return {}

    def get_bands(self) -> Dict[str, int]:
        """Return the power of w labelling each excitation band, where known."""
        return {}

    def get_holes(self) -> Dict[str, int]:
        """Return the number of holes on the unit circle for each excitation."""
        return {}

    def get_string_groups(self) -> Dict[str, Tuple[Tuple[str, Tuple[int, ...]], ...]]:
        """Return string positions grouped by shared phase."""
        return {}

    def get_reduced_powers(self) -> Dict[str, int]:
        """Return the power of a produced by the string factors as x -> 0."""
        return {}

    def get_phase_powers(self) -> Dict[str, int]:
        """Return k in the limit phase constraint b^{kN} = 1."""
        return {}

    def absent_in_regime_2plus(self) -> Sequence[str]:
        """Return labels of excitations not seen in regime 2+."""
        return ()

    @property
    def central_charge(self) -> float:
        return 1.0 - 6.0 / (self.level * (self.level + 1))

    @property
    def crossing_parameter(self) -> float:
        return math.pi * self.s / self.r

    def labels(self) -> List[str]:
        return [label for label, _ in self.get_table()]

    def has_strings(self) -> bool:
        return bool(self.get_string_positions())

    def string_data(self, label: str) -> Optional[dict]:
        """
        Collect the string ansatz data for one excitation.

        Args:
            label: Excitation label

        Returns:
            Dictionary with groups, holes, reduced_power and phase_power, or
            None if no string data is known for this model.
        """
        groups = self.get_string_groups()
        if label not in groups:
            return None
        return {
            "groups": groups[label],
            "holes": self.get_holes().get(label, 0),
            "reduced_power": self.get_reduced_powers()[label],
            "phase_power": self.get_phase_powers().get(label),
        }

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(L={self.level}, algebra={self.algebra})"
