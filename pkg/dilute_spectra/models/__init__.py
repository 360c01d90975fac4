"""
Dilute Model Definitions
========================
One class per supported dilute A_L model.
"""

from functools import lru_cache

from .base_model import DiluteModel
from .dilute_a3 import DiluteA3
from .dilute_a4 import DiluteA4
from .dilute_a6 import DiluteA6

MODEL_CLASSES = {
    3: DiluteA3,
    4: DiluteA4,
    6: DiluteA6,
}


@lru_cache()
def get_dilute_model(L: int) -> DiluteModel:
    """
    Get the cached model instance for L.

    Args:
        L: Number of heights (3, 4 or 6)

    Returns:
        DiluteModel instance

    Raises:
        KeyError: if L is not supported
    """
    return MODEL_CLASSES[L]()


__all__ = [
    'DiluteModel',
    'DiluteA3',
    'DiluteA4',
    'DiluteA6',
    'MODEL_CLASSES',
    'get_dilute_model'
]
