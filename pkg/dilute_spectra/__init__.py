"""
Dilute Spectra Package
======================
Excitation spectra of the dilute A_L lattice models in regime 2:
elliptic product kernel, closed-form masses, identity verification and
a finite-size Bethe ansatz solver.
"""

__version__ = "1.0.0"

from .config import get_settings, setup_logging
from .elliptic_kernel import Truncation, elliptic_E, qpoch1, qpoch2, theta4
from .model import (
    ExcitationSpec,
    ModelParams,
    NomeFrame,
    excitation_table,
    frame_from_eps,
    frame_from_p,
    frame_from_x,
    get_excitation,
    isotropic_point,
    params_for,
    table_checksum,
)
from .spectrum import (
    amplitudes,
    closed_form_ratio,
    excitation_ratio,
    mass,
    mass_spectrum,
    mass_theta4,
)
from .verifier import run_suite
from .bethe import BetheSolver, BetheState, StringAnsatz

__all__ = [
    'get_settings',
    'setup_logging',
    'Truncation',
    'elliptic_E',
    'qpoch1',
    'qpoch2',
    'theta4',
    'ExcitationSpec',
    'ModelParams',
    'NomeFrame',
    'excitation_table',
    'frame_from_eps',
    'frame_from_p',
    'frame_from_x',
    'get_excitation',
    'isotropic_point',
    'params_for',
    'table_checksum',
    'amplitudes',
    'closed_form_ratio',
    'excitation_ratio',
    'mass',
    'mass_spectrum',
    'mass_theta4',
    'run_suite',
    'BetheSolver',
    'BetheState',
    'StringAnsatz'
]
