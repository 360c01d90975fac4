"""
Excitation Spectrum
===================
Closed-form excitation ratios, masses and correlation lengths of the
dilute A_L models in regime 2, together with the theta_4 representation,
the critical asymptotics, the E7 reference masses and the universal
amplitudes of the tricritical Ising class.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from .config import get_settings
from .elliptic_kernel import Truncation, elliptic_E, log_elliptic_E, log_elliptic_E_power, theta4
from .exceptions import ConsistencyError, DomainError, PoleError
from .model import (
    ExcitationSpec,
    ModelParams,
    NomeFrame,
    excitation_table,
    frame_from_p,
    params_for,
)

logger = logging.getLogger(__name__)

# |E| below this at a denominator factor is treated as a pole
POLE_TOL = 1e-14


class MassEntry(BaseModel):
    j: int
    label: str
    a_set: Tuple[int, ...]
    m: float
    xi: float
    parity: Optional[str] = None


class MassSpectrum(BaseModel):
    """Masses m_j and correlation lengths xi_j = 1/m_j at one nome."""

    L: int
    p: float
    method: str
    entries: List[MassEntry]

    def masses(self) -> List[float]:
        return [entry.m for entry in self.entries]

    def ratios(self) -> List[float]:
        """m_j / m_1 in table order."""
        m1 = self.entries[0].m
        return [entry.m / m1 for entry in self.entries]


class AmplitudeSet(BaseModel):
    """Universal amplitude combinations of the tricritical Ising class."""

    fs_xi1_sq: float
    R_xi_plus: float
    R_xi_minus: float
    xi0_ratio: float


def _exponents(spec: ExcitationSpec, params: ModelParams) -> List[Tuple[float, float]]:
    """Pairs (6sa/g, 6s(g - a)/g) of powers of x for each a."""
    unit = 6.0 * params.s / params.g
    return [(unit * a, unit * (params.g - a)) for a in spec.a_set]


def _ratio_arguments(spec: ExcitationSpec, w: complex, frame: NomeFrame, params: ModelParams):
    num, den, names = [], [], []
    for e1, e2 in _exponents(spec, params):
        for e in (e1, e2):
            c = frame.x ** e
            num.append(-c / w)
            den.append(-c * w)
            names.append(f"E(-x^{e:g} w)")
    return np.array(num, dtype=complex), np.array(den, dtype=complex), names


def _check_w(w: complex) -> complex:
    w = complex(w)
    if w == 0 or not np.isfinite(w):
        raise DomainError(f"Spectral variable w={w} must be finite and non-zero")
    return w


def excitation_ratio(spec: ExcitationSpec, w: complex, frame: NomeFrame,
                     params: Optional[ModelParams] = None, tr: Optional[Truncation] = None) -> complex:
    """
    Thermodynamic-limit eigenvalue ratio r_j(w).

    r_j(w) = prod_a w E(-x^{6sa/g}/w) E(-x^{6s(g-a)/g}/w)
                    / [E(-x^{6sa/g} w) E(-x^{6s(g-a)/g} w)]

    with nome x^{12s}.

    Args:
        spec: Excitation row
        w: Spectral variable (non-zero)
        frame: Nome frame
        params: Model parameters (defaults to those of spec.L)
        tr: Kernel truncation policy

    Returns:
        Complex ratio

    Raises:
        PoleError: if w sits on a zero of a denominator factor
    """
    params = params or params_for(spec.L)
    w = _check_w(w)
    nome = frame.x ** (12 * params.s)
    num, den, names = _ratio_arguments(spec, w, frame, params)
    den_values = elliptic_E(den, nome, tr)
    small = np.abs(den_values) < POLE_TOL
    if np.any(small):
        factor = names[int(np.argmax(small))]
        raise PoleError(f"Excitation {spec.label}: denominator factor {factor} vanishes at w={w}", factor=factor)
    num_values = elliptic_E(num, nome, tr)
    return complex(w ** len(spec.a_set) * np.prod(num_values / den_values))


def log_excitation_ratio(spec: ExcitationSpec, w: complex, frame: NomeFrame,
                         params: Optional[ModelParams] = None, tr: Optional[Truncation] = None) -> complex:
    """ln r_j(w) as a sum of principal logarithms of the factors."""
    params = params or params_for(spec.L)
    w = _check_w(w)
    nome = frame.x ** (12 * params.s)
    num, den, _ = _ratio_arguments(spec, w, frame, params)
    total = len(spec.a_set) * np.log(w)
    total += np.sum(log_elliptic_E(num, nome, tr)) - np.sum(log_elliptic_E(den, nome, tr))
    return complex(total)


def log_isotropic_ratio(spec: ExcitationSpec, frame: NomeFrame, params: Optional[ModelParams] = None,
                        tr: Optional[Truncation] = None) -> float:
    """
    ln r_j at the isotropic point w = x^{3s}, evaluated from ln x.

    With w folded into the exponents every factor is E(-x^c, x^{12s}) for
    real c, so the result is real and finite for every p in (0, 1).
    """
    params = params or params_for(spec.L)
    shift = params.isotropic_power
    exponents = np.array([e for pair in _exponents(spec, params) for e in pair])
    period = 12 * params.s
    total = len(spec.a_set) * shift * frame.log_x
    total += np.sum(log_elliptic_E_power(exponents - shift, frame.log_x, period, tr))
    total -= np.sum(log_elliptic_E_power(exponents + shift, frame.log_x, period, tr))
    return float(total)


def mass(spec: ExcitationSpec, frame: NomeFrame, params: Optional[ModelParams] = None,
         tr: Optional[Truncation] = None) -> float:
    """
    Mass gap m_j = -ln r_j at the isotropic point w = x^{3s}.

    Raises:
        ConsistencyError: if the gap is not positive and finite
    """
    value = -log_isotropic_ratio(spec, frame, params, tr)
    if not (math.isfinite(value) and value > 0):
        raise ConsistencyError(f"m_{spec.label} = {value} at eps={frame.eps:g} is not a positive gap")
    return value


def mass_theta4(spec: ExcitationSpec, p: float, params: Optional[ModelParams] = None,
                tr: Optional[Truncation] = None) -> float:
    """
    Mass in terms of theta_4 and the original nome p.

    m_j = 2 sum_a ln[theta_4(a pi/(2g) + pi/4, q) / theta_4(a pi/(2g) - pi/4, q)],
    q = p^{r/(6s)}.
    """
    params = params or params_for(spec.L)
    if not 0.0 < p < 1.0:
        raise DomainError(f"p={p} outside (0, 1)")
    q = p ** params.theta_power
    centres = np.array([a * math.pi / (2 * params.g) for a in spec.a_set])
    upper = theta4(centres + math.pi / 4, q, tr)
    lower = theta4(centres - math.pi / 4, q, tr)
    return float(2.0 * np.sum(np.log(upper / lower)))


def mass_theta4_L4(spec: ExcitationSpec, p: float, tr: Optional[Truncation] = None) -> float:
    """theta_4 mass formula of dilute A4 (nome p^{5/9}, arguments a pi/36 +- pi/4)."""
    if spec.L != 4:
        raise DomainError(f"mass_theta4_L4 needs an L=4 excitation, got L={spec.L}")
    return mass_theta4(spec, p, params_for(4), tr)


def trig_sum(spec: ExcitationSpec, params: Optional[ModelParams] = None) -> float:
    """sum_a sin(a pi / g)."""
    params = params or params_for(spec.L)
    return sum(math.sin(a * math.pi / params.g) for a in spec.a_set)


def leading_mass(spec: ExcitationSpec, p: float, params: Optional[ModelParams] = None) -> float:
    """Leading small-p behaviour 8 p^{r/(6s)} sum_a sin(a pi / g)."""
    params = params or params_for(spec.L)
    return 8.0 * p ** params.theta_power * trig_sum(spec, params)


def asymptotic_mass(spec: ExcitationSpec, p: float, params: Optional[ModelParams] = None) -> float:
    """
    Critical asymptotics of m_j.

    For L = 4 this is 8 p^{5/9} sum_a sin(a pi/18). For other L only the
    shape sum_a sin(a pi/g) is returned, which is meaningful for ratios.
    """
    params = params or params_for(spec.L)
    if params.L == 4:
        return leading_mass(spec, p, params)
    return trig_sum(spec, params)


def asymptotic_ratios(L: int) -> List[Tuple[str, float]]:
    """Limit ratios m_j / m_1 from the trigonometric sums."""
    params = params_for(L)
    table = excitation_table(L)
    base = trig_sum(table[0], params)
    return [(spec.label, trig_sum(spec, params) / base) for spec in table]


def e7_reference() -> List[Tuple[int, float, str]]:
    """
    The seven E7 masses in units of m_1, with their Z_2 parities.

    Returns:
        List of (j, value, parity)
    """
    c = math.cos
    pi = math.pi
    values = [
        1.0,
        2 * c(5 * pi / 18),
        2 * c(pi / 9),
        2 * c(pi / 18),
        4 * c(pi / 18) * c(5 * pi / 18),
        4 * c(pi / 9) * c(2 * pi / 9),
        4 * c(pi / 18) * c(pi / 9),
    ]
    return [(spec.j, value, spec.parity) for spec, value in zip(excitation_table(4), values)]


def amplitudes() -> AmplitudeSet:
    """Closed forms of f_s xi_1^2, R_xi^+, R_xi^- and xi_0^+/xi_0^-."""
    sqrt3 = math.sqrt(3.0)
    cos29 = math.cos(2 * math.pi / 9)
    cos518 = math.cos(5 * math.pi / 18)
    return AmplitudeSet(
        fs_xi1_sq=1.0 / (8.0 * sqrt3 * cos29),
        R_xi_plus=math.sqrt(10.0 / (9 ** 3 * sqrt3 * cos29)),
        R_xi_minus=math.sqrt(5.0 / (2 ** 3 * 9 ** 2 * sqrt3 * cos518 * math.sin(5 * math.pi / 9))),
        xi0_ratio=2.0 * cos518,
    )


def mass_spectrum(L: int, p: float, method: str = "auto", crossover: Optional[float] = None,
                  tr: Optional[Truncation] = None) -> MassSpectrum:
    """
    Masses and correlation lengths of every excitation at nome p.

    Args:
        L: Model level
        p: Nome in (0, 1)
        method: "theta", "product" or "auto" (theta below the crossover)
        crossover: Crossover nome for "auto" (defaults to settings)
        tr: Kernel truncation policy

    Returns:
        MassSpectrum
    """
    params = params_for(L)
    frame = frame_from_p(p, params)
    if method == "auto":
        crossover = get_settings().crossover_p if crossover is None else crossover
        method = "theta" if p < crossover else "product"
    if method not in ("theta", "product"):
        raise DomainError(f"Unknown mass method {method!r}")
    logger.debug(f"Mass spectrum L={L} p={p:g} via {method}")

    entries = []
    for spec in excitation_table(L):
        m = mass_theta4(spec, p, params, tr) if method == "theta" else mass(spec, frame, params, tr)
        entries.append(MassEntry(j=spec.j, label=spec.label, a_set=spec.a_set, m=m, xi=1.0 / m, parity=spec.parity))
    return MassSpectrum(L=L, p=p, method=method, entries=entries)


# Eigenvalue ratios of dilute A4 written out with b = -1: w^k times
# E(-x^e/w)/E(-x^e w) over "inv" and E(-x^e w)/E(-x^e/w) over "dir", nome x^72.
L4_EIGENVALUE_FORMS: Dict[int, Dict[str, Sequence[int]]] = {
    1: {"k": 1, "inv": (12,), "dir": (48,)},
    2: {"k": 2, "inv": (2, 14), "dir": (38, 50)},
    3: {"k": 2, "inv": (8, 16), "dir": (44, 52)},
    4: {"k": 2, "inv": (10, 14), "dir": (46, 50)},
    5: {"k": 3, "inv": (4, 12, 16), "dir": (40, 48, 52)},
    6: {"k": 3, "inv": (8, 12, 16), "dir": (44, 48, 52)},
    7: {"k": 4, "inv": (6, 10, 14, 18), "dir": (42, 46, 50, 54)},
}


def closed_form_ratio(j: int, w: complex, frame: NomeFrame, tr: Optional[Truncation] = None) -> complex:
    """
    Explicit dilute A4 eigenvalue ratio for excitation j.

    Agrees pointwise with excitation_ratio through E(q/z, q) = E(z, q).
    """
    if j not in L4_EIGENVALUE_FORMS:
        raise DomainError(f"No closed form for excitation {j}")
    w = _check_w(w)
    form = L4_EIGENVALUE_FORMS[j]
    nome = frame.x ** 72
    inv = np.array([-frame.x ** e for e in form["inv"]], dtype=complex)
    direct = np.array([-frame.x ** e for e in form["dir"]], dtype=complex)
    value = w ** form["k"]
    value *= np.prod(elliptic_E(inv / w, nome, tr) / elliptic_E(inv * w, nome, tr))
    value *= np.prod(elliptic_E(direct * w, nome, tr) / elliptic_E(direct / w, nome, tr))
    return complex(value)


def present_in_regime(spec: ExcitationSpec, regime: str = "2-") -> bool:
    """
    Whether the excitation is seen in the given regime.

    Regime 2- carries every excitation. In regime 2+ the odd L = 4
    excitations 1 and 3 are not seen.
    """
    if regime not in ("2-", "2+", "2"):
        raise DomainError(f"Unknown regime {regime!r}")
    if regime != "2+":
        return True
    from .models import get_dilute_model

    return spec.label not in get_dilute_model(spec.L).absent_in_regime_2plus()
