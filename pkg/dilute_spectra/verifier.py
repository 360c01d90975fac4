"""
Identity Verifier
=================
Numerical checks of the product identities, the auxiliary-function
recurrences and their solutions, the first-term eigenvalue assemblies and
the string phase equations of dilute A4.

Each identity is an equality of holomorphic functions, so it is checked at
scattered random points over several nomes with a tight tolerance.
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from .config import get_settings
from .elliptic_kernel import Truncation, elliptic_E, qpoch1, qpoch2, qpoch_many
from .exceptions import ConsistencyError, DomainError
from .model import frame_from_x, params_for
from .recurrences import Assembly, Powers, RecurrenceSide, SpectatorSide, get_identities
from .spectrum import L4_EIGENVALUE_FORMS, closed_form_ratio

logger = logging.getLogger(__name__)

DEFAULT_XS = (0.05, 0.1, 0.2)
DEFAULT_SAMPLES = 10
RECURRENCE_TOL = 1e-10
ASSEMBLY_TOL = 1e-9
POCH_TOL = 1e-10
# b departs from its x -> 0 value by at most O(x^LIMIT_ORDER) for a converged string
LIMIT_ORDER = 4
MAX_REDRAWS = 20
SPECTATOR_TOL = 1e-12
SPECTATOR_PHASES = (-1.0, 1j, complex(math.cos(0.7), math.sin(0.7)))


class IdentityCase(BaseModel):
    """One evaluated identity at one sample point."""

    name: str
    j: Optional[int] = None
    x: Optional[float] = None
    sample: complex
    lhs: complex
    rhs: complex
    deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.deviation < self.tol)


class CheckReport(BaseModel):
    """Cases of one check with its worst deviation."""

    name: str
    cases: List[IdentityCase] = []
    constant: Optional[complex] = None

    @property
    def passed(self) -> bool:
        return all(case.passed for case in self.cases)

    @property
    def worst(self) -> float:
        return max((case.deviation for case in self.cases), default=0.0)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {len(self.cases)} cases, worst deviation {self.worst:.3e}"


class SuiteReport(BaseModel):
    name: str
    reports: List[CheckReport] = []

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    @property
    def worst(self) -> float:
        return max((report.worst for report in self.reports), default=0.0)

    def failures(self) -> List[CheckReport]:
        return [report for report in self.reports if not report.passed]


def _relative(lhs: complex, rhs: complex) -> float:
    return float(abs(lhs - rhs) / max(1.0, abs(rhs)))


def _rng(seed: Optional[int]) -> np.random.Generator:
    return np.random.default_rng(get_settings().seed if seed is None else seed)


def _unit_samples(rng: np.random.Generator, count: int) -> np.ndarray:
    return np.exp(1j * rng.uniform(-math.pi, math.pi, count))


# Products over lists of powers of x

def _product(powers: Powers, u: complex, x: float, nome_power: int, sign: int = -1,
             tr: Optional[Truncation] = None) -> complex:
    if not powers:
        return 1.0 + 0.0j
    args = np.array([sign * x ** e * u for e in powers], dtype=complex)
    return complex(np.prod(qpoch1(args, x ** nome_power, tr)))


def evaluate_ratio(side: RecurrenceSide, u: complex, x: float, tr: Optional[Truncation] = None) -> complex:
    """Recurrence ratio R(u) of one auxiliary function."""
    return _product(side.ratio_num, u, x, 40, tr=tr) / _product(side.ratio_den, u, x, 40, tr=tr)


def evaluate_solution(side: RecurrenceSide, u: complex, x: float, tr: Optional[Truncation] = None) -> complex:
    """Product solution of one auxiliary function."""
    value = _product(side.s40_num, u, x, 40, tr=tr) / _product(side.s40_den, u, x, 40, tr=tr)
    return value * _product(side.s72_num, u, x, 72, tr=tr) / _product(side.s72_den, u, x, 72, tr=tr)


class DoubleProductSolution(BaseModel):
    """
    Solution of S(u) = R(u) S(x^{2s} u) / S(x^{4s} u) with S -> 1 as u -> 0.

    A ratio factor (c x^e u; x^{2r}) becomes
    (c x^e u, c x^{e+2s} u; x^{2r}, x^{12s}) / (c x^{e+6s} u, c x^{e+8s} u; x^{2r}, x^{12s}).
    """

    sign: int
    num: Tuple[int, ...]
    den: Tuple[int, ...]
    s: int = 6
    r: int = 20

    def evaluate(self, u: complex, x: float, tr: Optional[Truncation] = None) -> complex:
        p, q = x ** (2 * self.r), x ** (12 * self.s)

        def block(powers):
            if not powers:
                return 1.0 + 0.0j
            args = np.array([self.sign * x ** e * u for e in powers], dtype=complex)
            return complex(np.prod(qpoch2(args, p, q, tr)))

        return block(self.num) / block(self.den)


def solve_recurrence(ratio_num: Powers, ratio_den: Powers, sign: int = -1, s: int = 6, r: int = 20) -> DoubleProductSolution:
    """
    Solve an auxiliary-function recurrence as a double product.

    Args:
        ratio_num: Powers of x in the numerator factors of R
        ratio_den: Powers of x in the denominator factors of R
        sign: Coefficient sign c of every factor (c x^e u; x^{2r})
        s, r: Model integers fixing the shifts and nomes

    Returns:
        DoubleProductSolution, the unique solution tending to 1 at u = 0

    Example:
        solve_recurrence((12,), (28,), sign=1).num  # (12, 24, 64, 76)
    """
    up = (0, 2 * s)
    down = (6 * s, 8 * s)
    num = [e + d for e in ratio_num for d in up] + [e + d for e in ratio_den for d in down]
    den = [e + d for e in ratio_num for d in down] + [e + d for e in ratio_den for d in up]
    return DoubleProductSolution(sign=sign, num=tuple(sorted(num)), den=tuple(sorted(den)), s=s, r=r)


def _bracket(powers: Tuple[Powers, Powers], u: complex, x: float, tr: Optional[Truncation]) -> complex:
    num, den = powers
    return _product(num, u, x, 40, sign=1, tr=tr) / _product(den, u, x, 40, sign=1, tr=tr)


def _side_functions(j: int, side_name: str, N: int, tr: Optional[Truncation]) -> Tuple[Callable, Callable]:
    """Full solution and full ratio of one side, with the N-th power bracket when present."""
    identities = get_identities(j)
    side = getattr(identities, side_name)
    bracket = getattr(identities, f"bracket_{side_name}")
    if bracket is None:
        return (lambda u, x: evaluate_solution(side, u, x, tr),
                lambda u, x: evaluate_ratio(side, u, x, tr))
    base = solve_recurrence(*bracket, sign=1)

    def solution(u, x):
        return evaluate_solution(side, u, x, tr) * base.evaluate(u, x, tr) ** N

    def ratio(u, x):
        return evaluate_ratio(side, u, x, tr) * _bracket(bracket, u, x, tr) ** N

    return solution, ratio


def check_recurrence_solution(j: int, samples: Optional[Sequence[Tuple[complex, float]]] = None,
                              N: int = 2, tol: float = RECURRENCE_TOL, seed: Optional[int] = None,
                              tr: Optional[Truncation] = None) -> CheckReport:
    """
    Substitute the product solutions into their recurrences.

    The F side is evaluated at u = a and the G side at u = 1/a. For the
    hole case (j = 1) the N-th power bracket and its double-product
    solution are kept on both sides.

    A sample that lands on a product zero is replaced by a fresh draw, so
    every side carries one case per sample.

    Args:
        j: Excitation 1..7
        samples: (a, x) pairs; defaults to random unit-circle a over DEFAULT_XS
        N: Power of the bracket factor (j = 1 only)
        tol: Pass threshold on the relative deviation
        seed: Sampling seed (defaults to settings)

    Returns:
        CheckReport
    """
    rng = _rng(seed)
    if samples is None:
        samples = [(a, x) for x in DEFAULT_XS for a in _unit_samples(rng, DEFAULT_SAMPLES)]
    report = CheckReport(name=f"recurrence j={j}")
    for side_name in ("F", "G"):
        solution, ratio = _side_functions(j, side_name, N, tr)
        for a, x in samples:
            for _ in range(MAX_REDRAWS):
                u = a if side_name == "F" else 1.0 / a
                try:
                    lhs = solution(u, x)
                    rhs = ratio(u, x) * solution(x ** 12 * u, x) / solution(x ** 24 * u, x)
                except ZeroDivisionError:
                    lhs = rhs = complex("nan")
                if np.isfinite(lhs) and np.isfinite(rhs) and rhs != 0:
                    break
                logger.debug(f"Sample a={a} at x={x:g} sits on a product zero; redrawing")
                a = complex(_unit_samples(rng, 1)[0])
            else:
                raise ConsistencyError(f"No usable sample for {side_name}{j} at x={x:g}")
            report.cases.append(IdentityCase(
                name=f"{side_name}{j}", j=j, x=x, sample=a, lhs=lhs, rhs=rhs,
                deviation=_relative(lhs, rhs), tol=tol,
            ))
    logger.debug(report.summary())
    return report


def check_generic_solution(j: int, samples: Optional[Sequence[Tuple[complex, float]]] = None,
                           tol: float = RECURRENCE_TOL, seed: Optional[int] = None,
                           tr: Optional[Truncation] = None) -> CheckReport:
    """Compare each listed product solution with the double-product solution of its recurrence."""
    if samples is None:
        rng = _rng(seed)
        samples = [(a, x) for x in DEFAULT_XS for a in _unit_samples(rng, DEFAULT_SAMPLES)]
    identities = get_identities(j)
    report = CheckReport(name=f"generic j={j}")
    for side_name in ("F", "G"):
        side = getattr(identities, side_name)
        generic = solve_recurrence(side.ratio_num, side.ratio_den)
        for a, x in samples:
            u = a if side_name == "F" else 1.0 / a
            lhs = evaluate_solution(side, u, x, tr)
            rhs = generic.evaluate(u, x, tr)
            report.cases.append(IdentityCase(
                name=f"{side_name}{j}", j=j, x=x, sample=a, lhs=lhs, rhs=rhs,
                deviation=_relative(lhs, rhs), tol=tol,
            ))
    return report


def _spectator(side: SpectatorSide, arg: complex, x: float, tr: Optional[Truncation]) -> complex:
    """Generic solution of the alpha recurrence times the alpha prefactor."""
    alpha_part = solve_recurrence(side.ratio_num, side.ratio_den, sign=1).evaluate(arg, x, tr)
    prefactor = _product(side.prefactor_num, arg, x, 40, sign=1, tr=tr)
    return alpha_part * prefactor / _product(side.prefactor_den, arg, x, 40, sign=1, tr=tr)


def first_term(j: int, w: complex, x: float, b: complex = -1, alpha: Optional[complex] = None,
               tr: Optional[Truncation] = None) -> complex:
    """
    First term of Lambda_j / 3 with the product solutions substituted.

    The common F_0 G_0 content is left out. With alpha given (third
    excitation only) the auxiliary functions are rebuilt from the raw
    alpha-dependent recurrences, so the result must not move with alpha.
    """
    identities = get_identities(j)
    asm: Assembly = identities.assembly
    value = asm.sign * (w / b) ** asm.k

    def block(powers, arg):
        return _product(powers, arg, x, 40, sign=1, tr=tr)

    value *= block(asm.wb_num, w / b) * block(asm.bw_num, b / w)
    value /= block(asm.wb_den, w / b) * block(asm.bw_den, b / w)
    u = x ** 12 * w
    value *= evaluate_solution(identities.F, u, x, tr) * evaluate_solution(identities.G, 1.0 / u, x, tr)
    if alpha is not None:
        if identities.spectator_F is None or identities.spectator_G is None:
            raise DomainError(f"Excitation {j} has no spectator phase")
        value *= _spectator(identities.spectator_F, u / alpha, x, tr)
        value *= _spectator(identities.spectator_G, alpha / u, x, tr)
    return complex(value)


def check_assembly(j: int, samples: Optional[Sequence[complex]] = None, x: float = 0.1,
                   tol: float = ASSEMBLY_TOL, seed: Optional[int] = None,
                   alphas: Optional[Sequence[complex]] = None,
                   tr: Optional[Truncation] = None) -> CheckReport:
    """
    Divide the assembled first term by the closed-form eigenvalue ratio.

    The quotient must not depend on w. Its mean is reported as the
    report constant and each case measures the relative distance from it.
    With alphas (third excitation) the first term is also rebuilt at each
    spectator phase and compared with the alpha-free assembly.
    """
    if samples is None:
        rng = _rng(seed)
        radii = rng.uniform(0.5, 2.0, DEFAULT_SAMPLES)
        samples = radii * _unit_samples(rng, DEFAULT_SAMPLES)
    frame = frame_from_x(x, params_for(4))
    quotients = [first_term(j, w, x, tr=tr) / closed_form_ratio(j, w, frame, tr) for w in samples]
    constant = complex(np.mean(quotients))
    report = CheckReport(name=f"assembly j={j} x={x:g}", constant=constant)
    for w, quotient in zip(samples, quotients):
        report.cases.append(IdentityCase(
            name=f"assembly{j}", j=j, x=x, sample=w, lhs=quotient, rhs=constant,
            deviation=float(abs(quotient - constant) / abs(constant)), tol=tol,
        ))
    for alpha in alphas or ():
        for w in samples:
            moved = first_term(j, w, x, alpha=alpha, tr=tr)
            fixed = first_term(j, w, x, tr=tr)
            report.cases.append(IdentityCase(
                name=f"spectator{j}", j=j, x=x, sample=alpha, lhs=moved, rhs=fixed,
                deviation=float(abs(moved - fixed) / abs(fixed)), tol=SPECTATOR_TOL,
            ))
    logger.debug(f"{report.summary()} constant={constant:.12g}")
    return report


def check_poch_identities(samples: int = 20, tol: float = POCH_TOL, seed: Optional[int] = None,
                          tr: Optional[Truncation] = None) -> CheckReport:
    """
    Product identities used throughout the perturbation argument.

    (z;p)/(zp;p) = 1 - z
    (z;p,q)/(zp;p,q) = (z;q)
    (zq/p;p,q)/(z;p,q) = (zq/p;q)/(z;p)
    E(z,q) = (z, q/z, q; q)
    """
    rng = _rng(seed)
    report = CheckReport(name="poch identities")
    for _ in range(samples):
        z = complex(rng.uniform(0.1, 2.0) * np.exp(1j * rng.uniform(-math.pi, math.pi)))
        p, q = rng.uniform(0.1, 0.8, 2)
        pairs = {
            "single": (qpoch1(z, p, tr) / qpoch1(z * p, p, tr), 1 - z),
            "double": (qpoch2(z, p, q, tr) / qpoch2(z * p, p, q, tr), qpoch1(z, q, tr)),
            "shifted": (qpoch2(z * q / p, p, q, tr) / qpoch2(z, p, q, tr),
                        qpoch1(z * q / p, q, tr) / qpoch1(z, p, tr)),
            "triple": (elliptic_E(z, q, tr), qpoch_many([z, q / z, q], q, tr)),
        }
        for name, (lhs, rhs) in pairs.items():
            report.cases.append(IdentityCase(
                name=name, sample=z, lhs=lhs, rhs=rhs, deviation=_relative(lhs, rhs), tol=tol,
            ))
    return report


def _phase_ratio(j: int, b: complex, x: float, tr: Optional[Truncation]) -> complex:
    form = L4_EIGENVALUE_FORMS[j]
    nome = x ** 72
    value = 1.0 + 0.0j
    for e in form["inv"]:
        value *= elliptic_E(x ** e * b, nome, tr) / elliptic_E(x ** e / b, nome, tr)
    for e in form["dir"]:
        value *= elliptic_E(x ** e / b, nome, tr) / elliptic_E(x ** e * b, nome, tr)
    return complex(value)


def check_string_phase_equations(j: int, x: float, N: int = 4, b: complex = -1, partner: complex = -1,
                                 tol: float = RECURRENCE_TOL, tr: Optional[Truncation] = None) -> CheckReport:
    """
    Phase equations of the string roots in auxiliary-function form.

    For j = 1, 2, 3 the full equations [ratio(b)]^N = b^{kN} are checked,
    together with the link E(x^12 b/c, x^{2r-4s}) = E(x^12 c/b, x^{2r-4s})
    between b and its partner c (the hole for j = 1, alpha for j = 3). For
    j = 4..7 only the x -> 0 constraint b^{kN} = 1 is available; it is held
    to k N x^4, the size of the finite-x shift of b.

    Args:
        j: Excitation 1..7
        x: Conjugate nome
        N: Lattice width
        b: String phase (the hole phase for j = 1)
        partner: Hole or alpha phase entering the link equation
    """
    from .models import get_dilute_model

    report = CheckReport(name=f"phases j={j} x={x:g}")
    if j in (1, 2, 3):
        k = L4_EIGENVALUE_FORMS[j]["k"]
        lhs = _phase_ratio(j, b, x, tr) ** N
        rhs = b ** (k * N)
        report.cases.append(IdentityCase(
            name=f"phase{j}", j=j, x=x, sample=b, lhs=lhs, rhs=rhs, deviation=_relative(lhs, rhs), tol=tol,
        ))
        if j in (1, 3):
            nome = x ** 16
            lhs = elliptic_E(x ** 12 * b / partner, nome, tr)
            rhs = elliptic_E(x ** 12 * partner / b, nome, tr)
            report.cases.append(IdentityCase(
                name=f"link{j}", j=j, x=x, sample=partner, lhs=lhs, rhs=rhs,
                deviation=_relative(lhs, rhs), tol=tol,
            ))
    else:
        k = get_dilute_model(4).get_phase_powers()[str(j)]
        lhs = complex(b) ** (k * N)
        limit_tol = max(tol, k * N * x ** LIMIT_ORDER)
        report.cases.append(IdentityCase(
            name=f"limit{j}", j=j, x=x, sample=b, lhs=lhs, rhs=1.0, deviation=_relative(lhs, 1.0), tol=limit_tol,
        ))
    return report


SUITES = ("poch", "recurrences", "assembly", "generic", "phases", "all")


def run_suite(name: str = "all", xs: Sequence[float] = DEFAULT_XS, seed: Optional[int] = None,
              tr: Optional[Truncation] = None) -> SuiteReport:
    """
    Run one verification suite.

    Args:
        name: One of SUITES
        xs: Conjugate nomes for the assembly and phase checks
        seed: Sampling seed

    Returns:
        SuiteReport
    """
    if name not in SUITES:
        raise ValueError(f"Unknown suite {name!r}; expected one of {SUITES}")
    suite = SuiteReport(name=name)
    excitations = range(1, 8)
    selected = SUITES[:-1] if name == "all" else (name,)

    if "poch" in selected:
        suite.reports.append(check_poch_identities(seed=seed, tr=tr))
    if "recurrences" in selected:
        for j in excitations:
            suite.reports.append(check_recurrence_solution(j, seed=seed, tr=tr))
    if "generic" in selected:
        for j in excitations:
            suite.reports.append(check_generic_solution(j, seed=seed, tr=tr))
    if "assembly" in selected:
        for j in excitations:
            for x in xs:
                alphas = SPECTATOR_PHASES if get_identities(j).spectator_F is not None else None
                suite.reports.append(check_assembly(j, x=x, seed=seed, alphas=alphas, tr=tr))
    if "phases" in selected:
        for j in excitations:
            for x in xs:
                suite.reports.append(check_string_phase_equations(j, x, tr=tr))

    status = "passed" if suite.passed else "FAILED"
    logger.info(f"Suite '{name}' {status}: {len(suite.reports)} checks, worst deviation {suite.worst:.3e}")
    return suite
