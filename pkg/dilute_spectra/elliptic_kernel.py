"""
Elliptic Kernel
===============
Numerical evaluation of single and double q-Pochhammer products, the
elliptic function E(z, q) = (z, q/z, q; q) and the Jacobi theta function
theta_4, with an explicit truncation rule.

Every product stops once the current factor differs from 1 by less than the
tolerance and the geometric tail bound |q|^n max(|z|, 1) / (1 - |q|) has
dropped below it. If the term cap binds first the result is flagged: a
TruncationAccuracyWarning is issued, or TruncationError is raised in strict
mode.

All functions accept a scalar or a numpy array for their first argument and
vectorise over it.
"""

import logging
import math
import warnings
from typing import Iterable, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from .config import TRUNCATION_PRESETS, Settings, get_settings
from .exceptions import DomainError, TruncationAccuracyWarning, TruncationError

logger = logging.getLogger("dilute_spectra.elliptic_kernel")

ArrayLike = Union[complex, float, np.ndarray, Iterable[complex]]

_MACHINE_FLOOR = float(np.finfo(float).eps)


class Truncation(BaseModel):
    """Truncation policy for infinite products."""
    tol: float = Field(1e-13, gt=0, description="Absolute tail bound")
    max_terms: int = Field(1_000_000, ge=1, description="Hard cap on factors per product")
    max_nome: float = Field(0.98, gt=0, lt=1, description="Largest |q| accepted without override")
    allow_large_nome: bool = Field(False, description="Accept max_nome < |q| < 1")
    strict: bool = Field(False, description="Raise instead of warning when the cap binds")

    class Config:
        frozen = True

    @classmethod
    def from_settings(cls, settings: Optional[Settings] = None, preset: Optional[str] = None) -> "Truncation":
        """
        Build the truncation policy from settings or a named preset.

        Args:
            settings: Settings instance (defaults to get_settings())
            preset: Optional key of TRUNCATION_PRESETS

        Returns:
            Truncation instance
        """
        settings = settings or get_settings()
        if preset is not None:
            if preset not in TRUNCATION_PRESETS:
                raise DomainError(f"Unknown truncation preset '{preset}'")
            values = TRUNCATION_PRESETS[preset]
            return cls(tol=values["tol"], max_terms=values["max_terms"], max_nome=settings.max_nome)
        return cls(tol=settings.tol, max_terms=settings.max_terms, max_nome=settings.max_nome)

    def halved(self) -> "Truncation":
        """Same policy with half the tolerance."""
        return self.model_copy(update={"tol": self.tol / 2})


class KernelResult(BaseModel):
    """A product value together with its truncation record."""
    value: complex
    terms: int
    converged: bool


def default_truncation() -> Truncation:
    """Truncation built from the current settings."""
    return Truncation.from_settings()


def _resolve(tr: Optional[Truncation]) -> Truncation:
    return tr if tr is not None else default_truncation()


def _check_nome(q: complex, tr: Truncation, name: str = "q") -> float:
    if not np.isfinite(q):
        raise DomainError(f"Nome {name}={q} is not finite")
    aq = abs(q)
    if aq >= 1:
        raise DomainError(f"Nome |{name}|={aq:.6g} must be < 1")
    if aq > tr.max_nome and not tr.allow_large_nome:
        raise DomainError(
            f"Nome |{name}|={aq:.6g} exceeds {tr.max_nome}; set allow_large_nome to evaluate it"
        )
    return aq


def _as_array(z: ArrayLike) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Non-finite product argument")
    return arr, arr.ndim == 0


def _flag_cap(what: str, tr: Truncation) -> None:
    message = f"{what}: truncation cap of {tr.max_terms} factors reached before tol={tr.tol:g}"
    if tr.strict:
        raise TruncationError(message)
    logger.warning(message)
    warnings.warn(message, TruncationAccuracyWarning, stacklevel=3)


def _single_product(z: np.ndarray, q: complex, tr: Truncation, log: bool) -> Tuple[np.ndarray, int, bool]:
    """Core loop for prod_{n>=0} (1 - q^n z), or the sum of logs of the factors."""
    aq = abs(q)
    zmax = max(float(np.max(np.abs(z))) if z.size else 0.0, 1.0)
    floor = max(tr.tol, _MACHINE_FLOOR)
    acc = np.zeros_like(z) if log else np.ones_like(z)
    term = z.copy()
    qn = 1.0
    n = 0
    while n < tr.max_terms:
        factor = 1.0 - term
        if log:
            acc = acc + np.log(factor)
        else:
            acc = acc * factor
        n += 1
        qn *= aq
        small = float(np.max(np.abs(term))) if term.size else 0.0
        if small < floor and qn * zmax / (1.0 - aq) < tr.tol:
            return acc, n, True
        if aq == 0.0:
            return acc, n, True
        term = term * q
    return acc, n, False


def _single(z: ArrayLike, q: complex, tr: Optional[Truncation], log: bool, what: str):
    tr = _resolve(tr)
    _check_nome(q, tr)
    arr, scalar = _as_array(z)
    value, terms, converged = _single_product(arr, complex(q), tr, log)
    if not converged:
        _flag_cap(what, tr)
    return (complex(value) if scalar else value), terms, converged


def qpoch1(z: ArrayLike, q: complex, tr: Optional[Truncation] = None):
    """
    Single q-Pochhammer product (z; q)_inf = prod_{n>=0} (1 - q^n z).

    Args:
        z: Argument (scalar or array)
        q: Nome with |q| < 1
        tr: Truncation policy (defaults to settings)

    Returns:
        Product value (complex, or complex ndarray for array input)

    Example:
        qpoch1(0.5, 0.0)  # 0.5
    """
    return _single(z, q, tr, log=False, what="qpoch1")[0]


def qpoch1_detailed(z: complex, q: complex, tr: Optional[Truncation] = None) -> KernelResult:
    """Scalar (z; q)_inf with the number of factors used and the convergence flag."""
    value, terms, converged = _single(z, q, tr, log=False, what="qpoch1")
    return KernelResult(value=complex(value), terms=terms, converged=converged)


def log_qpoch1(z: ArrayLike, q: complex, tr: Optional[Truncation] = None):
    """Sum of principal logarithms of the factors of (z; q)_inf."""
    return _single(z, q, tr, log=True, what="log_qpoch1")[0]


def qpoch_many(zs: Iterable[complex], q: complex, tr: Optional[Truncation] = None) -> complex:
    """(z_1, ..., z_m; q)_inf as the product of the single products."""
    values = qpoch1(np.asarray(list(zs), dtype=complex), q, tr)
    return complex(np.prod(values))


def _double(z: ArrayLike, p: complex, q: complex, tr: Optional[Truncation], log: bool):
    tr = _resolve(tr)
    ap = _check_nome(p, tr, "p")
    aq = _check_nome(q, tr, "q")
    arr, scalar = _as_array(z)
    zmax = max(float(np.max(np.abs(arr))) if arr.size else 0.0, 1.0)
    acc = np.zeros_like(arr) if log else np.ones_like(arr)
    inner = arr.copy()
    pm = 1.0
    total = 0
    converged = False
    for _ in range(tr.max_terms):
        value, terms, ok = _single_product(inner, complex(q), tr, log)
        acc = acc + value if log else acc * value
        total += terms
        pm *= ap
        if not ok:
            break
        if ap == 0.0 or pm * zmax / ((1.0 - ap) * (1.0 - aq)) < tr.tol:
            converged = True
            break
        inner = inner * p
    if not converged:
        _flag_cap("qpoch2", tr)
    return (complex(acc) if scalar else acc), total, converged


def qpoch2(z: ArrayLike, p: complex, q: complex, tr: Optional[Truncation] = None):
    """
    Double product (z; p, q)_inf = prod_{m,n>=0} (1 - p^m q^n z).

    Args:
        z: Argument (scalar or array)
        p: First nome, |p| < 1
        q: Second nome, |q| < 1
        tr: Truncation policy

    Returns:
        Product value
    """
    return _double(z, p, q, tr, log=False)[0]


def log_qpoch2(z: ArrayLike, p: complex, q: complex, tr: Optional[Truncation] = None):
    """Sum of principal logarithms of the factors of (z; p, q)_inf."""
    return _double(z, p, q, tr, log=True)[0]


def _nonzero(z: ArrayLike) -> Tuple[np.ndarray, bool]:
    arr, scalar = _as_array(z)
    if np.any(arr == 0):
        raise DomainError("E(z, q) is undefined at z = 0 (pole of the q/z factor)")
    return arr, scalar


def elliptic_E(z: ArrayLike, q: complex, tr: Optional[Truncation] = None):
    """
    Elliptic function E(z, q) = prod_{n>=1} (1 - q^{n-1} z)(1 - q^n / z)(1 - q^n).

    Args:
        z: Non-zero argument (scalar or array)
        q: Nome with |q| < 1
        tr: Truncation policy

    Returns:
        E(z, q)
    """
    tr = _resolve(tr)
    arr, scalar = _nonzero(z)
    value = qpoch1(arr, q, tr) * qpoch1(q / arr, q, tr) * qpoch1(np.asarray(q, dtype=complex), q, tr)
    return complex(value) if scalar else value


def log_elliptic_E(z: ArrayLike, q: complex, tr: Optional[Truncation] = None):
    """Sum of principal logarithms of the factors of E(z, q)."""
    tr = _resolve(tr)
    arr, scalar = _nonzero(z)
    value = log_qpoch1(arr, q, tr) + log_qpoch1(q / arr, q, tr) + log_qpoch1(np.asarray(q, dtype=complex), q, tr)
    return complex(value) if scalar else value


def log_elliptic_E_power(c: Union[float, np.ndarray], log_x: float, period: float,
                         tr: Optional[Truncation] = None):
    """
    ln E(-x^c, x^period) for real exponents c, with x given by its logarithm.

    Every factor is built from its exponent, so the result stays finite when
    x itself underflows. Factors with a negative exponent contribute
    c ln x + log1p(x^{-c}) exactly.

    Args:
        c: Real exponent(s)
        log_x: ln x < 0
        period: Power of x giving the nome, > 0
        tr: Truncation policy

    Returns:
        Real logarithm (float, or float ndarray)
    """
    tr = _resolve(tr)
    if not (math.isfinite(log_x) and log_x < 0):
        raise DomainError(f"ln x={log_x} must be finite and negative")
    if not (math.isfinite(period) and period > 0):
        raise DomainError(f"period={period} must be positive")
    step = period * log_x
    _check_nome(math.exp(step), tr, "x^period")
    arr = np.asarray(c, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Non-finite exponent")

    # factors (1 + x^{c + Pn}) n >= 0, (1 + x^{Pn - c}) and (1 - x^{Pn}) n >= 1
    floor = math.log(max(tr.tol, _MACHINE_FLOOR)) + math.log(-math.expm1(step))
    acc = np.logaddexp(0.0, arr * log_x)
    converged = False
    n = 0
    while n < tr.max_terms:
        n += 1
        up = (arr + period * n) * log_x
        down = (period * n - arr) * log_x
        acc = acc + np.logaddexp(0.0, up) + np.logaddexp(0.0, down) + math.log(-math.expm1(n * step))
        if max(float(np.max(up)), float(np.max(down)), n * step) < floor:
            converged = True
            break
    if not converged:
        _flag_cap("log_elliptic_E_power", tr)
    return float(acc[0]) if scalar else acc


def theta4(u: Union[float, np.ndarray], q: float, tr: Optional[Truncation] = None):
    """
    Jacobi theta function in product form.

    theta_4(u, q) = prod_{n>=1} (1 - 2 q^{2n-1} cos 2u + q^{4n-2})(1 - q^{2n})

    Args:
        u: Real argument (scalar or array)
        q: Real nome, 0 <= q < 1
        tr: Truncation policy

    Returns:
        theta_4(u, q) (float, or float ndarray)
    """
    tr = _resolve(tr)
    q = float(q)
    if not math.isfinite(q) or q < 0:
        raise DomainError(f"theta4 nome q={q} must be a finite number in [0, 1)")
    _check_nome(q, tr)
    arr = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Non-finite theta4 argument")
    cos2u = np.cos(2.0 * arr)
    acc = np.ones_like(arr)
    q_odd = q  # q^{2n-1}
    q_sq = q * q
    converged = False
    n = 0
    while n < tr.max_terms:
        n += 1
        acc = acc * (1.0 - 2.0 * q_odd * cos2u + q_odd * q_odd) * (1.0 - q_odd * q)
        if q == 0.0 or 3.0 * q_odd * q_sq / (1.0 - q_sq) < tr.tol:
            converged = True
            break
        q_odd *= q_sq
    if not converged:
        _flag_cap("theta4", tr)
    return float(acc) if arr.ndim == 0 else acc
