"""
Model Registry
==============
Model parameters, nome frames and excitation tables of the dilute A_L
models in regime 2. All other modules take their constants from here.
"""

import hashlib
import math
from functools import lru_cache
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from .exceptions import DomainError

SUPPORTED_LEVELS = (3, 4, 6)


class ModelParams(BaseModel):
    """Derived integers and constants of one dilute A_L model."""

    L: int
    s: int
    r: int
    g: int
    lam: float = Field(alias="lambda")
    central_charge: float
    algebra: str

    class Config:
        frozen = True
        populate_by_name = True

    @model_validator(mode="after")
    def _consistent(self) -> "ModelParams":
        if self.L not in SUPPORTED_LEVELS:
            raise DomainError(f"Unsupported L={self.L}; expected one of {SUPPORTED_LEVELS}")
        if self.s != self.L + 2 or self.r != 4 * (self.L + 1):
            raise DomainError(f"s={self.s}, r={self.r} inconsistent with L={self.L}")
        if not 0.0 < self.lam < math.pi:
            raise DomainError(f"Crossing parameter {self.lam} outside (0, pi)")
        return self

    @property
    def theta_power(self) -> float:
        """Exponent r/(6s) of p in the theta_4 nome (5/9 for L = 4)."""
        return self.r / (6.0 * self.s)

    @property
    def isotropic_power(self) -> int:
        """Power of x giving the isotropic spectral point, w = x^{3s}."""
        return 3 * self.s


class NomeFrame(BaseModel):
    """
    The coupled nomes: p = e^{-eps}, x = e^{-pi^2/(r eps)}.

    log_x is carried alongside x; close to p = 1 the float x underflows to 0
    while log_x stays exact.
    """

    eps: float
    p: float
    x: float
    r: int
    log_x: Optional[float] = None

    class Config:
        frozen = True

    @field_validator("eps")
    @classmethod
    def _eps_positive(cls, v: float) -> float:
        if not (math.isfinite(v) and v > 0):
            raise DomainError(f"eps={v} must be positive and finite")
        return v

    @field_validator("p")
    @classmethod
    def _in_unit_interval(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise DomainError(f"nome {v} outside (0, 1)")
        return v

    @model_validator(mode="before")
    @classmethod
    def _fill_log_x(cls, data):
        if isinstance(data, dict) and data.get("log_x") is None and data.get("eps") and data.get("r"):
            data = {**data, "log_x": -math.pi ** 2 / (data["r"] * data["eps"])}
        return data

    @model_validator(mode="after")
    def _conjugate_nome(self) -> "NomeFrame":
        if not 0.0 <= self.x < 1.0 or self.log_x is None or not self.log_x < 0:
            raise DomainError(f"conjugate nome x={self.x} (ln x={self.log_x}) outside (0, 1)")
        return self

    def nome(self, power: float) -> float:
        """x raised to a power."""
        return self.x ** power


class SpectralPoint(BaseModel):
    """A spectral parameter u in (0, 3 lambda) and its multiplicative form w."""

    u: float
    w: float

    class Config:
        frozen = True


class ExcitationSpec(BaseModel):
    """One row of the excitation tables."""

    L: int
    j: int
    label: str
    a_set: Tuple[int, ...]
    parity: Optional[str] = None
    string_positions: Optional[Tuple[int, ...]] = None
    band: Optional[int] = None
    holes: int = 0

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_row(self) -> "ExcitationSpec":
        g = params_for(self.L).g
        bad = [a for a in self.a_set if not 0 < a < g]
        if bad:
            raise DomainError(f"Excitation {self.label}: integers {bad} outside (0, {g})")
        if self.parity is not None and self.parity not in ("even", "odd"):
            raise DomainError(f"Unknown parity {self.parity!r}")
        return self

    @property
    def string_length(self) -> int:
        return len(self.string_positions or ())

    @property
    def string_levels(self) -> Tuple[int, ...]:
        """Powers m of x with |w| = x^m for each string member."""
        return tuple(2 * pos for pos in self.string_positions or ())

    @property
    def odd_string(self) -> bool:
        """True iff the string holds the unpaired entry r/2."""
        half = params_for(self.L).r // 2
        return half in (self.string_positions or ())


@lru_cache()
def params_for(L: int) -> ModelParams:
    """
    Build the parameters for dilute A_L.

    Args:
        L: Number of heights, one of 3, 4, 6

    Returns:
        ModelParams

    Raises:
        DomainError: for unsupported L

    Example:
        params_for(4).r  # 20
    """
    if L not in SUPPORTED_LEVELS:
        raise DomainError(f"Unsupported L={L}; expected one of {SUPPORTED_LEVELS}")
    from .models import get_dilute_model

    model = get_dilute_model(L)
    return ModelParams(
        L=L,
        s=model.s,
        r=model.r,
        g=model.g,
        lam=model.crossing_parameter,
        central_charge=model.central_charge,
        algebra=model.algebra,
    )


def _log_x_from_eps(eps: float, r: int) -> float:
    return -math.pi ** 2 / (r * eps)


def _frame(eps: float, p: float, params: ModelParams) -> NomeFrame:
    log_x = _log_x_from_eps(eps, params.r)
    return NomeFrame(eps=eps, p=p, x=math.exp(log_x), r=params.r, log_x=log_x)


def frame_from_eps(eps: float, params: ModelParams) -> NomeFrame:
    """Frame from the deviation from criticality eps > 0."""
    if not (math.isfinite(eps) and eps > 0):
        raise DomainError(f"eps={eps} must be positive and finite")
    return _frame(eps, math.exp(-eps), params)


def frame_from_p(p: float, params: ModelParams) -> NomeFrame:
    """
    Frame from the elliptic nome p.

    Args:
        p: Nome in (0, 1)
        params: Model parameters (r enters x)

    Returns:
        NomeFrame with eps = -ln p and x = exp(-pi^2/(r eps))

    Raises:
        DomainError: if p is outside (0, 1)
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"p={p} outside (0, 1)")
    eps = -math.log(p)
    return _frame(eps, p, params)


def frame_from_x(x: float, params: ModelParams) -> NomeFrame:
    """Frame from the conjugate nome x in (0, 1)."""
    if not 0.0 < x < 1.0:
        raise DomainError(f"x={x} outside (0, 1)")
    eps = -math.pi ** 2 / (params.r * math.log(x))
    return NomeFrame(eps=eps, p=math.exp(-eps), x=x, r=params.r, log_x=math.log(x))


def spectral_point(u: float, frame: NomeFrame, params: ModelParams) -> SpectralPoint:
    """Spectral point w = exp(-2 pi u / eps) for 0 < u < 3 lambda."""
    if not 0.0 < u < 3.0 * params.lam:
        raise DomainError(f"u={u} outside (0, 3 lambda)")
    return SpectralPoint(u=u, w=math.exp(-2.0 * math.pi * u / frame.eps))


def isotropic_point(frame: NomeFrame, params: ModelParams) -> SpectralPoint:
    """
    Isotropic point u = 3 lambda / 2.

    In multiplicative form w = exp(-3 pi^2 s/(r eps)) = x^{3s}.
    """
    return SpectralPoint(u=1.5 * params.lam, w=frame.x ** params.isotropic_power)


@lru_cache()
def excitation_table(L: int) -> Tuple[ExcitationSpec, ...]:
    """
    Excitation rows for dilute A_L.

    Parities, string positions, bands and holes are filled for L = 4 only.
    """
    params_for(L)
    from .models import get_dilute_model

    model = get_dilute_model(L)
    parities = model.get_parities()
    strings = model.get_string_positions()
    bands = model.get_bands()
    holes = model.get_holes()
    return tuple(
        ExcitationSpec(
            L=L,
            j=index,
            label=label,
            a_set=a_set,
            parity=parities.get(label),
            string_positions=strings.get(label),
            band=bands.get(label),
            holes=holes.get(label, 0),
        )
        for index, (label, a_set) in enumerate(model.get_table(), start=1)
    )


def get_excitation(L: int, key: Union[int, str]) -> ExcitationSpec:
    """
    Look up an excitation by index j or by label.

    Raises:
        DomainError: if no such excitation exists
    """
    for spec in excitation_table(L):
        if spec.j == key or spec.label == str(key):
            return spec
    raise DomainError(f"No excitation {key!r} for L={L}")


def _canonical_row(spec: ExcitationSpec) -> str:
    a_set = ",".join(str(a) for a in spec.a_set)
    strings = ",".join(str(m) for m in spec.string_positions) if spec.string_positions else "-"
    band = str(spec.band) if spec.band is not None else "-"
    return f"{spec.label}:{a_set}:{spec.parity or '-'}:{strings}:{band}"


def canonical_table_text(L: int) -> str:
    """One line per excitation: label:a_set:parity:strings:band."""
    return "\n".join(_canonical_row(spec) for spec in excitation_table(L)) + "\n"


def table_checksum(L: int) -> str:
    """SHA-256 of the canonical table text."""
    return hashlib.sha256(canonical_table_text(L).encode("utf-8")).hexdigest()


class Perturbation(BaseModel):
    """A relevant perturbation of the c = 7/10 theory and its lattice realisation."""

    field: str
    weight: str
    lattice: str
    coupling: str

    class Config:
        frozen = True


TRICRITICAL_PERTURBATIONS: List[Perturbation] = [
    Perturbation(field="phi(2,2)", weight="3/80", lattice="not integrable", coupling="H"),
    Perturbation(field="phi(1,2)", weight="1/10", lattice="dilute A4 regime 2", coupling="1/J"),
    Perturbation(field="phi(2,1)", weight="7/16", lattice="dilute A3 regime 1", coupling="H3"),
    Perturbation(field="phi(1,3)", weight="3/5", lattice="ABF A4 regime III", coupling="D"),
]
