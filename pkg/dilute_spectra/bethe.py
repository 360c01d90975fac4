"""
Bethe Ansatz Solver
===================
Finite-N Bethe equations of the dilute A_L models in regime 2, the string
ansatz for the dilute A4 excitations, damped Newton continuation in the
conjugate nome x, and the three-term transfer-matrix eigenvalue.

Roots are carried as continued logarithms v = ln w so that the fractional
powers w^{2s/r} keep one branch along a continuation. String members sit
exactly at w = b x^m; each string group contributes the product of its
members' equations, in which the factors between members of the group
cancel identically.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from scipy import optimize

from .config import Settings, get_settings
from .elliptic_kernel import Truncation, log_elliptic_E
from .exceptions import (
    AnsatzError,
    ContinuationError,
    DomainError,
    PoleError,
    SingularityError,
    StructureError,
)
from .model import ModelParams, NomeFrame, frame_from_x, get_excitation, isotropic_point, params_for
from .spectrum import log_excitation_ratio

logger = logging.getLogger(__name__)

# Limit configurations with a larger residual at the start nome are rejected
LIMIT_TOL = 0.1
# Distance of the hole from the nearest root of the reduced polynomial
HOLE_TOL = 1e-2
# String factors must reduce to a^p up to this relative change between two sample points
REDUCTION_TOL = 0.05
# String phases must stay this close to -1 in argument
PHASE_TOL = 0.1
FD_STEP = 1e-7


def _wrap(z: np.ndarray) -> np.ndarray:
    """Map imaginary parts into (-pi, pi]."""
    im = np.imag(z)
    wrapped = im - 2.0 * math.pi * np.ceil((im - math.pi) / (2.0 * math.pi))
    return np.real(z) + 1j * wrapped


class StringGroup(BaseModel):
    """String members sharing one phase."""

    name: str
    positions: Tuple[int, ...]

    @property
    def levels(self) -> Tuple[int, ...]:
        return tuple(2 * pos for pos in self.positions)


class StringAnsatz(BaseModel):
    """
    Root structure of one excitation.

    The ground state has no groups. Each group member sits at
    w = b x^m with m its level; the hole (first excitation) is a missing
    root on the unit circle at phase -1.
    """

    j: int = 0
    label: str = "0"
    groups: List[StringGroup] = []
    holes: int = 0
    hole_phase: complex = -1.0
    reduced_power: int = 0
    phase_power: Optional[int] = None

    @classmethod
    def ground(cls) -> "StringAnsatz":
        return cls()

    @classmethod
    def for_excitation(cls, j: int, L: int = 4) -> "StringAnsatz":
        """
        String ansatz of excitation j.

        Raises:
            DomainError: if no string data is known for this model
        """
        from .models import get_dilute_model

        spec = get_excitation(L, j)
        data = get_dilute_model(L).string_data(spec.label)
        if data is None:
            raise DomainError(f"No string data for excitation {j} of L={L}")
        return cls(
            j=spec.j,
            label=spec.label,
            groups=[StringGroup(name=name, positions=positions) for name, positions in data["groups"]],
            holes=data["holes"],
            reduced_power=data["reduced_power"],
            phase_power=data["phase_power"],
        )

    @property
    def is_ground(self) -> bool:
        return not self.groups

    @property
    def string_count(self) -> int:
        return sum(len(group.positions) for group in self.groups)

    def unit_count(self, N: int) -> int:
        return N - self.string_count

    def polynomial_degree(self, N: int) -> int:
        """Degree M = N - reduced_power of the x -> 0 polynomial for the unit roots."""
        return N - self.reduced_power


class BetheState(BaseModel):
    """Roots of one transfer-matrix eigenvalue."""

    N: int
    L: int
    ell: int
    x: float
    logs: List[complex]
    unit_count: int
    ansatz: StringAnsatz = StringAnsatz()
    converged: bool = False
    residual_norm: float = float("inf")

    @property
    def omega(self) -> complex:
        return complex(np.exp(1j * math.pi * self.ell / (self.L + 1)))

    @property
    def roots(self) -> List[complex]:
        return [complex(np.exp(v)) for v in self.logs]

    def phases(self) -> Dict[str, complex]:
        """Phase b of each string group."""
        out = {}
        index = self.unit_count
        log_x = math.log(self.x)
        for group in self.ansatz.groups:
            out[group.name] = complex(np.exp(self.logs[index] - group.levels[0] * log_x))
            index += len(group.positions)
        return out


class EigenvalueResult(BaseModel):
    Lambda: complex
    log_Lambda: complex
    term_values: List[complex]


def _check_N(N: int, settings: Settings) -> None:
    if N <= 0 or N % 2:
        raise DomainError(f"Lattice width N={N} must be a positive even integer")
    if N > settings.max_bethe_N:
        raise DomainError(f"N={N} exceeds the configured cap {settings.max_bethe_N}")


class _System:
    """Bethe equations in the reduced unknowns (unit-root logs, one log-phase per group)."""

    def __init__(self, N: int, params: ModelParams, ansatz: StringAnsatz, ell: int, x: float,
                 tr: Optional[Truncation]):
        self.N = N
        self.params = params
        self.ansatz = ansatz
        self.ell = ell
        self.x = x
        self.tr = tr
        self.kappa = 2.0 * params.s / params.r
        self.log_omega = 1j * math.pi * ell / (params.L + 1)
        self.nome = x ** (2 * params.r)
        self.c2 = x ** (2 * params.s)
        self.c4 = x ** (4 * params.s)
        self.n_unit = ansatz.unit_count(N)
        if self.n_unit < 0:
            raise DomainError(f"N={N} is too small for a string of length {ansatz.string_count}")

        # members of each group as (group index, level)
        self.member_group: List[int] = []
        self.member_level: List[int] = []
        for g_index, group in enumerate(ansatz.groups):
            for level in group.levels:
                self.member_group.append(g_index)
                self.member_level.append(level)
        self.size = self.n_unit + len(ansatz.groups)

        # pairs whose factors enter; pairs inside one group cancel
        owner = [-1 - i for i in range(self.n_unit)] + self.member_group
        rows, cols = [], []
        for i in range(N):
            for k in range(N):
                if i != k and not (owner[i] >= 0 and owner[i] == owner[k]):
                    rows.append(i)
                    cols.append(k)
        self.rows = np.array(rows, dtype=int)
        self.cols = np.array(cols, dtype=int)
        self.owner = np.array(owner, dtype=int)

    def full_logs(self, z: np.ndarray) -> np.ndarray:
        log_x = math.log(self.x)
        strings = [z[self.n_unit + g] + level * log_x for g, level in zip(self.member_group, self.member_level)]
        return np.concatenate([z[:self.n_unit], np.array(strings, dtype=complex)])

    def reduce(self, logs: Sequence[complex]) -> np.ndarray:
        logs = np.asarray(logs, dtype=complex)
        log_x = math.log(self.x)
        betas = []
        index = self.n_unit
        for group in self.ansatz.groups:
            betas.append(logs[index] - group.levels[0] * log_x)
            index += len(group.positions)
        return np.concatenate([logs[:self.n_unit], np.array(betas, dtype=complex)])

    def _lE(self, z: np.ndarray) -> np.ndarray:
        return log_elliptic_E(z, self.nome, self.tr)

    def member_residuals(self, v: np.ndarray) -> np.ndarray:
        """Unwrapped log residual of every root's equation."""
        w = np.exp(v)
        pair = np.zeros((self.N, self.N), dtype=complex)
        if self.rows.size:
            ratio = w[self.rows] / w[self.cols]
            terms = (self._lE(self.c2 * ratio) + self._lE(self.c4 / ratio)
                     - self._lE(self.c2 / ratio) - self._lE(self.c4 * ratio))
            if not np.all(np.isfinite(terms)):
                bad = int(np.argmax(~np.isfinite(terms)))
                pair_ids = (int(self.rows[bad]), int(self.cols[bad]))
                raise SingularityError(f"Roots {pair_ids} produce a vanishing factor", pair=pair_ids)
            pair[self.rows, self.cols] = terms
        own = self.N * (v + self._lE(self.c2 / w) - self._lE(self.c2 * w))
        if not np.all(np.isfinite(own)):
            raise SingularityError("A root sits on a zero of its own factor")
        total = self.kappa * np.sum(v)
        return self.log_omega + own - 1j * math.pi - total - pair.sum(axis=1)

    def residuals(self, z: np.ndarray) -> np.ndarray:
        raw = self.member_residuals(self.full_logs(z))
        grouped = [raw[:self.n_unit]]
        for g_index in range(len(self.ansatz.groups)):
            grouped.append(np.array([raw[self.owner == g_index].sum()]))
        return _wrap(np.concatenate(grouped))

    def jacobian(self, z: np.ndarray) -> np.ndarray:
        """Forward-difference Jacobian of the holomorphic residuals."""
        f0 = self.residuals(z)
        jac = np.empty((self.size, self.size), dtype=complex)
        for k in range(self.size):
            h = FD_STEP * max(1.0, abs(z[k]))
            shifted = z.copy()
            shifted[k] += h
            diff = self.residuals(shifted) - f0
            jac[:, k] = _wrap(diff) / h
        return jac


def _newton(system: _System, z0: np.ndarray, settings: Settings) -> Tuple[np.ndarray, float, bool]:
    """Damped Newton iteration with step halving."""
    z = z0.copy()
    f = system.residuals(z)
    norm = float(np.max(np.abs(f))) if f.size else 0.0
    for _ in range(settings.bethe_max_newton):
        if norm < settings.bethe_tol:
            return z, norm, True
        step = np.linalg.lstsq(system.jacobian(z), -f, rcond=None)[0]
        scale = 1.0
        for _ in range(settings.bethe_max_halvings):
            trial = z + scale * step
            try:
                f_trial = system.residuals(trial)
            except (SingularityError, FloatingPointError):
                scale *= 0.5
                continue
            trial_norm = float(np.max(np.abs(f_trial)))
            if trial_norm < norm:
                z, f, norm = trial, f_trial, trial_norm
                break
            scale *= 0.5
        else:
            break
    return z, norm, norm < settings.bethe_tol


def _root_fallback(system: _System, z0: np.ndarray, settings: Settings) -> Tuple[np.ndarray, float, bool]:
    """scipy hybrid root finder on the real and imaginary parts."""
    n = system.size

    def real_system(y):
        z = y[:n] + 1j * y[n:]
        try:
            f = system.residuals(z)
        except SingularityError:
            return np.full(2 * n, 1e6)
        return np.concatenate([f.real, f.imag])

    sol = optimize.root(real_system, np.concatenate([z0.real, z0.imag]), method="hybr", tol=settings.bethe_tol * 1e-2)
    z = sol.x[:n] + 1j * sol.x[n:]
    norm = float(np.max(np.abs(system.residuals(z))))
    return z, norm, norm < settings.bethe_tol


def _canonical_order(z: np.ndarray, n_unit: int) -> np.ndarray:
    order = np.argsort(np.angle(np.exp(z[:n_unit])), kind="stable")
    return np.concatenate([z[:n_unit][order], z[n_unit:]])


class BetheSolver:
    """
    Continuation solver for one model.

    Example:
        solver = BetheSolver(4)
        state = solver.solve(6, 0.05)
    """

    def __init__(self, L: int = 4, settings: Optional[Settings] = None, tr: Optional[Truncation] = None):
        self.params = params_for(L)
        self.settings = settings or get_settings()
        self.tr = tr

    # Residuals and eigenvalues

    def residuals(self, state: BetheState) -> np.ndarray:
        """Wrapped log residuals of all N equations; string members carry their group's residual."""
        system = _System(state.N, self.params, state.ansatz, state.ell, state.x, self.tr)
        reduced = system.residuals(system.reduce(state.logs))
        out = list(reduced[:system.n_unit])
        for g_index in system.member_group:
            out.append(reduced[system.n_unit + g_index])
        return np.array(out, dtype=complex)

    def transfer_eigenvalue(self, state: BetheState, w: complex) -> EigenvalueResult:
        """
        The three terms of Lambda(w) with nome x^{2r}.

        Raises:
            PoleError: if a denominator factor vanishes at w
        """
        p = self.params
        x = state.x
        nome = x ** (2 * p.r)
        kappa = 2.0 * p.s / p.r
        v = np.asarray(state.logs, dtype=complex)
        wj = np.exp(v)
        w = complex(w)
        if w == 0:
            raise DomainError("Spectral variable w must be non-zero")

        def lE(z):
            return log_elliptic_E(np.asarray(z, dtype=complex), nome, self.tr)

        x2, x4, x6, x8 = (x ** (k * p.s) for k in (2, 4, 6, 8))
        norm = lE(x4) + lE(x6)
        log_omega = 1j * math.pi * state.ell / (p.L + 1)
        dens = {
            "E(x^2s w_j/w)": lE(x2 * wj / w),
            "E(x^4s w_j/w)": lE(x4 * wj / w),
        }
        for name, values in dens.items():
            if not np.all(np.isfinite(values)):
                raise PoleError(f"Denominator factor {name} vanishes at w={w}", factor=name)

        N = state.N
        t1 = (log_omega + N * (lE(x4 / w) + lE(x6 / w) - norm)
              + np.sum((1.0 - kappa) * v + lE(x2 * w / wj) - dens["E(x^2s w_j/w)"]))
        t2 = (N * (math.log(x2) - np.log(w) + lE(w) + lE(x6 / w) - norm)
              + np.sum(v + lE(w / wj) + lE(x6 * wj / w) - dens["E(x^2s w_j/w)"] - dens["E(x^4s w_j/w)"]))
        t3 = (-log_omega + N * (math.log(x2) + lE(w) + lE(x2 / w) - norm)
              + np.sum(kappa * v + lE(x8 * wj / w) - dens["E(x^4s w_j/w)"]))
        logs = np.array([t1, t2, t3], dtype=complex)
        finite = logs[np.isfinite(logs)]
        if finite.size == 0:
            raise PoleError(f"All eigenvalue terms vanish or diverge at w={w}")
        top = finite[np.argmax(finite.real)].real
        terms = np.where(np.isfinite(logs), np.exp(logs - top), 0.0)
        log_lambda = top + np.log(np.sum(terms))
        values = [complex(t) for t in np.exp(logs)]
        return EigenvalueResult(Lambda=complex(np.exp(log_lambda)), log_Lambda=complex(log_lambda), term_values=values)

    # Limit configuration

    def _gamma(self, ansatz: StringAnsatz, betas: Sequence[complex], x: float, a: complex) -> complex:
        """ln of exp(kappa sum_string v) prod_string f_k(a) / a^p at unit-circle a."""
        kappa = 2.0 * self.params.s / self.params.r
        nome = x ** (2 * self.params.r)
        c2, c4 = x ** (2 * self.params.s), x ** (4 * self.params.s)
        total = 0.0 + 0.0j
        for beta, group in zip(betas, ansatz.groups):
            for level in group.levels:
                v = beta + level * math.log(x)
                wk = np.exp(v)
                total += kappa * v
                total += (log_elliptic_E(c2 * a / wk, nome, self.tr) + log_elliptic_E(c4 * wk / a, nome, self.tr)
                          - log_elliptic_E(c2 * wk / a, nome, self.tr) - log_elliptic_E(c4 * a / wk, nome, self.tr))
        return complex(total - ansatz.reduced_power * np.log(a))

    def _limit_candidates(self, N: int, ansatz: StringAnsatz, ell: int, x: float):
        """Every branch-consistent limit configuration for one sector."""
        kappa = 2.0 * self.params.s / self.params.r
        log_omega = 1j * math.pi * ell / (self.params.L + 1)
        M = ansatz.polynomial_degree(N)
        sigma_log = 0.0 if M % 2 == 0 else 1j * math.pi
        hole_log = complex(np.log(complex(ansatz.hole_phase))) if ansatz.holes else 0.0
        n_groups = len(ansatz.groups)
        lifts = np.array(np.meshgrid(*[range(5)] * n_groups, indexing="ij")).reshape(n_groups, -1).T if n_groups else [()]

        for lift in lifts:
            betas = [1j * math.pi + 2j * math.pi * t for t in lift]
            log_gamma = self._gamma(ansatz, betas, x, 1.0 + 0.0j)
            other = self._gamma(ansatz, betas, x, complex(np.exp(0.7j)))
            if abs(np.exp(other - log_gamma) - 1.0) > REDUCTION_TOL:
                raise AnsatzError(f"String factors of excitation {ansatz.label} do not reduce to a^{ansatz.reduced_power}")
            log_d = sigma_log + log_gamma - log_omega - hole_log
            for n in (0, 1):
                s_unit = (log_d + 2j * math.pi * n) / (1.0 - kappa)
                log_c = 1j * math.pi + kappa * s_unit + log_gamma - log_omega
                units = [(log_c + 2j * math.pi * k) / M for k in range(M)]
                if ansatz.holes:
                    distances = [abs(np.exp(u) - ansatz.hole_phase) for u in units]
                    nearest = int(np.argmin(distances))
                    if distances[nearest] > HOLE_TOL:
                        continue
                    units.pop(nearest)
                units = [complex(np.log(np.exp(u))) for u in units]
                phases = [np.exp(b) for b in betas]
                if any(abs(np.exp(u) - ph) < 1e-8 for u in units for ph in phases):
                    continue
                if units:
                    units[0] += 2j * math.pi * round(((s_unit - sum(units)) / (2j * math.pi)).real)
                z = np.array(units + betas, dtype=complex)
                yield z, (tuple(lift), n)

    def limit_roots(self, N: int, ansatz: Optional[StringAnsatz] = None, ell: Optional[int] = None,
                    x: Optional[float] = None) -> BetheState:
        """
        Roots of the x -> 0 limit configuration.

        Unit-circle roots (and the hole) solve a^M = C with M = N - p, where
        a^p is the power produced by the string factors. String phases start
        at -1. The fractional-power branch is fixed by trying each lift of
        the string phases and both roots of the product condition; the
        configuration with the smallest residual at the start nome is kept,
        preferring the largest |Lambda| at the isotropic point among those
        that satisfy the equations.

        Args:
            N: Even lattice width
            ansatz: String ansatz (ground state if omitted)
            ell: Sector 1..L, or None to scan every sector
            x: Nome at which candidates are scored (defaults to continuation_start)

        Returns:
            BetheState at nome x (not yet converged)

        Raises:
            AnsatzError: if no configuration satisfies the limit equations
        """
        _check_N(N, self.settings)
        ansatz = ansatz or StringAnsatz.ground()
        x = x or self.settings.continuation_start
        sectors = [ell] if ell is not None else list(range(1, self.params.L + 1))
        iso = isotropic_point(frame_from_x(x, self.params), self.params).w

        best = None
        for sector in sectors:
            system = _System(N, self.params, ansatz, sector, x, self.tr)
            if ansatz.polynomial_degree(N) <= 0:
                raise AnsatzError(f"N={N} too small for excitation {ansatz.label}")
            for z, branch in self._limit_candidates(N, ansatz, sector, x):
                try:
                    norm = float(np.max(np.abs(system.residuals(z)))) if z.size else 0.0
                except SingularityError:
                    continue
                if norm > LIMIT_TOL:
                    continue
                state = BetheState(N=N, L=self.params.L, ell=sector, x=x, logs=list(system.full_logs(z)),
                                   unit_count=system.n_unit, ansatz=ansatz, residual_norm=norm)
                magnitude = self.transfer_eigenvalue(state, iso).log_Lambda.real
                logger.debug(f"Limit candidate ell={sector} branch={branch} residual={norm:.2e} ln|Lambda|={magnitude:.6f}")
                if best is None or magnitude > best[0]:
                    best = (magnitude, state)
        if best is None:
            raise AnsatzError(f"No limit configuration of excitation {ansatz.label} satisfies the equations (N={N})")
        return best[1]

    # Continuation

    def _schedule(self, start: float, target: float) -> List[float]:
        steps = max(1, self.settings.continuation_steps)
        return list(np.linspace(start, target, steps + 1)[1:])

    def _solve_at(self, system: _System, z: np.ndarray) -> Tuple[np.ndarray, float, bool]:
        z_new, norm, ok = _newton(system, z, self.settings)
        if not ok:
            logger.debug(f"Newton stalled at x={system.x:.5g} (|F|={norm:.2e}); trying scipy root")
            z_new, norm, ok = _root_fallback(system, z_new, self.settings)
        return z_new, norm, ok

    def _check_structure(self, system: _System, z: np.ndarray) -> None:
        for g_index, group in enumerate(system.ansatz.groups):
            b = np.exp(z[system.n_unit + g_index])
            if abs(abs(b) - 1.0) > PHASE_TOL or abs(np.angle(-b)) > PHASE_TOL:
                raise StructureError(f"Phase of string group '{group.name}' drifted to {b:.6g} at x={system.x:.5g}")

    def solve(self, N: int, x: float, ansatz: Optional[StringAnsatz] = None, ell: Optional[int] = None,
              schedule: Optional[Sequence[float]] = None) -> BetheState:
        """
        Solve the Bethe equations at nome x by continuation from the limit.

        Args:
            N: Even lattice width
            x: Target conjugate nome
            ansatz: String ansatz (ground state if omitted)
            ell: Sector, or None to pick it from the limit configuration
            schedule: Increasing x values ending at the target

        Returns:
            Converged BetheState

        Raises:
            ContinuationError: if Newton fails below the step floor
            StructureError: if a string phase leaves -1
        """
        if not 0.0 < x < 1.0:
            raise DomainError(f"x={x} outside (0, 1)")
        ansatz = ansatz or StringAnsatz.ground()
        start = min(self.settings.continuation_start, x)
        state = self.limit_roots(N, ansatz, ell, start)
        ell = state.ell
        points = list(schedule) if schedule is not None else self._schedule(start, x)
        if not points or points[0] != start:
            points = [start] + points

        z = _System(N, self.params, ansatz, ell, start, self.tr).reduce(state.logs)
        current = None
        queue = list(points)
        norm = state.residual_norm
        while queue:
            target = queue[0]
            system = _System(N, self.params, ansatz, ell, target, self.tr)
            # string logs move with x at fixed phase, so z carries over unchanged
            z_new, norm, ok = self._solve_at(system, z)
            if ok:
                self._check_structure(system, z_new)
                z = _canonical_order(z_new, system.n_unit)
                current = target
                queue.pop(0)
                logger.debug(f"Continuation step x={target:.5g} converged (|F|={norm:.2e})")
                continue
            previous = current if current is not None else start
            step = target - previous
            if current is None or abs(step) / 2 < self.settings.continuation_floor:
                raise ContinuationError(f"Newton failed at x={target:.6g}", last_good_x=current)
            queue.insert(0, previous + step / 2)

        system = _System(N, self.params, ansatz, ell, x, self.tr)
        return BetheState(N=N, L=self.params.L, ell=ell, x=x, logs=list(system.full_logs(z)),
                          unit_count=system.n_unit, ansatz=ansatz, converged=True, residual_norm=norm)

    # Studies

    def ground_sector_scan(self, N: int, x: float) -> Tuple[BetheState, List[Tuple[int, float]]]:
        """
        Solve the ground state in every sector; keep the largest |Lambda| at the isotropic point.

        Returns:
            (best state, [(ell, ln|Lambda|) for each sector that converged])
        """
        iso = isotropic_point(frame_from_x(x, self.params), self.params).w
        records = []
        best = None
        for ell in range(1, self.params.L + 1):
            try:
                state = self.solve(N, x, ell=ell)
            except (AnsatzError, ContinuationError) as exc:
                logger.info(f"Ground state sector ell={ell} skipped: {exc}")
                continue
            magnitude = self.transfer_eigenvalue(state, iso).log_Lambda.real
            records.append((ell, magnitude))
            if best is None or magnitude > best[0]:
                best = (magnitude, state)
        if best is None:
            raise ContinuationError("No ground-state sector converged", last_good_x=None)
        logger.info(f"Ground state N={N} x={x:g} lies in sector ell={best[1].ell}")
        return best[1], records

    def measured_log_ratio(self, excited: BetheState, ground: BetheState) -> complex:
        """ln(Lambda_j / Lambda_0) at the isotropic point."""
        iso = isotropic_point(frame_from_x(excited.x, self.params), self.params).w
        return self.transfer_eigenvalue(excited, iso).log_Lambda - self.transfer_eigenvalue(ground, iso).log_Lambda

    def deviation(self, excited: BetheState, ground: BetheState) -> float:
        """|Re ln(Lambda_j/Lambda_0) - ln r_j| at the isotropic point."""
        frame = frame_from_x(excited.x, self.params)
        iso = isotropic_point(frame, self.params).w
        spec = get_excitation(self.params.L, excited.ansatz.j)
        closed = log_excitation_ratio(spec, iso, frame, self.params, self.tr).real
        return abs(self.measured_log_ratio(excited, ground).real - closed)

    def finite_size_study(self, j: int, Ns: Sequence[int], x: float) -> "FiniteSizeStudy":
        """Deviation from the closed form for each N, with the monotonicity flag."""
        ansatz = StringAnsatz.for_excitation(j, self.params.L)
        rows = []
        for N in Ns:
            ground, _ = self.ground_sector_scan(N, x)
            excited = self.solve(N, x, ansatz)
            rows.append(FiniteSizeRow(N=N, deviation=self.deviation(excited, ground), ell=excited.ell,
                                      residual=excited.residual_norm, phases=excited.phases()))
        study = FiniteSizeStudy(j=j, x=x, rows=rows)
        for N in study.flagged_steps():
            logger.warning(f"Excitation {j}: deviation grew at N={N} (x={x:g})")
        return study

    def string_constraints_check(self, state: BetheState):
        """Evaluate the phase equations of the excitation on a converged state."""
        from .verifier import check_string_phase_equations

        if state.ansatz.is_ground:
            raise DomainError("The ground state has no string phases")
        phases = state.phases()
        b = phases.get("b", -1.0)
        partner = phases.get("alpha", state.ansatz.hole_phase if state.ansatz.holes else -1.0)
        return check_string_phase_equations(state.ansatz.j, state.x, N=state.N, b=b, partner=partner, tr=self.tr)


class FiniteSizeRow(BaseModel):
    N: int
    deviation: float
    ell: int
    residual: float
    phases: Dict[str, complex] = {}


class FiniteSizeStudy(BaseModel):
    j: int
    x: float
    rows: List[FiniteSizeRow]

    def flagged_steps(self) -> List[int]:
        """N values at which the deviation did not decrease."""
        return [b.N for a, b in zip(self.rows, self.rows[1:]) if b.deviation >= a.deviation]

    @property
    def monotone(self) -> bool:
        """Decreasing with at most one flagged exception."""
        return len(self.flagged_steps()) <= 1


# Module-level API

def bethe_residuals(state: BetheState) -> np.ndarray:
    return BetheSolver(state.L).residuals(state)


def limit_roots(N: int, params: ModelParams, ansatz: Optional[StringAnsatz] = None,
                ell: Optional[int] = None) -> BetheState:
    return BetheSolver(params.L).limit_roots(N, ansatz, ell)


def solve(N: int, frame: NomeFrame, ansatz: Optional[StringAnsatz] = None, ell: Optional[int] = None,
          schedule: Optional[Sequence[float]] = None) -> BetheState:
    params = _params_for_frame(frame)
    return BetheSolver(params.L).solve(N, frame.x, ansatz, ell, schedule)


def transfer_eigenvalue(state: BetheState, w: complex) -> EigenvalueResult:
    return BetheSolver(state.L).transfer_eigenvalue(state, w)


def string_constraints_check(state: BetheState):
    return BetheSolver(state.L).string_constraints_check(state)


def _params_for_frame(frame: NomeFrame) -> ModelParams:
    for L in (3, 4, 6):
        if params_for(L).r == frame.r:
            return params_for(L)
    raise DomainError(f"No model with r={frame.r}")
