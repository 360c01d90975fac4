"""
Command-Line Interface
======================
Computes spectra and amplitudes, runs the verification suites, drives
Bethe solves and writes JSON or CSV result files.

Exit codes: 0 success, 1 verification or solver failure, 2 usage error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, ValidationError, model_validator

from .config import get_output_dir, get_settings, setup_logging
from .elliptic_kernel import Truncation
from .exceptions import ConfigError, DiluteSpectraError, DomainError
from .model import (
    TRICRITICAL_PERTURBATIONS,
    excitation_table,
    frame_from_eps,
    frame_from_p,
    frame_from_x,
    params_for,
    table_checksum,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FORMATS = ("json", "csv")
MASSES_HEADER = ["j", "label", "a_set", "m", "xi", "parity"]
SCAN_HEADER = ["p", "j", "m", "asymptotic", "ratio"]


class RunConfig(BaseModel):
    """Validated options of one command."""

    command: str
    L: int = 4
    p: Optional[float] = None
    x: Optional[float] = None
    eps: Optional[float] = None
    N: Optional[int] = None
    excitations: List[int] = []
    format: str = "json"
    output: Optional[str] = None
    tol: Optional[float] = None
    max_terms: Optional[int] = None
    seed: int = 0

    @model_validator(mode="after")
    def _check(self) -> "RunConfig":
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.command in ("masses", "bethe"):
            given = [name for name in ("p", "x", "eps") if getattr(self, name) is not None]
            if len(given) != 1:
                raise ValueError(f"exactly one of --p, --x, --eps is required (got {given or 'none'})")
        return self

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """
        Build a RunConfig from parsed arguments.

        Raises:
            ConfigError: if the options are inconsistent
        """
        fields = {name: getattr(args, name) for name in cls.model_fields if hasattr(args, name)}
        if getattr(args, "j", None) is not None:
            fields["excitations"] = [args.j]
        try:
            return cls(**{k: v for k, v in fields.items() if v is not None})
        except ValidationError as exc:
            message = "; ".join(error["msg"] for error in exc.errors())
            raise ConfigError(message) from exc

    def truncation(self) -> Optional[Truncation]:
        if self.tol is None and self.max_terms is None:
            return None
        base = Truncation.from_settings()
        return base.model_copy(update={
            "tol": self.tol if self.tol is not None else base.tol,
            "max_terms": self.max_terms if self.max_terms is not None else base.max_terms,
        })

    def frame(self):
        params = params_for(self.L)
        if self.p is not None:
            return frame_from_p(self.p, params)
        if self.x is not None:
            return frame_from_x(self.x, params)
        return frame_from_eps(self.eps, params)

    def output_path(self) -> Path:
        if self.output:
            return Path(self.output)
        return get_output_dir() / f"{self.command}.{self.format}"


def _jsonable(value: Any) -> Any:
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return str(value)


def _summary_columns(summary: Dict[str, Any]) -> Dict[str, Any]:
    columns: Dict[str, Any] = {}
    for key, value in summary.items():
        if isinstance(value, complex):
            columns[f"{key}_re"] = value.real
            columns[f"{key}_im"] = value.imag
        else:
            columns[key] = value
    return columns


def write_result(cfg: RunConfig, payload: Dict[str, Any], rows: Optional[List[Dict[str, Any]]] = None,
                 header: Optional[Sequence[str]] = None, summary: Optional[Dict[str, Any]] = None) -> Path:
    """
    Write the command result as JSON (with a schema field) or CSV rows.

    Args:
        cfg: Run configuration (format and output path)
        payload: Scalar results; the JSON document carries all of them
        rows: Tabular results
        header: CSV column order
        summary: Scalars repeated as trailing CSV columns on every row
            (complex values split into _re/_im)

    Returns:
        Path written
    """
    path = cfg.output_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    if cfg.format == "json":
        document = {"schema": SCHEMA_VERSION, "command": cfg.command, **payload}
        if rows is not None:
            document["rows"] = rows
        path.write_text(json.dumps(document, indent=2, sort_keys=True, default=_jsonable) + "\n", encoding="utf-8")
    else:
        frame = pd.DataFrame(rows or [payload], columns=list(header) if header else None)
        for column, value in _summary_columns(summary or {}).items():
            frame[column] = value
        frame.to_csv(path, index=False, float_format="%.12g", encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


# Commands

def cmd_masses(cfg: RunConfig, regime: str = "2-", method: str = "auto") -> int:
    from .spectrum import mass_spectrum, present_in_regime

    frame = cfg.frame()
    spectrum = mass_spectrum(cfg.L, frame.p, method=method, tr=cfg.truncation())
    rows = []
    for entry, spec in zip(spectrum.entries, excitation_table(cfg.L)):
        if not present_in_regime(spec, regime):
            continue
        rows.append({
            "j": entry.j,
            "label": entry.label,
            "a_set": " ".join(str(a) for a in entry.a_set),
            "m": entry.m,
            "xi": entry.xi,
            "parity": entry.parity or "",
        })
    payload = {"L": cfg.L, "p": frame.p, "x": frame.x, "eps": frame.eps, "regime": regime, "method": spectrum.method}
    path = write_result(cfg, payload, rows, MASSES_HEADER)
    m1 = spectrum.entries[0].m
    for row in rows:
        print(f"  {row['label']:>5}  m = {row['m']:.10g}  xi = {row['xi']:.10g}  m/m1 = {row['m'] / m1:.6f}")
    print(f"Results written to {path}")
    return 0


def cmd_amplitudes(cfg: RunConfig) -> int:
    from .spectrum import amplitudes

    values = amplitudes().model_dump()
    for name, value in values.items():
        print(f"  {name:<10} = {value:.8f}")
    write_result(cfg, values, [values], list(values))
    return 0


def cmd_verify(cfg: RunConfig, suite: str = "all") -> int:
    from .verifier import run_suite

    report = run_suite(suite, seed=cfg.seed, tr=cfg.truncation())
    rows = [{"check": r.name, "passed": r.passed, "cases": len(r.cases), "worst": r.worst} for r in report.reports]
    for r in report.reports:
        print(f"  {r.summary()}")
    write_result(cfg, {"suite": suite, "passed": report.passed, "worst": report.worst}, rows,
                 ["check", "passed", "cases", "worst"],
                 summary={"suite": suite, "suite_passed": report.passed, "suite_worst": report.worst})
    if not report.passed:
        worst = sorted(report.failures(), key=lambda r: r.worst, reverse=True)[:5]
        print("Verification FAILED; worst checks:")
        for r in worst:
            print(f"  {r.name}: {r.worst:.3e}")
        return 1
    print(f"All {len(report.reports)} checks passed (worst deviation {report.worst:.3e})")
    return 0


def cmd_bethe(cfg: RunConfig, ell: Optional[int] = None) -> int:
    from .bethe import BetheSolver, StringAnsatz

    if cfg.N is None:
        raise ConfigError("--N is required")
    j = cfg.excitations[0] if cfg.excitations else 0
    frame = cfg.frame()
    ansatz = StringAnsatz.for_excitation(j, cfg.L) if j else None
    solver = BetheSolver(cfg.L, tr=cfg.truncation())
    ground, sectors = solver.ground_sector_scan(cfg.N, frame.x)
    payload: Dict[str, Any] = {
        "L": cfg.L, "N": cfg.N, "x": frame.x, "p": frame.p, "j": j,
        "ground_ell": ground.ell, "sectors": [list(item) for item in sectors],
    }
    state = ground
    if ansatz is not None:
        state = solver.solve(cfg.N, frame.x, ansatz, ell=ell)
        payload["log_ratio"] = solver.measured_log_ratio(state, ground)
        payload["deviation"] = solver.deviation(state, ground)
        payload["phases"] = state.phases()
    payload.update({"ell": state.ell, "residual_norm": state.residual_norm})
    rows = [{"index": i, "re": w.real, "im": w.imag, "modulus": abs(w)} for i, w in enumerate(state.roots)]
    summary = {key: payload[key] for key in ("j", "ell", "residual_norm", "log_ratio", "deviation") if key in payload}
    write_result(cfg, payload, rows, ["index", "re", "im", "modulus"], summary=summary)
    print(f"  N={cfg.N} x={frame.x:g} j={j} ell={state.ell} residual={state.residual_norm:.2e}")
    if j:
        print(f"  deviation from closed form = {payload['deviation']:.3e}")
    return 0


def cmd_scan(cfg: RunConfig, p_min: float, p_max: float, count: int) -> int:
    from .spectrum import asymptotic_mass, mass_spectrum

    if not (0.0 < p_min < p_max < 1.0) or count < 2:
        raise ConfigError("scan needs 0 < --p-min < --p-max < 1 and --count >= 2")
    params = params_for(cfg.L)
    table = excitation_table(cfg.L)
    rows = []
    for p in np.geomspace(p_min, p_max, count):
        spectrum = mass_spectrum(cfg.L, float(p), tr=cfg.truncation())
        for entry, spec in zip(spectrum.entries, table):
            asym = asymptotic_mass(spec, float(p), params)
            rows.append({"p": float(p), "j": entry.j, "m": entry.m, "asymptotic": asym, "ratio": entry.m / asym})
    path = write_result(cfg, {"L": cfg.L, "p_min": p_min, "p_max": p_max, "count": count}, rows, SCAN_HEADER)
    print(f"{len(rows)} rows written to {path}")
    return 0


def cmd_perturbations(cfg: RunConfig) -> int:
    rows = [item.model_dump() for item in TRICRITICAL_PERTURBATIONS]
    for row in rows:
        print(f"  {row['field']:<9} h={row['weight']:<5} {row['lattice']:<20} {row['coupling']}")
    write_result(cfg, {}, rows, ["field", "weight", "lattice", "coupling"])
    return 0


def cmd_checksum(cfg: RunConfig) -> int:
    digest = table_checksum(cfg.L)
    print(digest)
    write_result(cfg, {"L": cfg.L, "sha256": digest}, [{"L": cfg.L, "sha256": digest}], ["L", "sha256"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--output", default=None, help="Result file (default: <output_dir>/<command>.<format>)")
    common.add_argument("--seed", type=int, default=None, help="Sampling seed (default from settings)")
    common.add_argument("--tol", type=float, default=None, help="Kernel truncation tolerance")
    common.add_argument("--max-terms", dest="max_terms", type=int, default=None, help="Kernel factor cap")
    common.add_argument("--log-level", dest="log_level", default=None)

    nome = argparse.ArgumentParser(add_help=False)
    nome.add_argument("--p", type=float, default=None)
    nome.add_argument("--x", type=float, default=None)
    nome.add_argument("--eps", type=float, default=None)

    parser = argparse.ArgumentParser(prog="dilute-spectra", description="Dilute A_L excitation spectra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    masses = sub.add_parser("masses", parents=[common, nome], help="Masses and correlation lengths")
    masses.add_argument("--L", type=int, default=4, choices=(3, 4, 6))
    masses.add_argument("--regime", choices=("2-", "2+"), default="2-")
    masses.add_argument("--method", choices=("auto", "theta", "product"), default="auto")

    sub.add_parser("amplitudes", parents=[common], help="Universal amplitudes")

    verify = sub.add_parser("verify", parents=[common], help="Run a verification suite")
    verify.add_argument("--suite", default="all", choices=("poch", "recurrences", "assembly", "generic", "phases", "all"))

    bethe = sub.add_parser("bethe", parents=[common, nome], help="Solve the Bethe equations")
    bethe.add_argument("--L", type=int, default=4, choices=(3, 4, 6),
                       help="Model level; excitations (--j > 0) need L = 4")
    bethe.add_argument("--N", type=int, required=True)
    bethe.add_argument("--j", type=int, default=0, help="Excitation (0 for the ground state)")
    bethe.add_argument("--ell", type=int, default=None)

    scan = sub.add_parser("scan", parents=[common], help="Masses over a geometric p grid")
    scan.add_argument("--L", type=int, default=4, choices=(3, 4, 6))
    scan.add_argument("--p-min", dest="p_min", type=float, default=1e-8)
    scan.add_argument("--p-max", dest="p_max", type=float, default=1e-5)
    scan.add_argument("--count", type=int, default=10)

    sub.add_parser("perturbations", parents=[common], help="Relevant perturbations of c = 7/10")

    checksum = sub.add_parser("checksum", parents=[common], help="Checksum of an excitation table")
    checksum.add_argument("--L", type=int, default=4, choices=(3, 4, 6))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point.

    Args:
        argv: Argument list (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    settings = get_settings()
    if args.log_level:
        settings = settings.model_copy(update={"log_level": args.log_level})
    setup_logging(settings)
    if args.seed is None:
        args.seed = settings.seed

    try:
        cfg = RunConfig.from_args(args)
        if args.command == "masses":
            return cmd_masses(cfg, regime=args.regime, method=args.method)
        if args.command == "amplitudes":
            return cmd_amplitudes(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, suite=args.suite)
        if args.command == "bethe":
            return cmd_bethe(cfg, ell=args.ell)
        if args.command == "scan":
            return cmd_scan(cfg, args.p_min, args.p_max, args.count)
        if args.command == "perturbations":
            return cmd_perturbations(cfg)
        return cmd_checksum(cfg)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DiluteSpectraError as exc:
        last = getattr(exc, "last_good_x", None)
        suffix = f" (last good x = {last:g})" if last is not None else ""
        print(f"failed: {exc}{suffix}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
