"""Command-line front end.

Examples::

    spindimer --command curve --preset heisenberg --J 1 --B-min 0 --B-max 5 --B-n 11 \
        --T-min 0.05 --T-max 3 --out curve.csv
    spindimer --config run.json --out -
    spindimer --command verify --seed 42

Exit codes: 0 success, 1 usage/validation, 2 numeric or verification
failure, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .classification import (
    dual_map,
    is_dual_pair,
    same_class,
    sample_class,
    torus_invariants,
)
from .errors import DimerError, InvalidParameterError
from .measures import chsh_parameter, concurrence_branches, concurrence_x, negativity
from .model import Category, Convention, DimerSpec, compile_spec, heisenberg, xy
from .phasediagram import DEFAULT_SCAN_POINTS, DEFAULT_TOL, MEASURES, measure_grid, transition_curve
from .thermal import thermal_state
from . import verification

__all__ = ["ConfigError", "RunConfig", "parse_config", "config_from_mapping", "run", "main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_IO = 3

COMMANDS = ("concurrence", "diagram", "curve", "classify", "dual", "verify", "sample")
_JSON_ONLY = {"classify", "dual", "verify", "sample"}
_PRESETS = ("heisenberg", "xy", "general")


class ConfigError(InvalidParameterError):
    """The run configuration is malformed or inconsistent."""


@dataclass
class RunConfig:
    command: str
    spec: DimerSpec | None = None
    other: DimerSpec | None = None
    B_axis: np.ndarray = field(default_factory=lambda: np.zeros(1))
    T_axis: np.ndarray | None = None
    T_range: tuple[float, float] | None = None
    tol: float = DEFAULT_TOL
    n_scan: int = DEFAULT_SCAN_POINTS
    measure: str = "concurrence"
    n: int | None = None
    seed: int | None = None
    out: str = "-"
    format: str = "csv"


def fmt(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(float(x), ".17g")


# -- config parsing -------------------------------------------------------


def _number(value: Any, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{name} must be finite, got {value!r}")
    return float(value)


def _count(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(f"{name} must be an integer >= 1, got {value!r}")
    return value


def _spec_from_preset(block: Any, category: Any) -> DimerSpec:
    if not isinstance(block, dict) or len(block) != 1:
        raise ConfigError("preset must be an object with exactly one key: " + ", ".join(_PRESETS))
    (name, params), = block.items()
    if params is None:
        params = {}
    if not isinstance(params, dict):
        raise ConfigError(f"preset {name!r} parameters must be an object")
    params = dict(params)
    category = params.pop("category", category)
    try:
        category = Category.parse(category)
    except InvalidParameterError as exc:
        raise ConfigError(str(exc)) from None

    def take(key: str, default: float | None = None) -> float:
        if key not in params:
            if default is None:
                raise ConfigError(f"preset {name!r} requires {key!r}")
            return default
        return _number(params.pop(key), f"{name}.{key}")

    if name == "heisenberg":
        spec = heisenberg(take("J"), category)
    elif name == "xy":
        gamma = take("gamma")
        if not 0.0 <= gamma <= 1.0:
            raise ConfigError(f"xy.gamma must lie in [0, 1], got {gamma!r}")
        spec = xy(gamma, category)
    elif name == "general":
        convention = params.pop("convention", "pauli")
        try:
            convention = Convention.parse(convention)
        except InvalidParameterError as exc:
            raise ConfigError(str(exc)) from None
        spec = DimerSpec(
            category,
            J=take("J", 0.0),
            D=take("D", 0.0),
            r=take("r", 0.0),
            K=take("K", 0.0),
            J_zz=take("J_zz", 0.0),
            convention=convention,
        )
    else:
        raise ConfigError(f"unknown preset {name!r}; expected one of {', '.join(_PRESETS)}")
    if params:
        raise ConfigError(f"unknown parameters for preset {name!r}: {sorted(params)}")
    return spec


def _axis(value: Any, name: str, default_n: int) -> np.ndarray:
    if isinstance(value, dict):
        lo = _number(value.get("min"), f"{name}.min")
        hi = _number(value.get("max"), f"{name}.max")
        n = _count(value.get("n", default_n), f"{name}.n")
        if hi < lo:
            raise ConfigError(f"{name}: max < min")
        if n == 1:
            if lo != hi:
                raise ConfigError(f"{name}: n = 1 requires min == max")
            return np.array([lo])
        return np.linspace(lo, hi, n)
    if isinstance(value, list):
        if not value:
            raise ConfigError(f"{name} must be non-empty")
        return np.array([_number(v, name) for v in value])
    return np.array([_number(value, name)])


def config_from_mapping(data: dict) -> RunConfig:
    """Validate a decoded JSON configuration."""
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    command = data.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"command must be one of {', '.join(COMMANDS)}, got {command!r}")

    category = data.get("category", "symmetric")
    spec = None
    if "preset" in data:
        spec = _spec_from_preset(data["preset"], category)
    elif command != "verify":
        raise ConfigError(f"command {command!r} requires a 'preset'")
    other = _spec_from_preset(data["other"], category) if "other" in data else None

    cfg = RunConfig(command=command, spec=spec, other=other)
    if "B" in data:
        cfg.B_axis = _axis(data["B"], "B", 1)

    T = data.get("T")
    if T is not None:
        if command == "curve":
            if not isinstance(T, dict):
                raise ConfigError("curve needs T as {'min': .., 'max': ..}")
            lo, hi = _number(T.get("min"), "T.min"), _number(T.get("max"), "T.max")
            if not 0 < lo < hi:
                raise ConfigError(f"T range must satisfy 0 < min < max, got ({lo}, {hi})")
            cfg.T_range = (lo, hi)
            if "n" in T:
                cfg.n_scan = _count(T["n"], "T.n")
        else:
            cfg.T_axis = _axis(T, "T", 100)
            if np.any(cfg.T_axis <= 0):
                raise ConfigError("temperatures must be positive")
    elif command in ("concurrence", "diagram"):
        raise ConfigError(f"command {command!r} requires 'T'")

    if "tol" in data:
        cfg.tol = _number(data["tol"], "tol")
        if cfg.tol <= 0:
            raise ConfigError("tol must be positive")
    if "n_scan" in data:
        cfg.n_scan = _count(data["n_scan"], "n_scan")
    if cfg.n_scan < 2:
        raise ConfigError("the temperature scan needs at least 2 points")
    if "measure" in data:
        if data["measure"] not in MEASURES:
            raise ConfigError(f"measure must be one of {', '.join(MEASURES)}")
        cfg.measure = data["measure"]
    if "n" in data:
        cfg.n = _count(data["n"], "n")
    if "seed" in data and data["seed"] is not None:
        if isinstance(data["seed"], bool) or not isinstance(data["seed"], int):
            raise ConfigError("seed must be an integer")
        cfg.seed = data["seed"]
    if "out" in data:
        if not isinstance(data["out"], str) or not data["out"]:
            raise ConfigError("out must be a path or '-'")
        cfg.out = data["out"]

    fmt_default = "json" if command in _JSON_ONLY else "csv"
    cfg.format = data.get("format", fmt_default)
    if cfg.format not in ("csv", "json"):
        raise ConfigError("format must be 'csv' or 'json'")
    if command in _JSON_ONLY and cfg.format != "json":
        raise ConfigError(f"command {command!r} only produces JSON")
    return cfg


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON configuration document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return config_from_mapping(data)


# -- commands -------------------------------------------------------------


def _csv_text(header: Sequence[str], rows: list[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json_text(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit_table(cfg: RunConfig, header: Sequence[str], rows: list[Sequence[Any]]) -> str:
    if cfg.format == "csv":
        return _csv_text(header, rows)
    return _json_text([dict(zip(header, row)) for row in rows])


def _cmd_concurrence(cfg: RunConfig) -> tuple[str, int]:
    rows = []
    for B in cfg.B_axis:
        g = compile_spec(cfg.spec.with_field(float(B)))
        for T in cfg.T_axis:
            x = thermal_state(g, float(T))
            rho = x.matrix()
            br = concurrence_branches(x)
            rows.append(
                (float(B), float(T), br.C1, br.C2, concurrence_x(x), negativity(rho), chsh_parameter(rho))
            )
    header = ("B", "T", "C1", "C2", "concurrence", "negativity", "chsh")
    return _emit_table(cfg, header, rows), EXIT_OK


def _cmd_diagram(cfg: RunConfig) -> tuple[str, int]:
    grid = measure_grid(cfg.spec, cfg.B_axis, cfg.T_axis, cfg.measure)
    rows = [
        (float(B), float(T), float(grid.values[i, j]))
        for i, B in enumerate(grid.B_axis)
        for j, T in enumerate(grid.T_axis)
    ]
    return _emit_table(cfg, ("B", "T", "value"), rows), EXIT_OK


def _cmd_curve(cfg: RunConfig) -> tuple[str, int]:
    curve = transition_curve(cfg.spec, cfg.B_axis, cfg.T_range, cfg.tol, cfg.n_scan)
    rows = [(p.B, float(p.Tc), p.branch) for p in curve.points]
    return _emit_table(cfg, ("B", "Tc", "branch"), rows), EXIT_OK


def _cmd_classify(cfg: RunConfig) -> tuple[str, int]:
    inv = torus_invariants(cfg.spec)
    dual = dual_map(cfg.spec)
    payload = {
        "spec": cfg.spec.as_dict(),
        "invariants": inv.as_dict(),
        "dual_spec": dual.as_dict(),
        "dual_invariants": torus_invariants(dual).as_dict(),
    }
    if cfg.other is not None:
        payload["other"] = cfg.other.as_dict()
        payload["other_invariants"] = torus_invariants(cfg.other).as_dict()
        payload["same_class"] = same_class(cfg.spec, cfg.other)
        payload["is_dual_pair"] = is_dual_pair(cfg.spec, cfg.other)
    return _json_text(payload), EXIT_OK


def _cmd_dual(cfg: RunConfig) -> tuple[str, int]:
    dual = dual_map(cfg.spec)
    payload = {
        "spec": cfg.spec.as_dict(),
        "dual": dual.as_dict(),
        "dual_pauli": dual.to_pauli().as_dict(),
        "is_dual_pair": is_dual_pair(cfg.spec, dual),
    }
    return _json_text(payload), EXIT_OK


def _cmd_sample(cfg: RunConfig) -> tuple[str, int]:
    inv = torus_invariants(cfg.spec)
    members = sample_class(inv, cfg.n or 8, cfg.seed)
    payload = {"invariants": inv.as_dict(), "members": [m.as_dict() for m in members]}
    return _json_text(payload), EXIT_OK


def _default_seed() -> int:
    raw = os.environ.get("DIMER_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"DIMER_SEED must be an integer, got {raw!r}") from None


def _cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    seed = cfg.seed if cfg.seed is not None else _default_seed()
    report = verification.run_all(seed=seed, n=cfg.n or verification.DEFAULT_SAMPLES)
    code = EXIT_OK if report["passed"] else EXIT_NUMERIC
    return _json_text(report), code


_HANDLERS = {
    "concurrence": _cmd_concurrence,
    "diagram": _cmd_diagram,
    "curve": _cmd_curve,
    "classify": _cmd_classify,
    "dual": _cmd_dual,
    "sample": _cmd_sample,
    "verify": _cmd_verify,
}


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute ``cfg``; output is written once, after all computation."""
    stdout = stdout if stdout is not None else sys.stdout
    try:
        text, code = _HANDLERS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DimerError, ArithmeticError, ValueError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    try:
        if cfg.out == "-":
            stdout.write(text)
            stdout.flush()
        else:
            Path(cfg.out).write_text(text, encoding="utf-8")
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


# -- argument handling ----------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spindimer", description="Thermal entanglement of spin-1/2 dimers.")
    p.add_argument("--config", help="JSON configuration file; flags override its values")
    p.add_argument("--command", choices=COMMANDS)
    p.add_argument("--preset", choices=_PRESETS)
    p.add_argument("--category", choices=[c.value for c in Category])
    p.add_argument("--convention", choices=[c.value for c in Convention], help="general preset only")
    for name in ("J", "D", "r", "K", "gamma"):
        p.add_argument(f"--{name}", type=float, default=None)
    p.add_argument("--J-zz", dest="J_zz", type=float, default=None)
    p.add_argument("--B", type=float, help="single field value")
    p.add_argument("--B-min", type=float)
    p.add_argument("--B-max", type=float)
    p.add_argument("--B-n", type=int)
    p.add_argument("--T", type=float, help="single temperature")
    p.add_argument("--T-min", type=float)
    p.add_argument("--T-max", type=float)
    p.add_argument("--T-n", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--n-scan", dest="n_scan", type=int)
    p.add_argument("--measure", choices=MEASURES)
    p.add_argument("--n", type=int, help="sample count (sample, verify)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output path, or '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"))
    return p


def _merge_axis(data: dict, key: str, single, lo, hi, n) -> None:
    if single is not None:
        data[key] = single
        return
    if lo is None and hi is None and n is None:
        return
    current = data.get(key)
    axis = dict(current) if isinstance(current, dict) else {}
    if lo is not None:
        axis["min"] = lo
    if hi is not None:
        axis["max"] = hi
    if n is not None:
        axis["n"] = n
    data[key] = axis


def merge_flags(data: dict, args: argparse.Namespace) -> dict:
    """Overlay command-line flags on a decoded config mapping."""
    data = dict(data)
    for key in ("command", "category", "tol", "n_scan", "measure", "n", "seed", "out", "format"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value

    preset = data.get("preset")
    name, params = None, {}
    if isinstance(preset, dict) and len(preset) == 1:
        (name, params), = preset.items()
        params = dict(params or {})
    if args.preset is not None and args.preset != name:
        name, params = args.preset, {}
    for key in ("J", "D", "r", "K", "J_zz", "gamma", "convention"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    if name is not None:
        data["preset"] = {name: params}
    elif params:
        raise ConfigError("coupling flags need --preset")

    _merge_axis(data, "B", args.B, args.B_min, args.B_max, args.B_n)
    _merge_axis(data, "T", args.T, args.T_min, args.T_max, args.T_n)
    return data


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    data: dict = {}
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"I/O error: {exc}", file=sys.stderr)
            return EXIT_IO
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            print(
                f"error: malformed JSON in {args.config} at line {exc.lineno}, "
                f"column {exc.colno}: {exc.msg}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        if not isinstance(data, dict):
            print("error: configuration must be a JSON object", file=sys.stderr)
            return EXIT_USAGE
    try:
        cfg = config_from_mapping(merge_flags(data, args))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    raise SystemExit(main())
