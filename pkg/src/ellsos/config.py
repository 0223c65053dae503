"""Run configuration files.

A config is a UTF-8 JSON object::

    {"L": 2, "p": 0.3116, "gamma": 0.6512, "tau": 0.1743,
     "x": [0.4327, 1.0715], "mu": [0.6745, 0.4129]}

Complex quantities are either a bare number or a ``[re, im]`` pair.  The
optional keys ``method`` (det | enum | both), ``format`` (text | machine)
and ``tolerances`` (``theta_rel_tol``, ``regularity_tol``) fill the rest of
:class:`RunConfig`.
"""

from __future__ import annotations

import json
import os
import warnings
from dataclasses import dataclass
from typing import Any, Literal

from ellsos.errors import EllSOSError
from ellsos.lattice import MAX_ENUM_L
from ellsos.params import DEFAULT_REGULARITY_TOL, ModelParameters, regularity

Method = Literal["det", "enum", "both"]
OutputFormat = Literal["text", "machine"]

METHODS = ("det", "enum", "both")
FORMATS = ("text", "machine")
REQUIRED_KEYS = ("L", "p", "gamma", "tau", "x", "mu")
OPTIONAL_KEYS = ("method", "format", "tolerances")
TOLERANCE_KEYS = ("theta_rel_tol", "regularity_tol")


class ParseError(EllSOSError, ValueError):
    """The config file is not well-formed; the message names the line or field."""


class ValidationError(EllSOSError, ValueError):
    """The config is well-formed but describes an unusable parameter set."""

    def __init__(self, message: str, violations=()):
        self.violations = list(violations)
        super().__init__(message)


@dataclass(frozen=True)
class Tolerances:
    theta_rel_tol: float = 1e-16
    regularity_tol: float = DEFAULT_REGULARITY_TOL


@dataclass(frozen=True)
class RunConfig:
    params: ModelParameters
    method: Method = "det"
    output_format: OutputFormat = "text"
    tolerances: Tolerances = Tolerances()

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValidationError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.output_format not in FORMATS:
            raise ValidationError(f"format must be one of {FORMATS}, got {self.output_format!r}")
        if self.method != "det" and self.params.L > MAX_ENUM_L:
            raise ValidationError(f"method {self.method!r} needs L <= {MAX_ENUM_L}, got L={self.params.L}")


def _complex(value: Any, field: str) -> complex:
    if isinstance(value, bool):
        raise ParseError(f"field {field!r}: expected a number or [re, im], got {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(value[0], value[1])
    raise ParseError(f"field {field!r}: expected a number or [re, im], got {value!r}")


def _complex_list(value: Any, field: str) -> list[complex]:
    if not isinstance(value, list):
        raise ParseError(f"field {field!r}: expected a list, got {value!r}")
    return [_complex(v, f"{field}[{k}]") for k, v in enumerate(value)]


def _encode(z: complex):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def config_from_dict(data: Any) -> RunConfig:
    """Validate a decoded JSON object and build a :class:`RunConfig`."""
    if not isinstance(data, dict):
        raise ParseError("top level: expected a JSON object")
    missing = [k for k in REQUIRED_KEYS if k not in data]
    if missing:
        raise ParseError(f"missing field(s): {', '.join(missing)}")
    unknown = sorted(set(data) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS))
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(unknown)}")

    L = data["L"]
    if isinstance(L, bool) or not isinstance(L, int):
        raise ParseError(f"field 'L': expected an integer, got {L!r}")
    p = data["p"]
    if isinstance(p, bool) or not isinstance(p, (int, float)):
        raise ParseError(f"field 'p': expected a real number, got {p!r}")
    gamma = _complex(data["gamma"], "gamma")
    tau = _complex(data["tau"], "tau")
    x = _complex_list(data["x"], "x")
    mu = _complex_list(data["mu"], "mu")

    tol_data = data.get("tolerances", {})
    if not isinstance(tol_data, dict):
        raise ParseError("field 'tolerances': expected an object")
    bad = sorted(set(tol_data) - set(TOLERANCE_KEYS))
    if bad:
        raise ParseError(f"field 'tolerances': unknown key(s) {', '.join(bad)}")
    for k, v in tol_data.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
            raise ParseError(f"field 'tolerances.{k}': expected a positive number, got {v!r}")
    tols = Tolerances(**{k: float(v) for k, v in tol_data.items()})

    if not 0 < p < 1:
        raise ValidationError(f"nome out of range: p={p} (need 0 < p < 1)")
    if L < 1:
        raise ValidationError(f"L must be positive, got {L}")
    if len(x) != L or len(mu) != L:
        raise ValidationError(f"need {L} values in x and mu, got {len(x)} and {len(mu)}")

    params = ModelParameters(
        L=L, p=float(p), gamma=gamma, tau=tau, x=x, mu=mu,
        theta_rel_tol=tols.theta_rel_tol, warn=False,
    )
    try:
        violations = regularity(params, tols.regularity_tol)
    except ArithmeticError as exc:
        raise ValidationError(f"parameters outside the theta evaluation range: {exc}") from exc
    if violations:
        raise ValidationError(
            "irregular parameters: " + "; ".join(map(str, violations)), violations
        )
    return RunConfig(
        params=params,
        method=data.get("method", "det"),
        output_format=data.get("format", "text"),
        tolerances=tols,
    )


def parse_config(path: str | os.PathLike) -> RunConfig:
    """Read and validate a config file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return config_from_dict(data)


def config_to_dict(config: RunConfig) -> dict:
    prm = config.params
    return {
        "L": prm.L,
        "p": prm.p,
        "gamma": _encode(prm.gamma),
        "tau": _encode(prm.tau),
        "x": [_encode(v) for v in prm.x],
        "mu": [_encode(v) for v in prm.mu],
        "method": config.method,
        "format": config.output_format,
        "tolerances": {
            "theta_rel_tol": config.tolerances.theta_rel_tol,
            "regularity_tol": config.tolerances.regularity_tol,
        },
    }


def serialize(config: RunConfig) -> str:
    """JSON text that :func:`parse_config` reads back to an equal config."""
    return json.dumps(config_to_dict(config), indent=2) + "\n"


def write_config(config: RunConfig, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(config))


def params_config(params: ModelParameters, **kw) -> RunConfig:
    """Wrap existing parameters, silencing the construction-time warning."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return RunConfig(params=params.evolve(), **kw)
