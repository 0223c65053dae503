"""Model parameters and the variable-set substitutions ``X_i^alpha``."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace as _dc_replace
from functools import cached_property
from typing import Sequence

from ellsos.theta import EllipticNome, ThetaEvaluator

DEFAULT_REGULARITY_TOL = 1e-10


class RegularityWarning(UserWarning):
    pass


def replace(values: Sequence[complex], i: int, value: complex) -> tuple[complex, ...]:
    """Return ``values`` with the 1-based position ``i`` set to ``value``."""
    if not 1 <= i <= len(values):
        raise IndexError(f"position {i} out of range 1..{len(values)}")
    out = list(values)
    out[i - 1] = complex(value)
    return tuple(out)


def _as_complex_tuple(values) -> tuple[complex, ...]:
    return tuple(complex(v) for v in values)


@dataclass(frozen=True)
class ModelParameters:
    """Full parameter set of the L x L domain-wall SOS lattice."""

    L: int
    p: float
    gamma: complex
    tau: complex
    x: tuple[complex, ...]
    mu: tuple[complex, ...]
    theta_rel_tol: float = 1e-16
    warn: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 1:
            raise ValueError(f"L must be a positive integer, got {self.L!r}")
        object.__setattr__(self, "L", int(self.L))
        object.__setattr__(self, "p", EllipticNome(self.p).p)
        object.__setattr__(self, "gamma", complex(self.gamma))
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "x", _as_complex_tuple(self.x))
        object.__setattr__(self, "mu", _as_complex_tuple(self.mu))
        if len(self.x) != self.L or len(self.mu) != self.L:
            raise ValueError(
                f"need {self.L} spectral parameters and inhomogeneities, "
                f"got {len(self.x)} and {len(self.mu)}"
            )
        if self.warn:
            bad = regularity(self)
            if bad:
                warnings.warn(
                    "irregular parameters: " + "; ".join(map(str, bad)),
                    RegularityWarning,
                    stacklevel=3,
                )

    @cached_property
    def theta(self) -> ThetaEvaluator:
        return ThetaEvaluator(EllipticNome(self.p), rel_tol=self.theta_rel_tol)

    def evolve(self, **changes) -> "ModelParameters":
        changes.setdefault("warn", False)
        return _dc_replace(self, **changes)

    def with_tau(self, tau: complex) -> "ModelParameters":
        return self.evolve(tau=tau)

    def with_x(self, i: int, value: complex) -> "ModelParameters":
        """Parameters with spectral parameter ``x_i`` replaced (1-based)."""
        return self.evolve(x=replace(self.x, i, value))

    def restrict(self, L: int) -> "ModelParameters":
        """Keep the first ``L`` spectral parameters and inhomogeneities."""
        if not 1 <= L <= self.L:
            raise ValueError(f"cannot restrict L={self.L} to {L}")
        return self.evolve(L=L, x=self.x[:L], mu=self.mu[:L], warn=self.warn)


@dataclass(frozen=True)
class Violation:
    name: str
    detail: str = ""

    def __str__(self):
        return f"{self.name} ({self.detail})" if self.detail else self.name


def regularity(params: ModelParameters, tol: float = DEFAULT_REGULARITY_TOL) -> list[Violation]:
    """List every denominator theta factor that vanishes at ``tol``.

    Covers the denominators of the face weights, the functional-equation
    coefficients and the determinant blocks.  An empty list means regular.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    ev = params.theta
    L, g, t, x, mu = params.L, params.gamma, params.tau, params.x, params.mu
    out: list[Violation] = []

    def check(name, arg, detail=""):
        if ev.is_zero(arg, tol):
            out.append(Violation(name, detail))

    for i in range(L):
        for j in range(i + 1, L):
            check("[x_i - x_j] = 0", x[i] - x[j], f"i={i + 1}, j={j + 1}")
    check("[tau] = 0", t)
    for k in range(1, L + 3):
        check(f"[tau + {k}gamma] = 0" if k > 1 else "[tau + gamma] = 0", t + k * g)
    for k in range(1, L + 2):
        check(f"[{k}gamma] = 0" if k > 1 else "[gamma] = 0", k * g)
    for k in range(L):
        check("[x_k - mu_1 + gamma] = 0", x[k] - mu[0] + g, f"k={k + 1}")
        check("[x_k - mu_1 + 2gamma] = 0", x[k] - mu[0] + 2 * g, f"k={k + 1}")
        check("[mu_1 - mu_k - gamma] = 0", mu[0] - mu[k] - g, f"k={k + 1}")
    for l in range(L):
        for k in range(L):
            check("[x_l - mu_k + gamma] = 0", x[l] - mu[k] + g, f"l={l + 1}, k={k + 1}")
    return out


def require_regular(params: ModelParameters, tol: float = DEFAULT_REGULARITY_TOL) -> None:
    from ellsos.errors import DivisionByZeroTheta

    bad = regularity(params, tol)
    if bad:
        raise DivisionByZeroTheta(str(bad[0]))
