"""Functional equations satisfied by the partition function.

Three relations are checked numerically, each with auxiliary spectral points
``x0`` and/or ``x0bar`` that are free:

* type A relates ``Z_tau(X)`` to ``Z_{tau+gamma}`` at ``X`` and at ``X`` with
  one ``x_i`` replaced by ``x0``;
* type D relates ``Z_{tau+gamma}(X)`` to ``Z_tau`` at ``X`` and at ``X`` with
  one ``x_i`` replaced by ``x0bar``;
* type AD combines the two so that every term sits at the same ``tau``.

Residuals are normalized by the largest term, so an exact identity evaluated
in floating point gives a value near machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from ellsos.determinant import partition_function_det
from ellsos.errors import DegenerateSpectralPoint, DivisionByZeroTheta
from ellsos.params import DEFAULT_REGULARITY_TOL, ModelParameters

Kind = Literal["A", "D", "AD"]

# sampling box for auxiliary points, and the minimum separation from x_i
AUX_RE = (0.1, 3.0)
AUX_IM = (-0.5, 0.5)
AUX_MIN_SEP = 1e-3


@dataclass(frozen=True)
class CoefficientSet:
    """Coefficients of one functional equation.

    For A and D, ``n0`` multiplies the term whose variable set is ``X``
    itself and ``n`` the ``L`` substituted terms.  For AD, ``n`` and
    ``nbar`` multiply the ``x0`` and ``x0bar`` substitutions; ``n0`` is None.
    """

    kind: Kind
    m0: complex
    n: tuple[complex, ...]
    n0: complex | None = None
    nbar: tuple[complex, ...] = ()


class _Th:
    def __init__(self, params: ModelParameters, tol: float):
        self.ev = params.theta
        self.tol = tol

    def __call__(self, x):
        return self.ev(x)

    def den(self, x, name, exc=DivisionByZeroTheta):
        v, scale = self.ev.theta_with_scale(x)
        if abs(v) < self.tol * scale:
            raise exc(f"theta factor {name} vanishes") if exc is not DivisionByZeroTheta else exc(name, v)
        return v


def _check_aux(th: _Th, params: ModelParameters, z: complex, label: str) -> None:
    for j, xj in enumerate(params.x, 1):
        th.den(xj - z, f"[x_{j} - {label}]", DegenerateSpectralPoint)


def _cross(th: _Th, x, i: int, skip_self: bool = True) -> complex:
    """prod_{j != i} [x_i - x_j + gamma] / [x_i - x_j] (0-based ``i``)."""
    g = th.g
    return math.prod(
        th(x[i] - x[j] + g) / th.den(x[i] - x[j], "[x_i - x_j]") for j in range(len(x)) if j != i
    )


def coeffs_A(
    params: ModelParameters,
    x0: complex,
    tol: float = DEFAULT_REGULARITY_TOL,
    *,
    tau_prefactor: bool = False,
) -> CoefficientSet:
    """Coefficients of the type-A equation.

    The N_i prefactor carries ``[gamma]``; the variant with ``[tau]`` in its
    place (``tau_prefactor=True``) does not satisfy the equation and is kept
    only so that can be tested.
    """
    th = _Th(params, tol)
    _check_aux(th, params, x0, "x0")
    L, g, t, x, mu = params.L, params.gamma, params.tau, params.x, params.mu
    th.g = g
    d_L2 = th.den(t + (L + 2) * g, "[tau + (L+2)gamma]")
    m0 = th(t + g) / th.den(t + (L + 1) * g, "[tau + (L+1)gamma]") * math.prod(
        th(x0 - m) for m in mu
    )
    n0 = (
        -th(t + 2 * g)
        / d_L2
        * math.prod(th(x0 - m + g) for m in mu)
        * math.prod(th(xj - x0 + g) / th(xj - x0) for xj in x)
    )
    n = []
    for i in range(L):
        xi = x[i]
        val = th(t if tau_prefactor else g) * th(t + 2 * g + x0 - xi) / (d_L2 * th(xi - x0))
        val *= math.prod(th(xi - m + g) for m in mu)
        val *= math.prod(
            th(x[j] - xi + g) / th.den(x[j] - xi, "[x_i - x_j]") for j in range(L) if j != i
        )
        n.append(val)
    return CoefficientSet("A", m0, tuple(n), n0=n0)


def coeffs_D(params: ModelParameters, x0bar: complex, tol: float = DEFAULT_REGULARITY_TOL) -> CoefficientSet:
    th = _Th(params, tol)
    _check_aux(th, params, x0bar, "x0bar")
    L, g, t, x, mu = params.L, params.gamma, params.tau, params.x, params.mu
    th.g = g
    d_L1 = th.den(t + (L + 1) * g, "[tau + (L+1)gamma]")
    m0 = math.prod(th(x0bar - m + g) for m in mu)
    n0 = -math.prod(th(x0bar - m) for m in mu) * math.prod(
        th(x0bar - xj + g) / th(x0bar - xj) for xj in x
    )
    n = []
    for i in range(L):
        xi = x[i]
        val = th(g) * th(t + (L + 1) * g + x0bar - xi) / (th(x0bar - xi) * d_L1)
        val *= math.prod(th(xi - m) for m in mu) * _cross(th, x, i)
        n.append(val)
    return CoefficientSet("D", m0, tuple(n), n0=n0)


def coeffs_AD(
    params: ModelParameters, x0: complex, x0bar: complex, tol: float = DEFAULT_REGULARITY_TOL
) -> CoefficientSet:
    th = _Th(params, tol)
    _check_aux(th, params, x0, "x0")
    _check_aux(th, params, x0bar, "x0bar")
    th.den(x0 - x0bar, "[x0 - x0bar]", DegenerateSpectralPoint)
    L, g, t, x, mu = params.L, params.gamma, params.tau, params.x, params.mu
    th.g = g
    d_L1 = th.den(t + (L + 1) * g, "[tau + (L+1)gamma]")
    x0_mu_g = [th.den(x0 - m + g, "[x0 - mu_j + gamma]", DegenerateSpectralPoint) for m in mu]
    m0 = math.prod(
        th(x0 - xj + g) * th(x0 - m) * th(x0bar - m + g) / (th(x0 - xj) * d)
        for xj, m, d in zip(x, mu, x0_mu_g)
    ) - math.prod(th(x0bar - xj + g) * th(x0bar - m) / th(x0bar - xj) for xj, m in zip(x, mu))
    shift = math.prod(th(x0bar - m + g) / d for m, d in zip(mu, x0_mu_g))
    n, nbar = [], []
    for i in range(L):
        xi = x[i]
        common = math.prod(th(xi - m) for m in mu) * _cross(th, x, i) * th(g) / d_L1
        n.append(-common * th(x0 - xi + t + (L + 1) * g) / th(x0 - xi) * shift)
        nbar.append(common * th(x0bar - xi + t + (L + 1) * g) / th(x0bar - xi))
    return CoefficientSet("AD", m0, tuple(n), nbar=tuple(nbar))


ZFunc = Callable[[ModelParameters], complex]


def _residual(terms: list[complex]) -> float:
    scale = max(abs(t) for t in terms)
    if scale == 0:
        return 0.0
    return abs(sum(terms)) / scale


def residual_A(
    params: ModelParameters,
    x0: complex,
    z: ZFunc = partition_function_det,
    *,
    tau_prefactor: bool = False,
) -> float:
    """Normalized residual of the type-A equation."""
    c = coeffs_A(params, x0, tau_prefactor=tau_prefactor)
    up = params.with_tau(params.tau + params.gamma)
    terms = [c.m0 * z(params), c.n0 * z(up)]
    terms += [c.n[i] * z(up.with_x(i + 1, x0)) for i in range(params.L)]
    return _residual(terms)


def residual_D(params: ModelParameters, x0bar: complex, z: ZFunc = partition_function_det) -> float:
    """Normalized residual of the type-D equation."""
    c = coeffs_D(params, x0bar)
    up = params.with_tau(params.tau + params.gamma)
    terms = [c.m0 * z(up), c.n0 * z(params)]
    terms += [c.n[i] * z(params.with_x(i + 1, x0bar)) for i in range(params.L)]
    return _residual(terms)


def residual_AD(
    params: ModelParameters, x0: complex, x0bar: complex, z: ZFunc = partition_function_det
) -> float:
    """Normalized residual of the combined equation, all terms at one ``tau``."""
    c = coeffs_AD(params, x0, x0bar)
    terms = [c.m0 * z(params)]
    terms += [c.n[i] * z(params.with_x(i + 1, x0)) for i in range(params.L)]
    terms += [c.nbar[i] * z(params.with_x(i + 1, x0bar)) for i in range(params.L)]
    return _residual(terms)


def random_aux_point(params: ModelParameters, rng: np.random.Generator, avoid=()) -> complex:
    """Uniform draw from the sampling box, away from every ``x_i`` and ``avoid``."""
    taken = list(params.x) + list(avoid)
    while True:
        z = complex(rng.uniform(*AUX_RE), rng.uniform(*AUX_IM))
        if all(abs(z - w) >= AUX_MIN_SEP for w in taken):
            return z


def max_residual(params: ModelParameters, kind: Kind, trials: int, seed: int) -> float:
    """Largest residual over ``trials`` seeded auxiliary points."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        x0 = random_aux_point(params, rng)
        if kind == "A":
            r = residual_A(params, x0)
        elif kind == "D":
            r = residual_D(params, x0)
        elif kind == "AD":
            r = residual_AD(params, x0, random_aux_point(params, rng, avoid=[x0]))
        else:
            raise ValueError(f"unknown equation type {kind!r}")
        worst = max(worst, r)
    return worst
