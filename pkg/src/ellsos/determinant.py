"""Single-determinant representation of the partition function.

``Z = prefactor * det(Omega) / det(Omega_red)`` where ``Omega`` is a
``d_L x d_L`` block matrix, ``d_L = L(L+3)/2``, and ``Omega_red`` is the same
matrix with the dynamical parameter set to ``-gamma``.  The auxiliary
spectral points are fixed at ``x0 = mu_1 - 2 gamma`` and
``x0bar = mu_1 - gamma``; both are already substituted in the entries below.

Block layout (rows and columns split as ``L | L(L-1)/2 | L``)::

    [ F     I     G    ]
    [ Ibar  K     0    ]
    [ Fbar  Jbar  Gbar ]

Pair indices ``(r, s)`` with ``r < s`` are packed by :func:`pair_index`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.linalg import lu_factor

from ellsos.errors import DivisionByZeroTheta, SingularMatrix
from ellsos.params import DEFAULT_REGULARITY_TOL, ModelParameters

PIVOT_FLOOR = 1e-300


def dim(L: int) -> int:
    """``d_L = L(L+3)/2``; ``dim(0) == 0``."""
    return L * (L + 3) // 2


def pair_index(r: int, s: int, L: int) -> int:
    """1-based packed index of the pair ``1 <= r < s <= L``."""
    if not 1 <= r < s <= L:
        raise IndexError(f"need 1 <= r < s <= L, got r={r}, s={s}, L={L}")
    return s + L * (r - 1) - r * (r + 1) // 2


def pairs(L: int) -> list[tuple[int, int]]:
    """All pairs ``(r, s)``, 1-based, in packed-index order."""
    return list(combinations(range(1, L + 1), 2))


@dataclass(frozen=True)
class LogDet:
    """A nonzero complex number stored as ``exp(log_magnitude) * phase``."""

    log_magnitude: float
    phase: complex = 1 + 0j

    @classmethod
    def of(cls, z: complex) -> "LogDet":
        z = complex(z)
        if z == 0:
            raise ZeroDivisionError("LogDet of zero")
        r = abs(z)
        return cls(math.log(r), z / r)

    def __mul__(self, other: "LogDet") -> "LogDet":
        ph = self.phase * other.phase
        return LogDet(self.log_magnitude + other.log_magnitude, ph / abs(ph))

    def __truediv__(self, other: "LogDet") -> "LogDet":
        ph = self.phase / other.phase
        return LogDet(self.log_magnitude - other.log_magnitude, ph / abs(ph))

    def __pow__(self, k: int) -> "LogDet":
        ph = self.phase**k
        return LogDet(k * self.log_magnitude, ph / abs(ph))

    def value(self) -> complex:
        return math.exp(self.log_magnitude) * self.phase


def log_det(m) -> LogDet:
    """Determinant of a square complex matrix via LU with partial pivoting."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"square matrix required, got shape {a.shape}")
    if a.shape[0] == 0:
        return LogDet(0.0)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    lu, piv = lu_factor(a, check_finite=False)
    pivots = np.diag(lu)
    mags = np.abs(pivots)
    if np.any(mags < PIVOT_FLOOR):
        k = int(np.argmin(mags))
        raise SingularMatrix(f"pivot {k} has magnitude {mags[k]:.3e}")
    swaps = int(np.count_nonzero(piv != np.arange(len(piv))))
    phase = complex(np.prod(pivots / mags)) * (-1) ** swaps
    return LogDet(float(np.sum(np.log(mags))), phase / abs(phase))


class _Theta:
    """Per-call memo of theta values with zero screening for denominators."""

    def __init__(self, params: ModelParameters, tol: float):
        self.ev = params.theta
        self.tol = tol
        self.cache: dict[complex, tuple[complex, float]] = {}

    def _get(self, x: complex) -> tuple[complex, float]:
        x = complex(x)
        hit = self.cache.get(x)
        if hit is None:
            hit = self.cache[x] = self.ev.theta_with_scale(x)
        return hit

    def __call__(self, x: complex) -> complex:
        return self._get(x)[0]

    def den(self, x: complex, name: str) -> complex:
        v, scale = self._get(x)
        if abs(v) < self.tol * scale:
            raise DivisionByZeroTheta(name, v)
        return v


def build_omega(
    params: ModelParameters, tau_value: complex, tol: float = DEFAULT_REGULARITY_TOL
) -> np.ndarray:
    """Assemble the dense ``d_L x d_L`` matrix at dynamical parameter ``tau_value``."""
    th = _Theta(params, tol)
    L = params.L
    g = params.gamma
    T = complex(tau_value)
    x = [None, *params.x]  # 1-based
    mu = [None, *params.mu]
    mu1 = mu[1]
    idx = range(1, L + 1)
    npair = L * (L - 1) // 2
    d = dim(L)
    om = np.zeros((d, d), dtype=complex)

    t_L1 = th.den(T + (L + 1) * g, "[tau + (L+1)gamma]")
    t_g, t_2g = th(g), th(2 * g)

    # recurring factors, 1-based tables
    xm = {(a, k): th(x[a] - mu[k]) for a in idx for k in idx}
    xmg = {(a, k): th.den(x[a] - mu[k] + g, "[x_l - mu_k + gamma]") for a in idx for k in idx}
    m1g = {k: th.den(mu1 - mu[k] - g, "[mu_1 - mu_k - gamma]") for k in idx}
    xm1_2g = {a: th.den(x[a] - mu1 + 2 * g, "[x_k - mu_1 + 2gamma]") for a in idx}
    xm1_3g = {a: th(x[a] - mu1 + 3 * g) for a in idx}
    ratio_x = {
        (a, k): th(x[a] - x[k] + g) / th.den(x[a] - x[k], "[x_i - x_j]")
        for a in idx
        for k in idx
        if a != k
    }
    # [x_k - mu1] / [x_k - mu1 + gamma]
    q1 = {k: xm[k, 1] / xmg[k, 1] for k in idx}
    prod_xm = {a: math.prod(xm[a, k] for k in idx) for a in idx}
    prod_m1g = math.prod(m1g[k] for k in idx)

    def rx(a, skip):
        return math.prod(ratio_x[a, k] for k in idx if k != a and k not in skip)

    def q1_except(skip):
        return math.prod(q1[k] for k in idx if k not in skip)

    o_I, o_G = L, L + npair  # block offsets

    # F, Fbar, G (diagonal)
    f_const = t_2g * math.prod(m1g[k] for k in idx if k != 1)
    fb_const = th(T + L * g) / t_L1
    g_const = th(T + (L + 2) * g) / t_L1 * math.prod(th(mu1 - mu[k] - 2 * g) for k in idx)
    for a in idx:
        qa = q1_except({a})
        om[a - 1, a - 1] = f_const * qa
        om[o_G + a - 1, a - 1] = fb_const * math.prod(xmg[a, k] for k in idx) * qa
        om[a - 1, o_G + a - 1] = g_const * math.prod(
            xmg[k, 1] / xm1_2g[k] for k in idx if k != a
        )

    # Gbar (full)
    for a in idx:
        for b in idx:
            tail = xm1_2g[b] / xmg[b, 1] * prod_xm[b]
            if a == b:
                val = -tail * rx(a, ())
            else:
                val = (
                    t_g
                    * th(x[a] - x[b] + T + (L + 1) * g)
                    / (t_L1 * th.den(x[a] - x[b], "[x_i - x_j]"))
                    * tail
                    * rx(b, {a})
                )
            om[o_G + a - 1, o_G + b - 1] = val

    plist = pairs(L)
    col = {rs: o_I + pair_index(*rs, L) - 1 for rs in plist}

    # I and Jbar (two entries per pair column)
    for r, s in plist:
        c = col[r, s]
        for a, other in ((r, s), (s, r)):
            xo = x[other]
            # [mu1 - x - gamma] = -[x - mu1 + gamma], [mu1 - x - 2gamma] = -[x - mu1 + 2gamma]
            om[a - 1, c] = (
                t_g
                * th(mu1 - xo + T + L * g)
                * th(mu1 - xo - 3 * g)
                / (t_L1 * xmg[other, 1] * xm1_2g[other])
                * prod_xm[other]
                * rx(other, {r, s})
            )
            om[o_G + a - 1, c] = (
                t_g
                * th(mu1 - xo + T + (L - 1) * g)
                / (t_L1 * xmg[other, 1])
                * rx(other, {r, s})
                * math.prod(xmg[a, k] * xm[other, k] / m1g[k] for k in idx)
            )

    # Ibar (two entries per pair row)
    for l, m in plist:
        row = col[l, m]
        q = q1_except({l, m})
        om[row, l - 1] = (
            t_2g * th(x[m] - mu1 + T + (L + 2) * g) / (t_L1 * xmg[m, 1]) * prod_m1g * q
        )
        om[row, m - 1] = (
            -t_2g
            * th(x[l] - mu1 + T + (L + 2) * g)
            / (t_L1 * xmg[l, 1])
            * q
            * math.prod(m1g[k] * xmg[m, k] / xmg[l, k] for k in idx)
        )

    # K
    shift = {(l, m): math.prod(xmg[m, k] / xmg[l, k] for k in idx) for l, m in plist}
    for l, m in plist:
        row = col[l, m]
        om[row, row] = xm1_3g[l] / xmg[l, 1] * prod_xm[l] * shift[l, m] * rx(
            l, {m}
        ) - xm1_3g[m] / xmg[m, 1] * prod_xm[m] * rx(m, {l})
        for r, s in plist:
            if (r, s) == (l, m):
                continue
            if l == r:
                a, b, t = m, s, s
            elif l == s:
                a, b, t = m, r, r
            elif m == r:
                a, b, t = l, s, s
            elif m == s:
                a, b, t = l, r, r
            else:
                continue
            # a: the unshared index of (l, m); t: the unshared index of (r, s)
            val = (
                t_g
                * th(x[a] - x[t] + T + (L + 1) * g)
                * xm1_3g[t]
                / (t_L1 * xmg[t, 1])
                * prod_xm[t]
                * rx(t, {l, m})
            )
            if a == m:
                val /= th.den(x[m] - x[t], "[x_i - x_j]")
            else:
                val *= shift[l, m] / th.den(x[t] - x[l], "[x_i - x_j]")
            om[row, col[r, s]] = val
    return om


def prefactor(params: ModelParameters, tol: float = DEFAULT_REGULARITY_TOL) -> LogDet:
    """Scalar factor multiplying ``det(Omega) / det(Omega_red)``, in log form."""
    th = _Theta(params, tol)
    L, g, t = params.L, params.gamma, params.tau
    out = LogDet(0.0, (-1) ** L + 0j)
    ratio1 = LogDet.of(th((L + 1) * g) / th.den(t + (L + 2) * g, "[tau + (L+2)gamma]"))
    ratio2 = LogDet.of(th(t + (L + 1) * g) / th.den(L * g, "[L gamma]"))
    out = out * ratio1 ** dim(L - 1) * ratio2 ** dim(L)
    for xi in params.x:
        for mj in params.mu:
            out = out * LogDet.of(th(xi - mj))
    for k in range(1, L + 1):
        out = out * LogDet.of(th(k * g) / th.den(t + k * g, f"[tau + {k}gamma]"))
    shift = sum(xl - ml for xl, ml in zip(params.x, params.mu))
    out = out * LogDet.of(
        th(shift + (L + 1) * g)
        / th.den(shift + t + (L + 2) * g, "[sum(x - mu) + tau + (L+2)gamma]")
    )
    return out


def partition_function_det_log(
    params: ModelParameters, tol: float = DEFAULT_REGULARITY_TOL
) -> LogDet:
    num = log_det(build_omega(params, params.tau, tol))
    den = log_det(build_omega(params, -params.gamma, tol))
    return prefactor(params, tol) * num / den


def partition_function_det(params: ModelParameters, tol: float = DEFAULT_REGULARITY_TOL) -> complex:
    """Partition function from the determinant representation."""
    return partition_function_det_log(params, tol).value()
