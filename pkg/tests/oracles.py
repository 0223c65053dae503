"""Independent reference implementations used only by the tests.

Nothing here imports the package's numerics: theta values come from an
arbitrary-precision direct summation, determinants from cofactor expansion,
and every formula is a straight-line transcription written separately from
the library code.
"""

from __future__ import annotations

import itertools
import math

import mpmath as mp

mp.mp.dps = 50


def theta(x, p, terms: int = 40):
    """``1/2 sum_{n=-N}^{N-1} e^{i pi (n - 1/2)} p^{(n+1/2)^2} e^{-(2n+1)x}``."""
    x = mp.mpc(x)
    p = mp.mpf(p)
    s = mp.mpc(0)
    for n in range(-terms, terms):
        s += mp.exp(1j * mp.pi * (n - mp.mpf(1) / 2)) * p ** ((n + mp.mpf(1) / 2) ** 2) * mp.exp(
            -(2 * n + 1) * x
        )
    return s / 2


def theta_jacobi(x, p):
    """Same function through mpmath's Jacobi theta_1 at imaginary argument."""
    return mp.jtheta(1, 1j * mp.mpc(x), mp.mpf(p)) / 2


def cofactor_det(m):
    """Laplace expansion along the first row (exponential cost, n <= 7)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


# --------------------------------------------------------------- lattice


def boundary(L):
    """Height offsets on the (L+1)x(L+1) grid, ``None`` for interior sites."""
    n = [[None] * (L + 1) for _ in range(L + 1)]
    for j in range(L + 1):
        n[0][j] = n[j][0] = L - j
        n[L][j] = n[j][L] = j
    return n


def brute_force_configurations(L):
    """Every interior assignment from the box 0..L, filtered by adjacency."""
    base = boundary(L)
    interior = [(i, j) for i in range(1, L) for j in range(1, L)]
    for values in itertools.product(range(L + 1), repeat=len(interior)):
        n = [row[:] for row in base]
        for (i, j), v in zip(interior, values):
            n[i][j] = v
        ok = all(
            abs(n[i][j] - n[i][j + 1]) == 1 and abs(n[j][i] - n[j + 1][i]) == 1
            for i in range(L + 1)
            for j in range(L)
        )
        if ok:
            yield n


def face_weight(bl, br, tl, tr, tau, gamma, u, p):
    """Weight of one face from its four corner offsets.

    Reference height is the top-left corner shifted by one gamma; the
    spectral argument ``u`` is ``x_i - mu_j``.
    """
    th = lambda z: theta(z, p)  # noqa: E731
    t_loc = tau + (tl + 1) * gamma
    d_tl, d_tr, d_br = tl - bl, tr - bl, br - bl
    if d_tr == 0 and d_tl == -d_br:
        return th(u + gamma)
    if d_tl == d_br and d_tr == 2 * d_tl:
        return th(t_loc + d_tl * gamma) * th(u) / th(t_loc)
    if d_tl == d_br and d_tr == 0:
        return th(t_loc + d_tl * u) * th(gamma) / th(t_loc)
    raise ValueError("inadmissible face")


def partition_function(L, p, gamma, tau, x, mu):
    """Brute-force sum over all configurations; feasible for L <= 3."""
    total = mp.mpc(0)
    for n in brute_force_configurations(L):
        w = mp.mpc(1)
        for i in range(L):
            for j in range(L):
                w *= face_weight(
                    n[i][j], n[i][j + 1], n[i + 1][j], n[i + 1][j + 1],
                    tau, gamma, x[i] - mu[j], p,
                )
        total += w
    return total


def closed_form_L1(p, gamma, tau, x1, mu1, sign=+1):
    """``[gamma][tau + gamma + sign*(mu_1 - x_1)] / [tau + gamma]``."""
    th = lambda z: theta(z, p)  # noqa: E731
    return th(gamma) * th(tau + gamma + sign * (mu1 - x1)) / th(tau + gamma)


# --------------------------------------------------------------- determinant


def d(L):
    return L * (L + 3) // 2


def prefactor(L, p, gamma, tau, x, mu):
    th = lambda z: theta(z, p)  # noqa: E731
    out = (-1) ** L
    out *= (th((L + 1) * gamma) / th(tau + (L + 2) * gamma)) ** d(L - 1)
    out *= (th(tau + (L + 1) * gamma) / th(L * gamma)) ** d(L)
    for i in range(L):
        for j in range(L):
            out *= th(x[i] - mu[j])
    for k in range(1, L + 1):
        out *= th(k * gamma) / th(tau + k * gamma)
    s = sum(x[l] - mu[l] for l in range(L))
    out *= th(s + (L + 1) * gamma) / th(s + tau + (L + 2) * gamma)
    return out


def f_diag(a, L, p, gamma, x, mu):
    """Diagonal entry ``a`` (1-based) of the top-left block."""
    th = lambda z: theta(z, p)  # noqa: E731
    out = th(2 * gamma)
    for k in range(2, L + 1):
        out *= th(mu[0] - mu[k - 1] - gamma)
    for k in range(1, L + 1):
        if k != a:
            out *= th(x[k - 1] - mu[0]) / th(x[k - 1] - mu[0] + gamma)
    return out


# --------------------------------------------------------------- coefficients


def coeffs_a(L, p, gamma, tau, x, mu, x0, n_prefactor="gamma"):
    """Type-A coefficients; ``n_prefactor`` picks [gamma] or [tau] in N_i."""
    th = lambda z: theta(z, p)  # noqa: E731
    m0 = th(tau + gamma) / th(tau + (L + 1) * gamma)
    for j in range(L):
        m0 *= th(x0 - mu[j])
    n0 = -th(tau + 2 * gamma) / th(tau + (L + 2) * gamma)
    for j in range(L):
        n0 *= th(x0 - mu[j] + gamma) * th(x[j] - x0 + gamma) / th(x[j] - x0)
    lead = th(gamma) if n_prefactor == "gamma" else th(tau)
    n = []
    for i in range(L):
        v = lead * th(tau + 2 * gamma + x0 - x[i]) / (th(tau + (L + 2) * gamma) * th(x[i] - x0))
        for j in range(L):
            v *= th(x[i] - mu[j] + gamma)
            if j != i:
                v *= th(x[j] - x[i] + gamma) / th(x[j] - x[i])
        n.append(v)
    return m0, n0, n


def coeffs_d(L, p, gamma, tau, x, mu, xb):
    th = lambda z: theta(z, p)  # noqa: E731
    m0 = mp.mpc(1)
    n0 = mp.mpc(-1)
    for j in range(L):
        m0 *= th(xb - mu[j] + gamma)
        n0 *= th(xb - mu[j]) * th(xb - x[j] + gamma) / th(xb - x[j])
    n = []
    for i in range(L):
        v = th(gamma) * th(tau + (L + 1) * gamma + xb - x[i]) / (th(xb - x[i]) * th(tau + (L + 1) * gamma))
        for j in range(L):
            v *= th(x[i] - mu[j])
            if j != i:
                v *= th(x[i] - x[j] + gamma) / th(x[i] - x[j])
        n.append(v)
    return m0, n0, n


def coeffs_ad(L, p, gamma, tau, x, mu, x0, xb):
    th = lambda z: theta(z, p)  # noqa: E731
    first = mp.mpc(1)
    second = mp.mpc(1)
    for j in range(L):
        first *= (
            th(x0 - x[j] + gamma) * th(x0 - mu[j]) * th(xb - mu[j] + gamma)
            / (th(x0 - x[j]) * th(x0 - mu[j] + gamma))
        )
        second *= th(xb - x[j] + gamma) * th(xb - mu[j]) / th(xb - x[j])
    m0 = first - second
    n, nb = [], []
    for i in range(L):
        v = -th(gamma) * th(x0 - x[i] + tau + (L + 1) * gamma) / (th(tau + (L + 1) * gamma) * th(x0 - x[i]))
        w = th(gamma) * th(xb - x[i] + tau + (L + 1) * gamma) / (th(tau + (L + 1) * gamma) * th(xb - x[i]))
        for j in range(L):
            v *= th(x[i] - mu[j]) * th(xb - mu[j] + gamma) / th(x0 - mu[j] + gamma)
            w *= th(x[i] - mu[j])
            if j != i:
                r = th(x[i] - x[j] + gamma) / th(x[i] - x[j])
                v *= r
                w *= r
        n.append(v)
        nb.append(w)
    return m0, n, nb


def asm_count(L):
    """Number of L x L alternating sign matrices, prod (3k+1)!/(L+k)!."""
    num = math.prod(math.factorial(3 * k + 1) for k in range(L))
    den = math.prod(math.factorial(L + k) for k in range(L))
    return num // den
