"""Face weights, domain-wall boundary heights and exhaustive enumeration.

Heights are stored as integer offsets ``n`` with ``h = tau + n * gamma`` on an
``(L+1) x (L+1)`` grid.  Grid indices here are 0-based: ``grid[i][j]`` is the
site ``(i+1, j+1)``.  Face ``(i, j)`` has bottom-left corner ``grid[i][j]``,
bottom-right ``grid[i][j+1]``, top-left ``grid[i+1][j]`` and top-right
``grid[i+1][j+1]``.

Lattice convention (fixed by agreement with the determinant formula and the
reference L = 2..5 values, see ``docs/conventions.md``):

* spectral argument of face ``(i, j)``: ``u = x_i - mu_j``;
* dynamical argument of every weight: ``tau_loc = h_topleft + gamma``.
"""

from __future__ import annotations

from typing import Callable, Iterator, NamedTuple

from ellsos.errors import DivisionByZeroTheta, EnumerationTooLarge
from ellsos.params import DEFAULT_REGULARITY_TOL, ModelParameters

MAX_ENUM_L = 7


class FacePattern(NamedTuple):
    """Corner offsets relative to the bottom-left corner."""

    tl: int
    tr: int
    br: int


ADMISSIBLE = frozenset(
    FacePattern(*t)
    for t in [(1, 0, -1), (-1, 0, 1), (1, 2, 1), (-1, -2, -1), (1, 0, 1), (-1, 0, -1)]
)


def classify_face(n_bl: int, n_br: int, n_tl: int, n_tr: int) -> FacePattern | None:
    """Return the face pattern, or ``None`` if the corners are inadmissible."""
    pat = FacePattern(n_tl - n_bl, n_tr - n_bl, n_br - n_bl)
    return pat if pat in ADMISSIBLE else None


def face_weight(
    params: ModelParameters,
    pattern: FacePattern,
    local_height: complex,
    u: complex,
    tol: float = DEFAULT_REGULARITY_TOL,
) -> complex:
    """Boltzmann weight of one face.

    The six weights, with ``s = +-1`` the sign of ``pattern.tl``::

        (s, 0, -s)   [u + gamma]
        (s, 2s, s)   [t + s gamma] [u] / [t]
        (s, 0, s)    [t + s u] [gamma] / [t]

    where ``t = local_height`` (see :func:`local_height`).
    """
    th = params.theta
    g = params.gamma
    if pattern.tr == 0 and pattern.tl == -pattern.br:
        return th(u + g)
    sign = pattern.tl
    den, scale = th.theta_with_scale(local_height)
    if abs(den) < tol * scale:
        raise DivisionByZeroTheta("[tau_loc]", den)
    if pattern.tr == 2 * sign:
        return th(local_height + sign * g) * th(u) / den
    return th(local_height + sign * u) * th(g) / den


def spectral_argument(params: ModelParameters, i: int, j: int) -> complex:
    """Spectral argument of face ``(i, j)`` (1-based): ``x_i - mu_j``."""
    return params.x[i - 1] - params.mu[j - 1]


def local_height(params: ModelParameters, pattern: FacePattern, n_bl: int) -> complex:
    """Dynamical argument of a face: top-left height plus ``gamma``."""
    return params.tau + (n_bl + pattern.tl + 1) * params.gamma


def boundary_grid(L: int) -> list[list[int | None]]:
    """Grid with domain-wall boundary offsets filled in, interior ``None``."""
    grid: list[list[int | None]] = [[None] * (L + 1) for _ in range(L + 1)]
    for j in range(L + 1):
        grid[0][j] = grid[j][0] = L - j
        grid[L][j] = grid[j][L] = j
    return grid


def _check_L(L: int) -> None:
    if L < 1:
        raise ValueError("L must be positive")
    if L > MAX_ENUM_L:
        raise EnumerationTooLarge(f"enumeration limited to L <= {MAX_ENUM_L}, got L={L}")


FaceFactor = Callable[[int, int, FacePattern, int], complex]


def _search(L: int, face_factor: FaceFactor, visit: Callable | None = None) -> complex:
    """Depth-first sum over admissible configurations.

    Interior sites are filled row by row; each face is weighted as soon as
    its last corner is fixed.  ``visit`` receives every complete grid.
    """
    grid = boundary_grid(L)
    sites = [(i, j) for i in range(1, L) for j in range(1, L)]
    order = {s: k for k, s in enumerate(sites)}

    # faces completed when site k is fixed; index -1 for all-boundary faces
    closes: dict[int, list[tuple[int, int]]] = {}
    for i in range(L):
        for j in range(L):
            corners = [(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)]
            last = max((order.get(c, -1) for c in corners), default=-1)
            closes.setdefault(last, []).append((i, j))

    def weigh(faces, acc):
        for i, j in faces:
            pat = classify_face(grid[i][j], grid[i][j + 1], grid[i + 1][j], grid[i + 1][j + 1])
            if pat is None:
                return None
            acc *= face_factor(i, j, pat, grid[i][j])
        return acc

    start = weigh(closes.get(-1, []), 1 + 0j)
    if start is None:
        return 0j

    def rec(k: int, acc: complex) -> complex:
        if k == len(sites):
            if visit is not None:
                visit([row[:] for row in grid])
            return acc
        i, j = sites[k]
        south, west = grid[i - 1][j], grid[i][j - 1]
        total = 0j
        for v in (south - 1, south + 1):
            if abs(v - west) != 1:
                continue
            # must still be able to reach the fixed top row and right column
            if abs(v - grid[L][j]) > L - i or abs(v - grid[i][L]) > L - j:
                continue
            grid[i][j] = v
            w = weigh(closes.get(k, []), acc)
            if w is not None:
                total += rec(k + 1, w)
        grid[i][j] = None
        return total

    return rec(0, start)


def iter_configurations(L: int) -> Iterator[list[list[int]]]:
    """All admissible domain-wall height grids (offsets), as nested lists."""
    _check_L(L)
    found: list = []
    _search(L, lambda i, j, pat, n: 1, found.append)
    yield from found


def count_states(L: int) -> int:
    """Number of admissible domain-wall height configurations."""
    _check_L(L)
    return int(round(_search(L, lambda i, j, pat, n: 1).real))


def enumerate_Z(
    params: ModelParameters,
    face_factor: FaceFactor | None = None,
    tol: float = DEFAULT_REGULARITY_TOL,
) -> complex:
    """Partition function by brute-force summation over height configurations.

    ``face_factor(i, j, pattern, n_bl)`` overrides the physical weights
    (0-based face indices); it exists for structural tests.
    """
    L = params.L
    _check_L(L)
    if face_factor is None:
        cache: dict[tuple[FacePattern, int, int, int], complex] = {}

        def face_factor(i, j, pat, n_bl):
            key = (pat, n_bl, i, j)
            w = cache.get(key)
            if w is None:
                w = face_weight(
                    params,
                    pat,
                    local_height(params, pat, n_bl),
                    spectral_argument(params, i + 1, j + 1),
                    tol,
                )
                cache[key] = w
            return w

    return _search(L, face_factor)
