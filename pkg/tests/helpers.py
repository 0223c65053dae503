"""Seeded parameter draws shared by the test modules."""

from __future__ import annotations

import numpy as np

from ellsos import ModelParameters, regularity


def rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b))


def random_params(rng: np.random.Generator, L: int, p: float = 0.3116) -> ModelParameters:
    """Complex parameters of table-like scale; redraws until regular."""

    def cz(lo, hi, spread, size=None):
        return rng.uniform(lo, hi, size) + 1j * rng.uniform(-spread, spread, size)

    while True:
        prm = ModelParameters(
            L=L,
            p=p,
            gamma=cz(0.3, 0.8, 0.1),
            tau=cz(0.1, 0.9, 0.2),
            x=list(cz(0.0, 3.0, 0.3, L)),
            mu=list(cz(0.0, 3.0, 0.3, L)),
            warn=False,
        )
        if not regularity(prm):
            return prm
