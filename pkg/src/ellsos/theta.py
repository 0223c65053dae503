"""Odd Jacobi theta function ``[x]`` at a fixed real nome.

The function is defined by the bilateral series

    [x] = 1/2 * sum_n (-1)**(n - 1/2) * p**((n + 1/2)**2) * exp(-(2n + 1) x)

with the branch ``(-1)**(n - 1/2) = exp(i*pi*(n - 1/2))``.  Pairing ``n`` with
``-n - 1`` gives the form that is actually summed here,

    [x] = i * sum_{n >= 0} (-1)**n * p**((n + 1/2)**2) * sinh((2n + 1) x),

so ``[x]`` is odd, purely imaginary on the real axis, and satisfies
``[x + i*pi] = -[x]`` and ``[x + ln p] = -exp(-2x) [x]``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ellsos.errors import NonConvergence, ThetaOverflow

# exp() of anything larger overflows a double
_MAX_EXPONENT = 709.0


@dataclass(frozen=True)
class EllipticNome:
    """Real elliptic nome ``0 < p < 1``."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if not (0.0 < p < 1.0):
            raise ValueError(f"nome out of range: p={self.p!r} (need 0 < p < 1)")
        object.__setattr__(self, "p", p)

    @property
    def log(self) -> float:
        return math.log(self.p)


@dataclass(frozen=True)
class ThetaEvaluator:
    """Evaluate ``[x]`` with adaptive truncation of the pair series.

    Pairs ``(n, -n-1)`` are summed outward from ``n = 0``.  Summation stops
    once two consecutive pairs fall below ``rel_tol`` times the largest pair
    seen so far.  ``max_terms`` caps the number of pairs.
    """

    nome: EllipticNome
    rel_tol: float = 1e-16
    max_terms: int = 64

    def __post_init__(self):
        if not isinstance(self.nome, EllipticNome):
            object.__setattr__(self, "nome", EllipticNome(self.nome))
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")

    @property
    def p(self) -> float:
        return self.nome.p

    @property
    def max_abs_real(self) -> float:
        """Largest ``|Re x|`` accepted by :meth:`theta`."""
        return (self.max_terms + 0.5) * abs(self.nome.log) / 4.0

    def theta_with_scale(self, x: complex) -> tuple[complex, float]:
        """Return ``([x], scale)`` where ``scale`` is the largest term modulus.

        ``scale`` is the modulus of the largest single exponential term
        ``p**((n+1/2)**2) * exp(+-(2n+1) x) / 2`` that was retained.
        """
        x = complex(x)
        if abs(x.real) > self.max_abs_real:
            raise ThetaOverflow(
                f"|Re x| = {abs(x.real):.6g} exceeds the supported range "
                f"{self.max_abs_real:.6g} for p={self.p} and max_terms={self.max_terms}"
            )
        logp = self.nome.log
        total = 0j
        largest_pair = 0.0
        scale = 0.0
        quiet = 0
        for n in range(self.max_terms):
            k = 2 * n + 1
            base = (n + 0.5) ** 2 * logp
            e_plus = base + k * x
            e_minus = base - k * x
            if e_plus.real > _MAX_EXPONENT or e_minus.real > _MAX_EXPONENT:
                raise ThetaOverflow(f"series term overflows at n={n} for x={x}")
            t_plus = cmath.exp(e_plus)
            t_minus = cmath.exp(e_minus)
            pair = 0.5 * (t_plus - t_minus)
            total += -pair if n % 2 else pair
            size = abs(t_plus) + abs(t_minus)
            scale = max(scale, 0.5 * max(abs(t_plus), abs(t_minus)))
            if size > largest_pair:
                largest_pair = size
                quiet = 0
            elif size < self.rel_tol * largest_pair:
                quiet += 1
                if quiet == 2:
                    return 1j * total, scale
            else:
                quiet = 0
        raise NonConvergence(
            f"theta series did not converge in {self.max_terms} pairs for x={x}"
        )

    def theta(self, x: complex) -> complex:
        return self.theta_with_scale(x)[0]

    __call__ = theta

    def is_zero(self, x: complex, tol: float) -> bool:
        """True if ``|[x]|`` is below ``tol`` relative to the largest term."""
        if not tol > 0:
            raise ValueError("tol must be positive")
        value, scale = self.theta_with_scale(x)
        return abs(value) < tol * scale


def theta_is_zero(evaluator: ThetaEvaluator, x: complex, tol: float) -> bool:
    return evaluator.is_zero(x, tol)
