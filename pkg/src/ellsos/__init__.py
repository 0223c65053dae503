"""Partition function of the elliptic SOS model with domain-wall boundaries.

Two independent routes are provided: brute-force enumeration of height
configurations (:func:`enumerate_Z`) and a single-determinant formula
(:func:`partition_function_det`).  :mod:`ellsos.funceq` checks numerically
that the determinant route satisfies the model's functional equations.
"""

from ellsos.errors import (
    DegenerateSpectralPoint,
    DivisionByZeroTheta,
    EllSOSError,
    EnumerationTooLarge,
    NonConvergence,
    SingularMatrix,
    ThetaOverflow,
)
from ellsos.theta import EllipticNome, ThetaEvaluator
from ellsos.params import ModelParameters, regularity, replace
from ellsos.lattice import count_states, enumerate_Z
from ellsos.determinant import LogDet, build_omega, log_det, partition_function_det, prefactor

__all__ = [
    "DegenerateSpectralPoint",
    "DivisionByZeroTheta",
    "EllSOSError",
    "EllipticNome",
    "EnumerationTooLarge",
    "LogDet",
    "ModelParameters",
    "NonConvergence",
    "SingularMatrix",
    "ThetaEvaluator",
    "ThetaOverflow",
    "build_omega",
    "count_states",
    "enumerate_Z",
    "log_det",
    "partition_function_det",
    "prefactor",
    "regularity",
    "replace",
]
