"""Bourin and Heinz expressions and the complex trace functional.

For psd ``A, B``::

    b_t(A, B) = A^t B^(1-t) + B^t A^(1-t)
    h_t(A, B) = A^t B^(1-t) + A^(1-t) B^t
    f(z)      = Re Tr(A^z B^z A^(1-z) B^(1-z))
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import HermitianMatrix, as_scalar, hermitian, matrix_power

__all__ = [
    "COMMUTING_TOL",
    "MeanPair",
    "mean_pair",
    "bourin_mean",
    "heinz_sum",
    "trace_functional",
    "trace_functional_complex",
    "tau_ab",
    "commutator_defect",
    "is_commuting",
]

COMMUTING_TOL = 1e-9


@dataclass(frozen=True)
class MeanPair:
    A: HermitianMatrix
    B: HermitianMatrix

    def __post_init__(self):
        if not (self.A.psd and self.B.psd):
            raise ValueError("MeanPair needs psd-flagged matrices; build it with mean_pair()")
        if self.A.n != self.B.n:
            raise ValueError(f"dimension mismatch: {self.A.n} vs {self.B.n}")

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def pd(self) -> bool:
        return not (self.A.is_singular or self.B.is_singular)

    def swapped(self) -> "MeanPair":
        return MeanPair(self.B, self.A)


def mean_pair(A, B) -> MeanPair:
    """Validate two psd matrices of equal size as a :class:`MeanPair`."""
    return MeanPair(hermitian(A, psd=True, name="A"), hermitian(B, psd=True, name="B"))


def _check_t(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    return t


def bourin_mean(pair: MeanPair, t: float) -> np.ndarray:
    t = _check_t(t)
    A, B = pair.A, pair.B
    return matrix_power(A, t) @ matrix_power(B, 1 - t) + matrix_power(B, t) @ matrix_power(A, 1 - t)


def heinz_sum(pair: MeanPair, t: float) -> np.ndarray:
    t = _check_t(t)
    A, B = pair.A, pair.B
    return matrix_power(A, t) @ matrix_power(B, 1 - t) + matrix_power(A, 1 - t) @ matrix_power(B, t)


def trace_functional_complex(pair: MeanPair, z) -> complex:
    """Full ``Tr(A^z B^z A^(1-z) B^(1-z))``; its real part is :func:`trace_functional`."""
    z = as_scalar(z)
    w = 1 - z
    P = matrix_power(pair.A, z) @ matrix_power(pair.B, z)
    P = P @ matrix_power(pair.A, w)
    P = P @ matrix_power(pair.B, w)
    return complex(np.trace(P))


def trace_functional(pair: MeanPair, z) -> float:
    """``f(z) = Re Tr(A^z B^z A^(1-z) B^(1-z))``.

    Raises :class:`~mmv.matcore.SingularNegativePower` when a singular
    factor would need a power with non-positive real part.
    """
    return trace_functional_complex(pair, z).real


def tau_ab(pair: MeanPair) -> float:
    return float(np.trace(pair.A.data @ pair.B.data).real)


def commutator_defect(pair: MeanPair) -> float:
    """``||AB - BA||_F / max(1, ||A||_F ||B||_F)``."""
    A, B = pair.A.data, pair.B.data
    scale = max(1.0, np.linalg.norm(A) * np.linalg.norm(B))
    return float(np.linalg.norm(A @ B - B @ A) / scale)


def is_commuting(pair: MeanPair, tol: float = COMMUTING_TOL) -> bool:
    return commutator_defect(pair) <= tol
