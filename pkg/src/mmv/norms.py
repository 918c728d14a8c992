"""Trace functional, unitarily invariant norms and the Hölder check."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matcore import as_matrix, singular_values
from .report import InequalityReport, report

__all__ = [
    "InvalidP",
    "ExponentMismatch",
    "NormKind",
    "OPERATOR",
    "FROBENIUS",
    "schatten",
    "kyfan",
    "parse_norm",
    "tau",
    "norm",
    "norm_from_singular_values",
    "check_hoelder",
]


class InvalidP(ValueError):
    pass


class ExponentMismatch(ValueError):
    pass


@dataclass(frozen=True)
class NormKind:
    """One member of the Schatten / Ky Fan families.

    ``variant`` is ``"schatten"`` (with ``param = p >= 1``), ``"kyfan"``
    (with integer ``param = k``), ``"operator"`` or ``"frobenius"``.
    """

    variant: str
    param: float | int | None = None

    def __post_init__(self):
        if self.variant == "schatten":
            p = self.param
            if p is None or not math.isfinite(p) or p < 1:
                raise InvalidP(f"Schatten exponent must be a finite p >= 1, got {p!r}")
        elif self.variant == "kyfan":
            k = self.param
            if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 1:
                raise ValueError(f"Ky Fan index must be an integer k >= 1, got {k!r}")
        elif self.variant in ("operator", "frobenius"):
            if self.param is not None:
                raise ValueError(f"{self.variant} norm takes no parameter")
        else:
            raise ValueError(f"unknown norm variant {self.variant!r}")

    def __str__(self) -> str:
        if self.variant == "operator":
            return "op"
        if self.variant == "frobenius":
            return "fro"
        if self.variant == "schatten":
            return f"s:{self.param:g}"
        return f"kf:{self.param}"


OPERATOR = NormKind("operator")
FROBENIUS = NormKind("frobenius")


def schatten(p: float) -> NormKind:
    return NormKind("schatten", float(p))


def kyfan(k: int) -> NormKind:
    return NormKind("kyfan", int(k))


def parse_norm(text: str) -> NormKind:
    """Parse the CLI syntax ``op``, ``fro``, ``s:<p>`` or ``kf:<k>``."""
    text = text.strip()
    if text == "op":
        return OPERATOR
    if text == "fro":
        return FROBENIUS
    head, sep, arg = text.partition(":")
    if sep and head == "s":
        try:
            p = float(arg)
        except ValueError:
            raise ValueError(f"bad Schatten exponent in {text!r}") from None
        return schatten(p)
    if sep and head == "kf":
        try:
            k = int(arg)
        except ValueError:
            raise ValueError(f"bad Ky Fan index in {text!r}") from None
        return kyfan(k)
    raise ValueError(f"unknown norm {text!r}; expected op, fro, s:<p> or kf:<k>")


def tau(X) -> float:
    """``Re Tr(X)``."""
    return float(np.trace(as_matrix(X)).real)


def norm_from_singular_values(s: np.ndarray, kind: NormKind) -> float:
    if kind.variant == "operator":
        return float(s[0])
    if kind.variant == "kyfan":
        if kind.param > s.shape[0]:
            raise ValueError(f"Ky Fan index {kind.param} exceeds dimension {s.shape[0]}")
        return float(np.sum(s[: kind.param]))
    p = 2.0 if kind.variant == "frobenius" else kind.param
    if s[0] == 0.0:
        return 0.0
    # scale by s_1 so large p cannot overflow
    return float(s[0] * np.sum((s / s[0]) ** p) ** (1.0 / p))


def norm(X, kind: NormKind) -> float:
    """Unitarily invariant norm of ``X``, evaluated from its singular values.

    Examples
    --------
    >>> norm(np.diag([3.0, 4.0]), FROBENIUS)
    5.0
    """
    return norm_from_singular_values(singular_values(X), kind)


def _inv(p: float) -> float:
    return 0.0 if math.isinf(p) else 1.0 / p


def _kind(p: float) -> NormKind:
    return OPERATOR if math.isinf(p) else schatten(p)


def check_hoelder(X, Y, p: float, q: float, s: float) -> InequalityReport:
    """Check ``||XY||_s <= ||X||_p ||Y||_q`` for ``1/p + 1/q = 1/s``.

    Exponents may be ``math.inf`` (operator norm).
    """
    for name, v in (("p", p), ("q", q), ("s", s)):
        if not v >= 1:
            raise InvalidP(f"Hölder exponent {name} must be >= 1, got {v!r}")
    if abs(_inv(p) + _inv(q) - _inv(s)) > 1e-12:
        raise ExponentMismatch(f"1/p + 1/q != 1/s for p={p}, q={q}, s={s}")
    X, Y = as_matrix(X, "X"), as_matrix(Y, "Y")
    lhs = norm(X @ Y, _kind(s))
    rhs = norm(X, _kind(p)) * norm(Y, _kind(q))
    return report("hoelder", lhs, rhs, claim="theorem", context={"p": p, "q": q, "s": s})
