"""One checker per inequality.

Theorem checkers (Araki-Lieb-Thirring consequence, the strip bound, Heinz,
the Frobenius chain, the remark quantity) return reports with
``claim="theorem"``; a failing one means a numerical bug.  Conjecture
checkers (Bourin vs Heinz, the Bourin bound, singular-value dominance)
return ``claim="conjecture"`` and a failure is a counterexample.  Theorem
checkers asked about parameters outside the proved range raise unless
``exploratory=True``, in which case they report with
``claim="exploratory"``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import matrix_power, modulus, singular_values
from .means import (
    COMMUTING_TOL,
    MeanPair,
    bourin_mean,
    commutator_defect,
    heinz_sum,
    tau_ab,
    trace_functional,
)
from .norms import FROBENIUS, NormKind, norm, schatten, tau
from .report import InequalityReport, report

__all__ = [
    "InequalityReport",
    "InvalidR",
    "GridOutOfStrip",
    "TOutOfRange",
    "GridSpec",
    "DEFAULT_GRID",
    "ScanReport",
    "check_alt_lemma",
    "check_strip_inequality",
    "check_frobenius_chain",
    "check_heinz",
    "check_bourin_vs_heinz",
    "check_bourin_bound",
    "check_singular_dominance",
    "check_remark_quantity",
    "equality_interval_scan",
    "kyfan_from_reports",
]

STRIP = (0.25, 0.75)


class InvalidR(ValueError):
    pass


class GridOutOfStrip(ValueError):
    pass


class TOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Rectangular grid over part of a vertical strip.

    Real parts: ``re_steps`` equally spaced points in ``[re_min, re_max]``.
    Imaginary parts: ``im_steps`` equally spaced points in
    ``[-im_max, im_max]``.  A single step means the midpoint only.
    """

    re_min: float = 0.25
    re_max: float = 0.75
    re_steps: int = 11
    im_max: float = 5.0
    im_steps: int = 21

    def __post_init__(self):
        if not self.re_min <= self.re_max:
            raise ValueError("re_min must not exceed re_max")
        if self.re_steps < 1 or self.im_steps < 1:
            raise ValueError("grid needs at least one step per axis")
        if self.im_max < 0:
            raise ValueError("im_max must be non-negative")

    def real_parts(self) -> np.ndarray:
        if self.re_steps == 1:
            return np.array([0.5 * (self.re_min + self.re_max)])
        return np.linspace(self.re_min, self.re_max, self.re_steps)

    def imag_parts(self) -> np.ndarray:
        if self.im_steps == 1:
            return np.array([0.0])
        return np.linspace(-self.im_max, self.im_max, self.im_steps)

    def points(self) -> list[complex]:
        """Grid points in row-major order (real part outer, imaginary inner)."""
        return [complex(x, y) for x in self.real_parts() for y in self.imag_parts()]

    def in_strip(self) -> bool:
        return STRIP[0] <= self.re_min and self.re_max <= STRIP[1]


DEFAULT_GRID = GridSpec()


def _claim_for_t(t: float, exploratory: bool, name: str) -> str:
    if STRIP[0] <= t <= STRIP[1]:
        return "theorem"
    if exploratory:
        return "exploratory"
    raise TOutOfRange(f"{name} is proved for t in [1/4, 3/4]; got t={t} (pass exploratory=True)")


def check_alt_lemma(pair: MeanPair, r: float) -> InequalityReport:
    """``||A^(1/r) B^(1/r)||_r <= tau(AB)^(1/r)`` for ``r >= 2``."""
    if not r >= 2:
        raise InvalidR(f"r must be >= 2, got {r}")
    X = matrix_power(pair.A, 1.0 / r) @ matrix_power(pair.B, 1.0 / r)
    lhs = norm(X, schatten(r))
    rhs = max(tau_ab(pair), 0.0) ** (1.0 / r)
    return report("alt_lemma", lhs, rhs, context={"r": float(r)})


def check_strip_inequality(pair: MeanPair, grid: GridSpec = DEFAULT_GRID, exploratory: bool = False) -> list[InequalityReport]:
    """``f(z) <= tau(AB)`` at every grid point, in row-major grid order."""
    if grid.in_strip():
        claim = "theorem"
    elif exploratory:
        claim = "exploratory"
    else:
        raise GridOutOfStrip(
            f"grid real range [{grid.re_min}, {grid.re_max}] leaves [1/4, 3/4] (pass exploratory=True)"
        )
    bound = tau_ab(pair)
    return [
        report("strip", trace_functional(pair, z), bound, claim=claim, context={"z": z})
        for z in grid.points()
    ]


def check_frobenius_chain(pair: MeanPair, t: float, exploratory: bool = False) -> list[InequalityReport]:
    """``||b_t||_2 <= ||h_t||_2 <= ||A + B||_2``."""
    claim = _claim_for_t(t, exploratory, "the Frobenius chain")
    nb = norm(bourin_mean(pair, t), FROBENIUS)
    nh = norm(heinz_sum(pair, t), FROBENIUS)
    ns = norm(pair.A.data + pair.B.data, FROBENIUS)
    ctx = {"t": float(t), "norm": "fro"}
    return [
        report("chain_bourin_heinz", nb, nh, claim=claim, context=ctx),
        report("chain_heinz_sum", nh, ns, claim=claim, context=ctx),
    ]


def check_heinz(pair: MeanPair, t: float, kind: NormKind) -> InequalityReport:
    lhs = norm(heinz_sum(pair, t), kind)
    rhs = norm(pair.A.data + pair.B.data, kind)
    return report("heinz", lhs, rhs, context={"t": float(t), "norm": str(kind)})


def check_bourin_vs_heinz(pair: MeanPair, t: float, kind: NormKind) -> InequalityReport:
    """``|||b_t||| <= |||h_t|||``; ``holds=False`` is a counterexample, not an error."""
    lhs = norm(bourin_mean(pair, t), kind)
    rhs = norm(heinz_sum(pair, t), kind)
    return report("bourin_vs_heinz", lhs, rhs, claim="conjecture", context={"t": float(t), "norm": str(kind)})


def check_bourin_bound(pair: MeanPair, t: float, kind: NormKind) -> InequalityReport:
    """``|||b_t||| <= |||A + B|||``; ``holds=False`` is a counterexample, not an error."""
    lhs = norm(bourin_mean(pair, t), kind)
    rhs = norm(pair.A.data + pair.B.data, kind)
    return report("bourin_bound", lhs, rhs, claim="conjecture", context={"t": float(t), "norm": str(kind)})


def check_singular_dominance(pair: MeanPair, t: float) -> list[InequalityReport]:
    """``s_j(b_t) <= s_j(A + B)`` for every ``j``, one report per index."""
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0, 1), got {t}")
    sb = singular_values(bourin_mean(pair, t))
    ss = singular_values(pair.A.data + pair.B.data)
    return [
        report("singular_dominance", sb[j], ss[j], claim="conjecture", context={"t": float(t), "j": j + 1})
        for j in range(pair.n)
    ]


def check_remark_quantity(pair: MeanPair, t: float, exploratory: bool = False) -> InequalityReport:
    """``tau(|B^(1/4) A^t B^t A^(1-t) B^(3/4-t)|) <= Tr(AB)``."""
    claim = _claim_for_t(t, exploratory, "the remark bound")
    A, B = pair.A, pair.B
    X = matrix_power(B, 0.25) @ matrix_power(A, t) @ matrix_power(B, t)
    X = X @ matrix_power(A, 1 - t) @ matrix_power(B, 0.75 - t)
    lhs = tau(modulus(X).data)
    return report("remark", lhs, tau_ab(pair), claim=claim, context={"t": float(t)})


@dataclass(frozen=True)
class ScanReport:
    """Result of :func:`equality_interval_scan`.

    ``margins[i] = tau(AB) - f(ts[i])``.  ``verdict`` is True when the
    commute-or-strict dichotomy is observed: for a commuting pair every
    margin vanishes to ``1e-8 tau(AB)``; otherwise the minimum margin over
    the part of the grid inside ``[1/4, 3/4]`` exceeds ``1e-9 tau(AB)``.
    """

    ts: np.ndarray
    margins: np.ndarray
    tau_ab: float
    defect: float
    commuting: bool
    min_margin: float
    argmin: float
    min_margin_strip: float
    verdict: bool


def equality_interval_scan(pair: MeanPair, t_min: float = 0.25, t_max: float = 0.75, steps: int = 101) -> ScanReport:
    if not 0.0 <= t_min <= t_max <= 1.0:
        raise ValueError(f"scan interval [{t_min}, {t_max}] must lie in [0, 1]")
    if steps < 1:
        raise ValueError("steps must be positive")
    ts = np.linspace(t_min, t_max, steps) if steps > 1 else np.array([t_min])
    bound = tau_ab(pair)
    margins = np.array([bound - trace_functional(pair, t) for t in ts])
    defect = commutator_defect(pair)
    commuting = defect <= COMMUTING_TOL
    i = int(np.argmin(margins))
    inside = (ts >= STRIP[0]) & (ts <= STRIP[1])
    min_strip = float(margins[inside].min()) if inside.any() else float("nan")
    if commuting:
        verdict = bool(np.all(np.abs(margins) <= 1e-8 * abs(bound)))
    else:
        verdict = bool(inside.any() and min_strip > 1e-9 * abs(bound))
    return ScanReport(ts, margins, bound, defect, commuting, float(margins[i]), float(ts[i]), min_strip, verdict)


def kyfan_from_reports(reports: list[InequalityReport], k: int) -> float:
    """Sum of the first ``k`` left-hand sides of :func:`check_singular_dominance`."""
    return float(sum(r.lhs for r in reports[:k]))
