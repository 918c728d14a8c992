"""Sweeps, the two built-in counterexample pairs, random generation and search."""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .matcore import hermitian, save_matrix
from .means import MeanPair, bourin_mean, heinz_sum, tau_ab, trace_functional
from .norms import NormKind, norm
from .report import InequalityReport, format_number
from .verify import (
    GridSpec,
    check_bourin_bound,
    check_bourin_vs_heinz,
    check_singular_dominance,
)

__all__ = [
    "UnknownId",
    "EXAMPLES",
    "builtin_example",
    "SweepTable",
    "sweep_t",
    "sweep_strip",
    "write_csv",
    "read_csv",
    "trial_rng",
    "random_unitary",
    "random_psd",
    "random_pair",
    "perturb_symmetric",
    "SearchConfig",
    "Witness",
    "CounterexampleResult",
    "search_counterexample",
    "save_witness",
]


class UnknownId(KeyError):
    pass


EXAMPLES = {
    "example1": (
        np.diag([1141.0, 204.0, 1.0 / 8.0]),
        np.array([[39.0, 90.0, 43.0], [90.0, 418.0, 370.0], [43.0, 370.0, 426.0]]),
    ),
    "example2": (
        np.diag([6317.0, 474.0, 6.0]),
        np.array([[2078.0, 2362.0, 2199.0], [2362.0, 3267.0, 2585.0], [2199.0, 2585.0, 2492.0]]),
    ),
}


def builtin_example(name: str) -> MeanPair:
    """The published counterexample pairs, ``"example1"`` (uniform norm) or
    ``"example2"`` (third singular value)."""
    try:
        A, B = EXAMPLES[name]
    except KeyError:
        raise UnknownId(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
    return MeanPair(hermitian(A, pd=True, name="A"), hermitian(B, pd=True, name="B"))


# -- tables -----------------------------------------------------------------


@dataclass
class SweepTable:
    """Rows of real numbers under named columns.

    The first ``keys`` columns are the sweep parameters; rows must be
    strictly increasing in them (lexicographically).
    """

    columns: tuple
    rows: list = field(default_factory=list)
    keys: int = 1

    def __post_init__(self):
        self.columns = tuple(self.columns)
        width = len(self.columns)
        prev = None
        for row in self.rows:
            if len(row) != width:
                raise ValueError(f"row {row!r} does not have {width} entries")
            key = tuple(row[: self.keys])
            if prev is not None and not key > prev:
                raise ValueError("sweep parameter columns must be strictly increasing")
            prev = key

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows])

    def __len__(self) -> int:
        return len(self.rows)


def _t_grid(t_min: float, t_max: float, steps: int) -> np.ndarray:
    if not 0.0 <= t_min < t_max <= 1.0:
        raise ValueError(f"sweep interval [{t_min}, {t_max}] must be a proper subinterval of [0, 1]")
    if steps < 2:
        raise ValueError("a t-sweep needs at least two points")
    return np.linspace(t_min, t_max, steps)


def sweep_t(pair: MeanPair, kind: NormKind, t_min: float = 0.0, t_max: float = 1.0, steps: int = 101) -> SweepTable:
    """Tabulate ``|||b_t|||``, ``|||h_t|||``, their difference
    ``f = |||h_t||| - |||b_t|||`` and ``tau(AB) - f(t)`` over a t-grid.

    The eigen-decompositions of ``A`` and ``B`` are computed once and held
    by ``pair``; every grid point reuses them.
    """
    bound = tau_ab(pair)
    rows = []
    for t in _t_grid(t_min, t_max, steps):
        t = float(t)
        nb = norm(bourin_mean(pair, t), kind)
        nh = norm(heinz_sum(pair, t), kind)
        rows.append((t, nb, nh, nh - nb, bound - trace_functional(pair, t)))
    return SweepTable(("t", "norm_b", "norm_h", "f", "tau_ab_minus_ftrace"), rows)


def sweep_strip(pair: MeanPair, grid: GridSpec) -> SweepTable:
    bound = tau_ab(pair)
    rows = []
    for z in grid.points():
        value = trace_functional(pair, z)
        rows.append((z.real, z.imag, value, bound, bound - value))
    return SweepTable(("re_z", "im_z", "f_value", "bound", "margin"), rows, keys=2)


def write_csv(table: SweepTable, destination) -> None:
    """Header then data rows, every number with 17 significant digits."""
    def _write(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([f"{float(v):.17g}" for v in row])

    if hasattr(destination, "write"):
        _write(destination)
    else:
        with open(destination, "w", newline="", encoding="utf-8") as fh:
            _write(fh)


def read_csv(source, keys: int | None = None) -> SweepTable:
    """Inverse of :func:`write_csv`; strip tables are keyed on ``(re_z, im_z)``."""
    def _read(fh):
        reader = csv.reader(fh)
        header = next(reader)
        nonlocal keys
        if keys is None:
            keys = 2 if header[:2] == ["re_z", "im_z"] else 1
        return SweepTable(tuple(header), [tuple(float(v) for v in row) for row in reader], keys=keys)

    if hasattr(source, "read"):
        return _read(source)
    with open(source, newline="", encoding="utf-8") as fh:
        return _read(fh)


# -- random matrices --------------------------------------------------------


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent PCG64 stream for ``(seed, trial)``; order of trials is irrelevant."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(trial)])))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary (QR of a complex Gaussian with phase fix)."""
    Q, R = np.linalg.qr(_complex_gaussian(rng, (dim, dim)))
    d = np.diag(R)
    return Q * (d / np.abs(d))


DIAG_LOG_RANGE = (np.log(1e-2), np.log(1e4))


def random_psd(dim: int, rng: np.random.Generator, style: str = "dense"):
    """Random positive definite matrix.

    ``"dense"``: ``G*G + 1e-6 I`` with ``G`` complex standard Gaussian.
    ``"diagonal"``: ``diag(exp(u))``, ``u`` uniform on ``[ln 1e-2, ln 1e4]``.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    if style == "dense":
        G = _complex_gaussian(rng, (dim, dim))
        M = G.conj().T @ G + 1e-6 * np.eye(dim)
    elif style == "diagonal":
        M = np.diag(np.exp(rng.uniform(*DIAG_LOG_RANGE, size=dim))).astype(np.complex128)
    else:
        raise ValueError(f"unknown random_psd style {style!r}")
    return hermitian(M, pd=True)


def perturb_symmetric(M: np.ndarray, rng: np.random.Generator, rel: float = 0.01) -> np.ndarray:
    """Multiply each entry by ``1 + e`` with ``e`` uniform in ``[-rel, rel]``, symmetric in ``(i, j)``."""
    n = M.shape[0]
    E = np.triu(rng.uniform(-rel, rel, size=(n, n)))
    E = E + np.triu(E, 1).T
    return M * (1.0 + E)


def random_pair(dim: int, rng: np.random.Generator, style: str = "dense") -> Optional[MeanPair]:
    """Draw a pair for the given search style.

    ``dense``: both dense.  ``diagonal-vs-dense``: ``A`` diagonal, ``B``
    dense (the shape of the published examples).  ``commuting``: both
    diagonal in a common random unitary basis.  ``perturb-example1`` /
    ``perturb-example2``: the published pair with 1% symmetric entrywise
    jitter (``dim`` is ignored).  Returns None when a perturbed pair is no
    longer positive definite.
    """
    if style == "dense":
        return MeanPair(random_psd(dim, rng, "dense"), random_psd(dim, rng, "dense"))
    if style == "diagonal-vs-dense":
        return MeanPair(random_psd(dim, rng, "diagonal"), random_psd(dim, rng, "dense"))
    if style == "commuting":
        U = random_unitary(dim, rng)
        a = np.exp(rng.uniform(*DIAG_LOG_RANGE, size=dim))
        b = np.exp(rng.uniform(*DIAG_LOG_RANGE, size=dim))
        A = (U * a) @ U.conj().T
        B = (U * b) @ U.conj().T
        return MeanPair(hermitian(0.5 * (A + A.conj().T), pd=True), hermitian(0.5 * (B + B.conj().T), pd=True))
    if style in ("perturb-example1", "perturb-example2"):
        A, B = EXAMPLES[style.removeprefix("perturb-")]
        A, B = perturb_symmetric(A, rng), perturb_symmetric(B, rng)
        try:
            return mean_pair_pd(A, B)
        except ValueError:
            return None
    raise ValueError(f"unknown pair style {style!r}")


def mean_pair_pd(A, B) -> MeanPair:
    return MeanPair(hermitian(A, pd=True, name="A"), hermitian(B, pd=True, name="B"))


# -- counterexample search --------------------------------------------------

STYLES = ("dense", "diagonal-vs-dense", "perturb-example1", "perturb-example2")
TARGETS = ("bourin_vs_heinz", "bourin_bound", "singular_dominance")


@dataclass(frozen=True)
class SearchConfig:
    dim: int = 3
    trials: int = 100
    seed: int = 0
    style: str = "dense"
    norm: NormKind = NormKind("operator")
    t_grid: Sequence[float] = (0.5,)
    target: str = "bourin_vs_heinz"

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dim must be at least 2")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.style not in STYLES:
            raise ValueError(f"unknown style {self.style!r}; choose from {STYLES}")
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}; choose from {TARGETS}")
        if not self.t_grid or not all(0.0 < t < 1.0 for t in self.t_grid):
            raise ValueError("t_grid must be a non-empty subset of (0, 1)")
        object.__setattr__(self, "t_grid", tuple(float(t) for t in self.t_grid))


@dataclass(frozen=True)
class Witness:
    A: np.ndarray
    B: np.ndarray
    t: float
    trial: int
    report: InequalityReport


@dataclass(frozen=True)
class CounterexampleResult:
    found: bool
    witness: Optional[Witness]
    trials_used: int


def _target_reports(pair: MeanPair, t: float, config: SearchConfig) -> list[InequalityReport]:
    if config.target == "bourin_vs_heinz":
        return [check_bourin_vs_heinz(pair, t, config.norm)]
    if config.target == "bourin_bound":
        return [check_bourin_bound(pair, t, config.norm)]
    return check_singular_dominance(pair, t)


def _run_trial(config: SearchConfig, trial: int) -> Optional[Witness]:
    pair = random_pair(config.dim, trial_rng(config.seed, trial), config.style)
    if pair is None:
        return None
    for t in config.t_grid:
        for rep in _target_reports(pair, t, config):
            if not rep.holds:
                return Witness(pair.A.data, pair.B.data, t, trial, rep)
    return None


def search_counterexample(config: SearchConfig, workers: Optional[int] = None, chunk: int = 64) -> CounterexampleResult:
    """Evaluate the target inequality on random pairs until it fails.

    Trial ``i`` draws from its own stream ``trial_rng(seed, i)``, so the
    result does not depend on ``workers``: trials are evaluated in chunks,
    possibly in parallel, and the lowest failing trial index wins.
    """
    workers = workers or 1
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for start in range(0, config.trials, chunk):
            idx = range(start, min(start + chunk, config.trials))
            if pool is None:
                results = (_run_trial(config, i) for i in idx)
            else:
                results = pool.map(lambda i: _run_trial(config, i), idx)
            for i, witness in zip(idx, results):
                if witness is not None:
                    return CounterexampleResult(True, witness, i + 1)
    finally:
        if pool is not None:
            pool.shutdown()
    return CounterexampleResult(False, None, config.trials)


def save_witness(result: CounterexampleResult, config: SearchConfig, out_dir) -> list[str]:
    """Write ``A.json``, ``B.json`` and ``witness.json`` (metadata) into ``out_dir``.

    Returns the written paths; nothing is written when no witness was found.
    """
    if not result.found:
        return []
    os.makedirs(out_dir, exist_ok=True)
    w = result.witness
    paths = [os.path.join(out_dir, name) for name in ("A.json", "B.json", "witness.json")]
    save_matrix(w.A, paths[0])
    save_matrix(w.B, paths[1])
    meta = {
        "seed": config.seed,
        "trial": w.trial,
        "t": w.t,
        "norm": str(config.norm),
        "target": config.target,
        "style": config.style,
        "dim": int(w.A.shape[0]),
        "label": w.report.label,
        "context": {k: format_number(v) if isinstance(v, complex) else v for k, v in w.report.context.items()},
        "lhs": w.report.lhs,
        "rhs": w.report.rhs,
        "margin": w.report.margin,
    }
    with open(paths[2], "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return paths
