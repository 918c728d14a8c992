"""Dense complex matrix substrate.

Hermitian spectral decomposition (cyclic Jacobi), complex powers of
positive semidefinite matrices, the modulus ``|X| = (X*X)^{1/2}``,
singular values, and the JSON matrix file format.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Hermitian
inputs that need a functional calculus are wrapped in
:class:`HermitianMatrix`, which validates the array once and keeps its
spectral decomposition.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

__all__ = [
    "MatrixError",
    "NotHermitian",
    "NotPSD",
    "SingularNegativePower",
    "ConvergenceError",
    "MatrixFormatError",
    "SpectralDecomposition",
    "HermitianMatrix",
    "as_matrix",
    "as_scalar",
    "hermitian",
    "jacobi_eigh",
    "spectral_decompose",
    "matrix_power",
    "modulus",
    "singular_values",
    "adjoint",
    "parse_matrix_json",
    "load_matrix",
    "matrix_to_json",
    "save_matrix",
]

HERMITIAN_TOL = 1e-12
CLAMP_TOL = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class MatrixError(ValueError):
    """Base class for invalid matrix input."""


class NotHermitian(MatrixError):
    pass


class NotPSD(MatrixError):
    pass


class SingularNegativePower(MatrixError):
    """A power with ``Re(z) <= 0, z != 0`` was requested of a singular matrix."""


class MatrixFormatError(MatrixError):
    pass


class ConvergenceError(RuntimeError):
    pass


class SpectralDecomposition(NamedTuple):
    """Eigenvalues in non-increasing order and the matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T

    def apply(self, values) -> np.ndarray:
        """Return ``U diag(values) U*``."""
        U = self.eigenvectors
        return (U * values) @ U.conj().T


def adjoint(X: np.ndarray) -> np.ndarray:
    return X.conj().T


def as_matrix(X, name: str = "matrix") -> np.ndarray:
    """Coerce ``X`` to a square, finite ``complex128`` array."""
    if isinstance(X, HermitianMatrix):
        return X.data
    M = np.asarray(X, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise MatrixError(f"{name} must be a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise MatrixError(f"{name} has non-finite entries")
    return M


def as_scalar(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex parameter {z!r}")
    return z


def _rotation(app: float, aqq: float, apq: complex):
    """Unitary 2x2 block ``V`` with ``(V* M V)_{pq} = 0`` for ``M = [[app, apq], [conj(apq), aqq]]``."""
    r = abs(apq)
    phase = apq / r
    theta = (aqq - app) / (2.0 * r)
    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    # diag(1, conj(phase)) makes the pivot real, then a real Jacobi rotation
    return np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])


def _jacobi_lists(A: list, threshold: float, max_sweeps: int):
    # Scalar loops on nested lists; far less per-rotation overhead than
    # numpy slicing for the small matrices that dominate the workload.
    n = len(A)
    U = [[1.0 + 0.0j if i == j else 0.0j for j in range(n)] for i in range(n)]
    thr2 = threshold * threshold
    for _ in range(max_sweeps + 1):
        off2 = 0.0
        for p in range(n - 1):
            row = A[p]
            for q in range(p + 1, n):
                v = row[q]
                off2 += v.real * v.real + v.imag * v.imag
        if 2.0 * off2 <= thr2:
            return [A[i][i].real for i in range(n)], U
        if _ == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p][q]
                r = abs(apq)
                if r == 0.0:
                    continue
                e = (apq / r).conjugate()
                app, aqq = A[p][p].real, A[q][q].real
                theta = (aqq - app) / (2.0 * r)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # V = [[c, s], [-s e, c e]] acting on columns p, q
                se, ce = s * e, c * e
                for k in range(n):
                    Ak = A[k]
                    x, y = Ak[p], Ak[q]
                    Ak[p] = c * x - se * y
                    Ak[q] = s * x + ce * y
                    Uk = U[k]
                    x, y = Uk[p], Uk[q]
                    Uk[p] = c * x - se * y
                    Uk[q] = s * x + ce * y
                Ap, Aq = A[p], A[q]
                sec, cec = se.conjugate(), ce.conjugate()
                for k in range(n):
                    x, y = Ap[k], Aq[k]
                    Ap[k] = c * x - sec * y
                    Aq[k] = s * x + cec * y
                Ap[q] = Aq[p] = 0j
                Ap[p] = complex(app - t * r)
                Aq[q] = complex(aqq + t * r)
    raise ConvergenceError(
        f"Jacobi iteration did not converge in {max_sweeps} sweeps "
        f"(off-diagonal mass {math.sqrt(2.0 * off2):.3e}, threshold {threshold:.3e})"
    )


def _jacobi_arrays(A: np.ndarray, threshold: float, max_sweeps: int):
    n = A.shape[0]
    U = np.eye(n, dtype=np.complex128)
    pivots = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    for sweep in range(max_sweeps + 1):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= threshold:
            return A.diagonal().real.copy(), U
        if sweep == max_sweeps:
            break
        for p, q in pivots:
            apq = A[p, q]
            if apq == 0:
                continue
            V = _rotation(A[p, p].real, A[q, q].real, apq)
            idx = [p, q]
            A[:, idx] = A[:, idx] @ V
            A[idx, :] = V.conj().T @ A[idx, :]
            A[p, q] = A[q, p] = 0.0
            A[p, p] = A[p, p].real
            A[q, q] = A[q, q].real
            U[:, idx] = U[:, idx] @ V
    raise ConvergenceError(
        f"Jacobi iteration did not converge in {max_sweeps} sweeps "
        f"(off-diagonal mass {off:.3e}, threshold {threshold:.3e})"
    )


SMALL_N = 16


def jacobi_eigh(H, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigensolver for a Hermitian matrix.

    Sweeps over all pivots ``(p, q), p < q`` in row order until the
    off-diagonal Frobenius mass drops to ``tol * ||H||_F`` or below.

    Returns
    -------
    w : ndarray
        Real eigenvalues, unsorted.
    U : ndarray
        Unitary matrix whose columns are the eigenvectors.

    Raises
    ------
    ConvergenceError
        If ``max_sweeps`` sweeps do not reach the tolerance.
    """
    A = np.array(H, dtype=np.complex128)
    # symmetrize so roundoff asymmetry does not leak into the rotations
    A = 0.5 * (A + A.conj().T)
    threshold = tol * np.linalg.norm(A)
    if A.shape[0] <= SMALL_N:
        w, U = _jacobi_lists(A.tolist(), threshold, max_sweeps)
        return np.array(w), np.array(U, dtype=np.complex128)
    return _jacobi_arrays(A, threshold, max_sweeps)


def _sorted_decomposition(H) -> SpectralDecomposition:
    w, U = jacobi_eigh(H)
    order = np.argsort(-w, kind="stable")
    return SpectralDecomposition(w[order], U[:, order])


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """A validated Hermitian matrix, optionally flagged psd or pd.

    Use :func:`hermitian` to construct one.  The spectral decomposition is
    computed on first use (at construction when a psd/pd flag must be
    validated) and reused afterwards; for psd-flagged matrices the
    eigenvalues stored are the clamped ones.
    """

    data: np.ndarray
    psd: bool = False
    pd: bool = False
    _decomposition: list = field(default_factory=list, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def decomposition(self) -> SpectralDecomposition:
        if not self._decomposition:
            self._decomposition.append(_sorted_decomposition(self.data))
        return self._decomposition[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.decomposition.eigenvalues

    @property
    def is_singular(self) -> bool:
        return bool(self.eigenvalues[-1] <= 0.0)

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)


def hermitian(H, psd: bool = False, pd: bool = False, name: str = "matrix") -> HermitianMatrix:
    """Validate ``H`` and wrap it as a :class:`HermitianMatrix`.

    Hermiticity is required to ``||H - H*||_max <= 1e-12 (1 + ||H||_max)``.
    With ``psd`` (implied by ``pd``) eigenvalues in ``[-1e-10 lambda_max, 0)``
    are clamped to zero and anything more negative raises :class:`NotPSD`.
    With ``pd`` every clamped eigenvalue must be strictly positive.
    """
    if isinstance(H, HermitianMatrix):
        if (psd and not H.psd) or (pd and not H.pd):
            return hermitian(H.data, psd=psd, pd=pd, name=name)
        return H
    M = as_matrix(H, name)
    scale = np.max(np.abs(M))
    if np.max(np.abs(M - M.conj().T)) > HERMITIAN_TOL * (1.0 + scale):
        raise NotHermitian(f"{name} is not Hermitian")
    M = 0.5 * (M + M.conj().T)
    M.setflags(write=False)
    psd = psd or pd
    if not psd:
        return HermitianMatrix(M)
    w, U = _sorted_decomposition(M)
    radius = max(abs(w[0]), abs(w[-1]))
    floor = -CLAMP_TOL * radius
    if w[-1] < floor:
        raise NotPSD(f"{name} has eigenvalue {w[-1]:.6g} below the psd floor {floor:.3g}")
    w = np.where(w < 0.0, 0.0, w)
    if pd and w[-1] <= 0.0:
        raise NotPSD(f"{name} is singular, positive definite input required")
    return HermitianMatrix(M, psd=True, pd=pd, _decomposition=[SpectralDecomposition(w, U)])


def spectral_decompose(H) -> SpectralDecomposition:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues non-increasing."""
    return hermitian(H).decomposition


def _scalar_powers(w: np.ndarray, z: complex) -> np.ndarray:
    out = np.zeros(w.shape, dtype=np.complex128)
    pos = w > 0.0
    if z == 0:
        out[pos] = 1.0
        return out
    if not np.all(pos) and z.real <= 0.0:
        raise SingularNegativePower(
            f"power z={z} with Re(z) <= 0 of a singular matrix is undefined"
        )
    out[pos] = np.exp(z * np.log(w[pos]))
    return out


def matrix_power(A, z) -> np.ndarray:
    """Complex power ``A^z = U diag(lambda^z) U*`` of a psd matrix.

    ``lambda^z = exp(z ln lambda)`` for ``lambda > 0`` and ``0^z = 0`` when
    ``Re(z) > 0``.  ``A^0`` is the orthogonal projection onto the range of
    ``A``.  A singular ``A`` with ``Re(z) <= 0, z != 0`` raises
    :class:`SingularNegativePower`.
    """
    A = hermitian(A, psd=True)
    z = as_scalar(z)
    dec = A.decomposition
    return dec.apply(_scalar_powers(dec.eigenvalues, z))


def _gram_eigenvalues(X: np.ndarray) -> SpectralDecomposition:
    dec = _sorted_decomposition(X.conj().T @ X)
    w = np.where(dec.eigenvalues < 0.0, 0.0, dec.eigenvalues)
    return SpectralDecomposition(w, dec.eigenvectors)


def modulus(X) -> HermitianMatrix:
    """``|X| = (X*X)^{1/2}``, flagged psd."""
    X = as_matrix(X)
    dec = _gram_eigenvalues(X)
    s = np.sqrt(dec.eigenvalues)
    M = dec.apply(s)
    M = 0.5 * (M + M.conj().T)
    M.setflags(write=False)
    return HermitianMatrix(M, psd=True, _decomposition=[SpectralDecomposition(s, dec.eigenvectors)])


def singular_values(X) -> np.ndarray:
    """Singular values of ``X`` in non-increasing order (eigenvalues of ``|X|``)."""
    X = as_matrix(X)
    return np.sqrt(_gram_eigenvalues(X).eigenvalues)


# -- JSON matrix files ------------------------------------------------------


def _entry(value, where: str) -> complex:
    if isinstance(value, bool):
        raise MatrixFormatError(f"{where}: boolean is not a matrix entry")
    if isinstance(value, (int, float)):
        z = complex(value)
    elif isinstance(value, (list, tuple)) and len(value) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        z = complex(value[0], value[1])
    else:
        raise MatrixFormatError(f"{where}: expected a number or [re, im] pair, got {value!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise MatrixFormatError(f"{where}: non-finite entry")
    return z


def parse_matrix_json(doc) -> np.ndarray:
    """Parse ``{"n": n, "rows": [[[re, im], ...], ...]}`` into a complex array.

    ``doc`` may be a JSON string or an already decoded mapping.  Real
    entries may be written as bare numbers.
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "n" not in doc or "rows" not in doc:
        raise MatrixFormatError('matrix document needs "n" and "rows"')
    n, rows = doc["n"], doc["rows"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError(f'"n" must be a positive integer, got {n!r}')
    if not isinstance(rows, list) or len(rows) != n:
        raise MatrixFormatError(f"expected {n} rows")
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"row {i} must have {n} entries")
        for j, value in enumerate(row):
            out[i, j] = _entry(value, f"entry ({i}, {j})")
    return out


def load_matrix(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix_json(fh.read())


def matrix_to_json(X) -> str:
    X = as_matrix(X)
    doc = {
        "n": X.shape[0],
        "rows": [[[float(v.real), float(v.imag)] for v in row] for row in X],
    }
    return json.dumps(doc) + "\n"


def save_matrix(X, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(matrix_to_json(X))
