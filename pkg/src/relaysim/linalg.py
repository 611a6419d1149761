"""Complex matrix kernel used by the simulator.

Thin, checked wrappers around LAPACK-backed numpy/scipy routines. All
matrices are 2-D complex128 ndarrays. Decompositions raise NumericError
instead of returning garbage, and shape mismatches raise ShapeError with
both operand shapes in the message.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg.lapack import zpotrf, zpotrs


class ShapeError(ValueError):
    """Operand dimensions are incompatible with the requested operation."""


class NumericError(ArithmeticError):
    """A factorization or solve failed (e.g. matrix not positive definite)."""


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce input to a 2-D complex128 array, rejecting non-finite entries."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product a @ b with an explicit inner-dimension check."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def conj_transpose(a: np.ndarray) -> np.ndarray:
    """Hermitian transpose."""
    return as_matrix(a, "a").conj().T


def trace(a: np.ndarray) -> complex:
    a = as_matrix(a, "a")
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"trace needs a square matrix, got {a.shape}")
    return complex(np.trace(a))


def frobenius_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(as_matrix(a, "a")))


def row_norm_sq(a: np.ndarray, m: int) -> float:
    """Squared Euclidean norm of row m."""
    a = as_matrix(a, "a")
    if not 0 <= m < a.shape[0]:
        raise ShapeError(f"row index {m} out of range for shape {a.shape}")
    row = a[m]
    return float(np.real(np.vdot(row, row)))


@dataclass(frozen=True)
class QrFactors:
    """QR factors of a square matrix, with q unitary and r upper triangular.

    The diagonal of r is real and non-negative; the column phases of q
    absorb the arbitrary unit factors so the factorization is unique for
    full-rank input.
    """

    q: np.ndarray
    r: np.ndarray


def qr_stack(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Phase-normalized QR of a stack (..., m, m) of square matrices.

    LAPACK's Householder QR leaves each diagonal entry of r with an
    arbitrary unit phase; multiplying column m of q and row m of r by the
    conjugate phase cancels it without changing the product q @ r. A zero
    diagonal entry (rank-deficient input) is left at exactly 0.
    """
    q, r = np.linalg.qr(a)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    mag = np.abs(d)
    phase = np.where(mag > 0, d / np.where(mag > 0, mag, 1.0), 1.0)
    q = q * phase[..., np.newaxis, :]
    r = r * phase.conj()[..., :, np.newaxis]
    # kill the residual imaginary dust on the diagonal; it is |d| by construction
    idx = np.arange(a.shape[-1])
    r[..., idx, idx] = mag
    return q, r


def qr_decompose(a: np.ndarray) -> QrFactors:
    """QR factorization of one square matrix, r diagonal real and >= 0."""
    a = as_matrix(a, "a")
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"qr_decompose needs a square matrix, got {a.shape}")
    q, r = qr_stack(a)
    return QrFactors(q=q, r=r)


def _cholesky_lower(a: np.ndarray, name: str) -> np.ndarray:
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} needs a square matrix, got {a.shape}")
    c, info = zpotrf(a, lower=1)
    if info != 0:
        raise NumericError(
            f"{name}: matrix is not positive definite (pivot {info} failed)"
        )
    return c


def solve_hpd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a @ x = b for Hermitian positive definite a via Cholesky.

    Never forms an inverse. Raises NumericError naming the failing pivot
    when a is not positive definite.
    """
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[0] != b.shape[0]:
        raise ShapeError(f"solve_hpd shapes do not align: {a.shape} vs {b.shape}")
    c = _cholesky_lower(a, "solve_hpd")
    x, info = zpotrs(c, b, lower=1)
    if info != 0:  # pragma: no cover - zpotrs only fails on bad arguments
        raise NumericError(f"solve_hpd: triangular solve failed (info={info})")
    return x


def logdet_hpd(a: np.ndarray) -> float:
    """log-determinant (natural log) of a Hermitian positive definite matrix."""
    a = as_matrix(a, "a")
    c = _cholesky_lower(a, "logdet_hpd")
    return float(2.0 * np.sum(np.log(np.real(np.diagonal(c)))))


def cholesky_stack(a: np.ndarray) -> np.ndarray:
    """Lower Cholesky factors of a stack (..., m, m) of HPD matrices.

    Same zpotrf kernel as solve_hpd, applied across the stack; per-item
    results are bit-identical to the single-matrix route.
    """
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"cholesky_stack: matrix not positive definite ({exc})") from exc


def solve_cholesky_factored(l: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a @ x = b given the lower Cholesky factor l of a."""
    x, info = zpotrs(l, b, lower=1)
    if info != 0:  # pragma: no cover - zpotrs only fails on bad arguments
        raise NumericError(f"solve_cholesky_factored failed (info={info})")
    return x


def logdet_hpd_stack(a: np.ndarray) -> np.ndarray:
    """log-determinants of a stack (..., m, m) of HPD matrices."""
    c = cholesky_stack(a)
    d = np.real(np.diagonal(c, axis1=-2, axis2=-1))
    return 2.0 * np.sum(np.log(d), axis=-1)
