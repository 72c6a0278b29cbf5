"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``; a vector
is a 1-D array. Rank decisions and identity checks go through :class:`Tolerance`.
"""
from dataclasses import dataclass

import numpy as np

from gff import _backend
from gff.errors import DimensionMismatch, EmptySpan, NotHermitian


@dataclass(frozen=True)
class Tolerance:
    """Numerical cutoffs.

    Parameters
    ----------
    rank_tol : float
        Relative cutoff for rank decisions: a column is dropped during
        orthonormalization when its residual norm is at most
        ``rank_tol * (largest input column norm)``.
    eq_tol : float
        Absolute residual cutoff for identity checks such as Hermitian-ness
        or unitarity.
    """

    rank_tol: float = 1e-10
    eq_tol: float = 1e-9

    def __post_init__(self):
        for name in ("rank_tol", "eq_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")


DEFAULT_TOL = Tolerance()


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite, C-contiguous complex128 2-D array."""
    arr = np.ascontiguousarray(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def as_vector(v, name="vector"):
    arr = np.ascontiguousarray(v, dtype=np.complex128)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def max_abs(a):
    """Entrywise max norm; 0 for empty arrays."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def orthonormalize(spanning, tol=DEFAULT_TOL):
    """Orthonormal basis for the column space of ``spanning``.

    Modified Gram-Schmidt with one reorthogonalization pass, columns taken
    left to right, so the result is deterministic for a fixed input.

    Raises
    ------
    EmptySpan
        If every column deflates to zero.
    """
    a = as_matrix(spanning, "spanning")
    if a.shape[1] == 0:
        raise EmptySpan("no spanning columns")
    scale = float(np.max(np.linalg.norm(a, axis=0)))
    if scale == 0.0:
        raise EmptySpan("all spanning columns are zero")
    q = _backend.mgs(a, tol.rank_tol * scale)
    if q.shape[1] == 0:
        raise EmptySpan("all spanning columns deflated")
    return q


def _check_hermitian(a, tol):
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    skew = max_abs(a - a.conj().T)
    if skew > tol.eq_tol * max(1.0, max_abs(a)):
        raise NotHermitian(f"max |A - A*| = {skew:.3g}")
    return (a + a.conj().T) / 2


def hermitian_eigh(a, tol=DEFAULT_TOL):
    """Eigenvalues (ascending) and eigenvectors of the symmetrized ``a``."""
    h = _check_hermitian(a, tol)
    return np.linalg.eigh(h)


def hermitian_eig_extremes(a, tol=DEFAULT_TOL):
    """Smallest and largest eigenvalue of a Hermitian matrix.

    The Hermitian check is ``max|A - A*| <= eq_tol * max(1, max|A|)``;
    ``(A + A*) / 2`` is what gets diagonalized.
    """
    h = _check_hermitian(a, tol)
    if h.shape[0] == 0:
        raise DimensionMismatch("empty matrix has no eigenvalues")
    w = np.linalg.eigvalsh(h)
    return float(w[0]), float(w[-1])


def kron(a, b):
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return _backend.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def operator_norm_2(a):
    """Largest singular value (0 for an empty or zero matrix)."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim == 1:
        a = a[:, None]
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))
