"""Closed subspaces of C^n, their projections and images under operators."""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from gff.errors import DimensionMismatch, EmptySpan
from gff.linalg import DEFAULT_TOL, as_matrix, max_abs, operator_norm_2, orthonormalize


@dataclass(frozen=True, eq=False)
class ClosedSubspace:
    """A subspace stored by an orthonormal basis (``ambient_dim x rank``).

    ``rank == 0`` is allowed and represents the zero subspace. Two subspaces
    are compared through their projections, never their bases; see
    :meth:`same_as`.
    """

    basis: np.ndarray

    def __post_init__(self):
        b = np.array(as_matrix(self.basis, "basis"))
        if b.shape[0] == 0:
            raise DimensionMismatch("ambient dimension must be positive")
        if b.shape[1] > b.shape[0]:
            raise DimensionMismatch(f"rank {b.shape[1]} exceeds ambient dimension {b.shape[0]}")
        gram_err = max_abs(b.conj().T @ b - np.eye(b.shape[1]))
        if gram_err > 10 * DEFAULT_TOL.eq_tol:
            raise ValueError(f"basis is not orthonormal (max |B*B - I| = {gram_err:.3g})")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @classmethod
    def span(cls, vectors, tol=DEFAULT_TOL):
        """Subspace spanned by the columns of ``vectors`` (zero if they deflate)."""
        a = as_matrix(vectors, "vectors")
        try:
            return cls(orthonormalize(a, tol))
        except EmptySpan:
            return cls.zero(a.shape[0])

    @classmethod
    def zero(cls, ambient_dim):
        return cls(np.zeros((ambient_dim, 0), dtype=np.complex128))

    @classmethod
    def full(cls, ambient_dim):
        return cls(np.eye(ambient_dim, dtype=np.complex128))

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    @property
    def rank(self):
        return self.basis.shape[1]

    @cached_property
    def projection(self):
        p = self.basis @ self.basis.conj().T
        p.setflags(write=False)
        return p

    def same_as(self, other, tol=10 * DEFAULT_TOL.eq_tol):
        if self.ambient_dim != other.ambient_dim:
            return False
        return operator_norm_2(self.projection - other.projection) <= tol

    def __repr__(self):
        return f"ClosedSubspace(ambient_dim={self.ambient_dim}, rank={self.rank})"


def projection(subspace):
    """Orthogonal projection ``B B*`` onto ``subspace``."""
    return subspace.projection


def image_under(operator, subspace, tol=DEFAULT_TOL):
    """The subspace ``T V`` (orthonormalized; the zero subspace if ``T`` kills ``V``)."""
    t = as_matrix(operator, "operator")
    if t.shape[1] != subspace.ambient_dim:
        raise DimensionMismatch(
            f"operator has {t.shape[1]} columns, subspace lives in C^{subspace.ambient_dim}"
        )
    if subspace.rank == 0:
        return ClosedSubspace.zero(t.shape[0])
    return ClosedSubspace.span(t @ subspace.basis, tol)


def projection_swap_residual(operator, subspace, tol=DEFAULT_TOL):
    """Residuals of the projection swap identities for ``T`` and ``V``.

    Returns ``(res_general, res_unitary)`` where

    * ``res_general = ||P_V T* - P_V T* P_{TV}||_2`` (zero for every bounded T),
    * ``res_unitary = ||P_{TV} T - T P_V||_2``, or ``None`` unless
      ``max|T*T - I| <= eq_tol``.
    """
    t = as_matrix(operator, "operator")
    n = subspace.ambient_dim
    if t.shape != (n, n):
        raise DimensionMismatch(f"operator must be {n}x{n}, got {t.shape}")
    p_v = subspace.projection
    p_tv = image_under(t, subspace, tol).projection
    t_adj = t.conj().T
    res_general = operator_norm_2(p_v @ t_adj - p_v @ t_adj @ p_tv)
    res_unitary = None
    if max_abs(t_adj @ t - np.eye(n)) <= tol.eq_tol:
        res_unitary = operator_norm_2(p_tv @ t - t @ p_v)
    return res_general, res_unitary
