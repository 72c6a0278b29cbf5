"""Pure-Python (numpy) implementations of the hot kernels.

Same signatures and loop order as the compiled ``_kernels`` module; used when
the extension is not built or ``GFF_BACKEND=python`` is set.
"""
import numpy as np


def mgs(a, tol):
    """Modified Gram-Schmidt with one reorthogonalization pass.

    Columns are processed left to right; a column whose residual norm is
    ``<= tol`` after both passes is dropped.
    """
    n, k = a.shape
    q = np.empty((n, k), dtype=np.complex128)
    r = 0
    for j in range(k):
        v = a[:, j].copy()
        for _ in range(2):
            for p in range(r):
                v -= np.vdot(q[:, p], v) * q[:, p]
        nrm = np.sqrt(np.sum(v.real**2 + v.imag**2))
        if nrm > tol:
            q[:, r] = v / nrm
            r += 1
    return q[:, :r].copy()


def kron(a, b):
    return np.kron(a, b)


def weighted_gram(left, right, weights, offsets):
    """Sum ``weights[c] * L_c^* R_c`` over row blocks ``c`` in block order.

    ``L_c = left[offsets[c]:offsets[c+1]]``, likewise ``R_c``.
    """
    n = left.shape[1]
    m = right.shape[1]
    out = np.zeros((n, m), dtype=np.complex128)
    for c in range(len(weights)):
        lo, hi = offsets[c], offsets[c + 1]
        if hi > lo:
            out += weights[c] * (left[lo:hi].conj().T @ right[lo:hi])
    return out
