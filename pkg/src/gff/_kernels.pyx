# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Gram-Schmidt, Kronecker product, weighted Gram sums."""
import numpy as np
from libc.math cimport sqrt


def mgs(const double complex[:, :] a, double tol):
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1]
    cdef Py_ssize_t i, j, p, r = 0
    cdef int sweep
    cdef double nrm, qr, qi, vr, vi
    cdef double complex dot
    q_arr = np.empty((n, k), dtype=np.complex128)
    v_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[:, ::1] q = q_arr
    cdef double complex[::1] v = v_arr
    for j in range(k):
        for i in range(n):
            v[i] = a[i, j]
        for sweep in range(2):
            for p in range(r):
                dot = 0
                for i in range(n):
                    qr = q[i, p].real
                    qi = q[i, p].imag
                    vr = v[i].real
                    vi = v[i].imag
                    dot = dot + ((qr * vr + qi * vi) + 1j * (qr * vi - qi * vr))
                for i in range(n):
                    qr = q[i, p].real
                    qi = q[i, p].imag
                    v[i].real = v[i].real - (dot.real * qr - dot.imag * qi)
                    v[i].imag = v[i].imag - (dot.real * qi + dot.imag * qr)
        nrm = 0.0
        for i in range(n):
            nrm += v[i].real * v[i].real + v[i].imag * v[i].imag
        nrm = sqrt(nrm)
        if nrm > tol:
            for i in range(n):
                q[i, r] = v[i] / nrm
            r += 1
    return q_arr[:, :r].copy()


def kron(a, b):
    cdef const double complex[:, ::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef const double complex[:, ::1] bv = np.ascontiguousarray(b, dtype=np.complex128)
    cdef Py_ssize_t ra = av.shape[0], ca = av.shape[1]
    cdef Py_ssize_t rb = bv.shape[0], cb = bv.shape[1]
    cdef Py_ssize_t i, j, k, l, base
    cdef double sr, si
    out_arr = np.empty((ra * rb, ca * cb), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef double complex *dst
    cdef const double complex *src
    if ra * rb == 0 or ca * cb == 0:
        return out_arr
    for i in range(ra):
        for k in range(rb):
            dst = &out[i * rb + k, 0]
            src = &bv[k, 0]
            for j in range(ca):
                sr = av[i, j].real
                si = av[i, j].imag
                base = j * cb
                for l in range(cb):
                    # expanded by hand: C complex multiply carries inf/nan fixups
                    dst[base + l].real = sr * src[l].real - si * src[l].imag
                    dst[base + l].imag = sr * src[l].imag + si * src[l].real
    return out_arr


def weighted_gram(left, right, const double[:] weights, const Py_ssize_t[:] offsets):
    # real and imaginary planes kept apart so the inner loop runs on
    # contiguous doubles
    cdef const double[:, ::1] lre = np.ascontiguousarray(np.real(left), dtype=np.float64)
    cdef const double[:, ::1] lim = np.ascontiguousarray(np.imag(left), dtype=np.float64)
    cdef const double[:, ::1] rre = np.ascontiguousarray(np.real(right), dtype=np.float64)
    cdef const double[:, ::1] rim = np.ascontiguousarray(np.imag(right), dtype=np.float64)
    cdef Py_ssize_t n = lre.shape[1], m = rre.shape[1]
    cdef Py_ssize_t c, row, a, b
    cdef double w, lr, li
    ore_arr = np.zeros((n, m))
    oim_arr = np.zeros((n, m))
    cdef double[:, ::1] ore = ore_arr
    cdef double[:, ::1] oim = oim_arr
    if n == 0 or m == 0:
        return ore_arr + 1j * oim_arr
    cdef const double *xr
    cdef const double *xi
    cdef double *yr
    cdef double *yi
    for c in range(weights.shape[0]):
        w = weights[c]
        for row in range(offsets[c], offsets[c + 1]):
            xr = &rre[row, 0]
            xi = &rim[row, 0]
            for a in range(n):
                # conj(left[row, a]) scaled by the block weight
                lr = w * lre[row, a]
                li = -w * lim[row, a]
                if lr == 0.0 and li == 0.0:
                    continue
                yr = &ore[a, 0]
                yi = &oim[a, 0]
                for b in range(m):
                    yr[b] += lr * xr[b] - li * xi[b]
                    yi[b] += lr * xi[b] + li * xr[b]
    return ore_arr + 1j * oim_arr
