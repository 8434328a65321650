# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled versions of the kernels in _pykernels (same signatures)."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

NAME = "cython"


cdef inline void _mul(const long long* a, const long long* b, long long* out) noexcept nogil:
    cdef int i, j
    for i in range(4):
        out[i] = 0
    for i in range(4):
        for j in range(4):
            if i + j < 4:
                out[i + j] += a[i] * b[j]
            else:
                out[i + j - 4] -= a[i] * b[j]


def ring_mul(a, b):
    a2, b2 = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    shape = a2.shape
    cdef long long[:, ::1] av = np.ascontiguousarray(a2).reshape(-1, 4)
    cdef long long[:, ::1] bv = np.ascontiguousarray(b2).reshape(-1, 4)
    out = np.empty((av.shape[0], 4), dtype=np.int64)
    cdef long long[:, ::1] ov = out
    cdef Py_ssize_t n
    for n in range(av.shape[0]):
        _mul(&av[n, 0], &bv[n, 0], &ov[n, 0])
    return out.reshape(shape)


def ring_matmul_fixed(m, k, g, long long kg):
    cdef long long[:, :, :, ::1] mv = np.ascontiguousarray(m, dtype=np.int64)
    cdef long long[:, :, ::1] gv = np.ascontiguousarray(g, dtype=np.int64)
    cdef Py_ssize_t N = mv.shape[0]
    out = np.empty((N, 2, 2, 4), dtype=np.int64)
    kout = np.asarray(k, dtype=np.int64) + kg
    cdef long long[:, :, :, ::1] ov = out
    cdef long long[::1] kv = kout
    cdef long long t0[4]
    cdef long long t1[4]
    cdef long long y[4]
    cdef Py_ssize_t n
    cdef int r, c, i, div
    with nogil:
        for n in range(N):
            for r in range(2):
                for c in range(2):
                    _mul(&mv[n, r, 0, 0], &gv[0, c, 0], t0)
                    _mul(&mv[n, r, 1, 0], &gv[1, c, 0], t1)
                    for i in range(4):
                        ov[n, r, c, i] = t0[i] + t1[i]
            while True:
                div = 1
                for r in range(2):
                    for c in range(2):
                        if (ov[n, r, c, 0] - ov[n, r, c, 2]) % 2 != 0 or (ov[n, r, c, 1] - ov[n, r, c, 3]) % 2 != 0:
                            div = 0
                if not div:
                    break
                for r in range(2):
                    for c in range(2):
                        y[0] = ov[n, r, c, 1] - ov[n, r, c, 3]
                        y[1] = ov[n, r, c, 0] + ov[n, r, c, 2]
                        y[2] = ov[n, r, c, 1] + ov[n, r, c, 3]
                        y[3] = ov[n, r, c, 2] - ov[n, r, c, 0]
                        for i in range(4):
                            ov[n, r, c, i] = y[i] // 2
                kv[n] -= 1
    return out, kout


def reduce_batch(m, k):
    ident = np.zeros((2, 2, 4), dtype=np.int64)
    ident[0, 0, 0] = ident[1, 1, 0] = 1
    out, kout = ring_matmul_fixed(m, k, ident, 0)
    m[...] = out
    k[...] = kout
    return m, k


def apply_1q(psi, int n, int q, u):
    # work on interleaved (re, im) doubles; Cython's complex helpers are slow
    cdef double[::1] v = psi.view(np.float64)
    cdef double ar = u[0, 0].real, ai = u[0, 0].imag, br = u[0, 1].real, bi = u[0, 1].imag
    cdef double cr = u[1, 0].real, ci = u[1, 0].imag, dr = u[1, 1].real, di = u[1, 1].imag
    cdef Py_ssize_t stride = 1 << (n - 1 - q)
    cdef Py_ssize_t size = 1 << n
    cdef Py_ssize_t base, j, i0, i1
    cdef double x0r, x0i, x1r, x1i
    with nogil:
        base = 0
        while base < size:
            for j in range(stride):
                i0 = 2 * (base + j)
                i1 = i0 + 2 * stride
                x0r = v[i0]
                x0i = v[i0 + 1]
                x1r = v[i1]
                x1i = v[i1 + 1]
                v[i0] = ar * x0r - ai * x0i + br * x1r - bi * x1i
                v[i0 + 1] = ar * x0i + ai * x0r + br * x1i + bi * x1r
                v[i1] = cr * x0r - ci * x0i + dr * x1r - di * x1i
                v[i1 + 1] = cr * x0i + ci * x0r + dr * x1i + di * x1r
            base += 2 * stride
    return psi


def apply_cx(psi, int n, int c, int t):
    cdef double[::1] v = psi.view(np.float64)
    cdef Py_ssize_t cbit = 1 << (n - 1 - c)
    cdef Py_ssize_t tbit = 1 << (n - 1 - t)
    cdef Py_ssize_t i, a, b, size = 1 << n
    cdef double tr, ti
    with nogil:
        for i in range(size):
            if (i & cbit) and not (i & tbit):
                a = 2 * i
                b = 2 * (i | tbit)
                tr = v[a]
                ti = v[a + 1]
                v[a] = v[b]
                v[a + 1] = v[b + 1]
                v[b] = tr
                v[b + 1] = ti
    return psi
