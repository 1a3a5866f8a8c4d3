# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Euler-Maclaurin kernel; same contract as ``_emsum_py.em_sum``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin, log

cnp.import_array()


cdef double complex _expm1_over(double complex u) noexcept nogil:
    cdef double complex acc, term
    cdef int k
    if u.real * u.real + u.imag * u.imag >= 0.25:
        return (exp(u.real) * (cos(u.imag) + 1j * sin(u.imag)) - 1.0) / u
    acc = 1.0
    term = 1.0
    for k in range(1, 24):
        term = term * u / (k + 1)
        acc = acc + term
    return acc


def em_sum(s, Py_ssize_t M, weights, bint subtract_pole=False):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] sa = np.ascontiguousarray(
        s, dtype=np.complex128).reshape(-1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.ascontiguousarray(
        weights, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] logn = np.log(
        np.arange(1, M + 1, dtype=np.float64))
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(sa.shape[0], dtype=np.complex128)
    cdef const double complex[::1] sv = sa
    cdef double complex[::1] ov = out
    cdef double[::1] lv = logn
    cdef const double[::1] wv = w
    cdef Py_ssize_t i, n, k, nk = w.shape[0]
    cdef double sig, tt, re, im, a, ph, logM = lv[M - 1]
    cdef double complex z, mpow, m1, poch, mk, acc
    cdef double inv_m2 = 1.0 / (<double>M * <double>M)
    with nogil:
        for i in range(sa.shape[0]):
            z = sv[i]
            sig = z.real
            tt = z.imag
            re = 0.0
            im = 0.0
            for n in range(M):
                a = exp(-sig * lv[n])
                ph = tt * lv[n]
                re = re + a * cos(ph)
                im = im - a * sin(ph)
            acc = re + 1j * im
            a = exp(-sig * logM)
            ph = tt * logM
            mpow = a * cos(ph) - 1j * a * sin(ph)
            acc = acc - 0.5 * mpow
            m1 = mpow * M
            if subtract_pole:
                acc = acc - logM * _expm1_over((1.0 - z) * logM)
            else:
                acc = acc + m1 / (z - 1.0)
            poch = z
            mk = m1 * inv_m2
            for k in range(nk):
                if k:
                    poch = poch * (z + (2 * k - 1)) * (z + 2 * k)
                    mk = mk * inv_m2
                acc = acc + wv[k] * poch * mk
            ov[i] = acc
    return out
