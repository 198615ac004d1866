# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernels.

Same signatures and results as :mod:`bernlab._kernels_py`; selected by
:mod:`bernlab.kernels` at import time.
"""
import numpy as np

from ._kernels_py import unit_factors


cdef inline double cabs2(double complex w) nogil:
    return w.real * w.real + w.imag * w.imag


def horner_eval(const double complex[::1] coeffs, const double complex[::1] z):
    """Values and derivatives of sum coeffs[k] z**k at every point of ``z``."""
    cdef Py_ssize_t n = z.shape[0], d = coeffs.shape[0], i, k
    val = np.zeros(n, dtype=np.complex128)
    der = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] v = val, dv = der
    cdef double complex p, q, x
    if d == 0:
        return val, der
    with nogil:
        for i in range(n):
            x = z[i]
            p = coeffs[d - 1]
            q = 0
            for k in range(d - 2, -1, -1):
                q = q * x + p
                p = p * x + coeffs[k]
            v[i] = p
            dv[i] = q
    return val, der


def lacunary_eval(const long long[::1] log2exp, const double complex[::1] coeffs,
                  const double complex[::1] z):
    """Values and derivatives of sum coeffs[j] z**(2**log2exp[j]).

    ``log2exp`` must be sorted increasingly. Powers come from repeated squaring.
    """
    cdef Py_ssize_t n = z.shape[0], m = coeffs.shape[0], i, j
    cdef long long k, kmax
    val = np.zeros(n, dtype=np.complex128)
    der = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] v = val, dv = der
    cdef double complex p, q, s, ds, x
    if m == 0:
        return val, der
    kmax = log2exp[m - 1]
    with nogil:
        for i in range(n):
            x = z[i]
            p = x       # z**(2**k)
            q = 1       # z**(2**k - 1)
            s = 0
            ds = 0
            j = 0
            k = 0
            while k <= kmax:
                while j < m and log2exp[j] == k:
                    s = s + coeffs[j] * p
                    ds = ds + coeffs[j] * (<double>(1LL << k)) * q
                    j += 1
                q = q * p
                p = p * p
                k += 1
            v[i] = s
            dv[i] = ds
    return val, der


def blaschke_eval(const double complex[::1] zeros, const double complex[::1] z,
                  double fallback_tol=1e-8):
    """Values and derivatives of the Blaschke product with the given zeros.

    Factor convention b_a(z) = (|a|/a)(a - z)/(1 - conj(a) z), b_0(z) = z.
    The derivative uses the logarithmic-derivative sum, except within
    ``fallback_tol`` of a zero where the exact product rule is used.
    """
    cdef Py_ssize_t n = z.shape[0], m = zeros.shape[0], i, j
    val = np.zeros(n, dtype=np.complex128)
    der = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] v = val, dv = der
    a_np = np.asarray(zeros)
    conj_np = np.conj(a_np)
    mod2_np = np.abs(a_np) ** 2
    unit_np = unit_factors(a_np)
    cdef double complex[::1] unit = unit_np, ca = conj_np
    cdef double[::1] mod2 = mod2_np
    fac_np = np.empty(m, dtype=np.complex128)
    dfac_np = np.empty(m, dtype=np.complex128)
    pre_np = np.empty(m + 1, dtype=np.complex128)
    cdef double complex[::1] fac = fac_np, dfac = dfac_np, pre = pre_np
    cdef double complex x, den, suf, acc
    cdef double tol2 = fallback_tol * fallback_tol
    cdef bint near
    cdef double xr, xi, ar, ai, dr, di, er, ei, tr, ti, br, bi, sr, si, q, g
    with nogil:
        for i in range(n):
            x = z[i]
            xr = x.real
            xi = x.imag
            br = 1.0
            bi = 0.0
            sr = 0.0
            si = 0.0
            near = False
            for j in range(m):
                ar = zeros[j].real
                ai = zeros[j].imag
                dr = ar - xr
                di = ai - xi
                if dr * dr + di * di < tol2:
                    near = True
                    break
                if ar == 0 and ai == 0:
                    tr = br * xr - bi * xi
                    bi = br * xi + bi * xr
                    br = tr
                    q = 1.0 / (xr * xr + xi * xi)
                    sr += xr * q
                    si -= xi * q
                    continue
                # den = 1 - conj(a) z
                er = 1.0 - (ar * xr + ai * xi)
                ei = ai * xr - ar * xi
                # b *= unit * diff / den
                q = 1.0 / (er * er + ei * ei)
                tr = (dr * er + di * ei) * q
                ti = (di * er - dr * ei) * q
                g = tr * unit[j].real - ti * unit[j].imag
                ti = tr * unit[j].imag + ti * unit[j].real
                tr = br * g - bi * ti
                bi = br * ti + bi * g
                br = tr
                # s += (|a|^2 - 1) / (den * diff)
                tr = er * dr - ei * di
                ti = er * di + ei * dr
                q = (mod2[j] - 1.0) / (tr * tr + ti * ti)
                sr += tr * q
                si -= ti * q
            if not near:
                v[i].real = br
                v[i].imag = bi
                dv[i].real = br * sr - bi * si
                dv[i].imag = br * si + bi * sr
                continue
            # exact product rule: B' = sum_j b_j' prod_{i != j} b_i
            for j in range(m):
                if zeros[j].real == 0 and zeros[j].imag == 0:
                    fac[j] = x
                    dfac[j] = 1
                else:
                    den = 1 - ca[j] * x
                    fac[j] = unit[j] * (zeros[j] - x) / den
                    dfac[j] = unit[j] * (mod2[j] - 1) / (den * den)
            pre[0] = 1
            for j in range(m):
                pre[j + 1] = pre[j] * fac[j]
            suf = 1
            acc = 0
            for j in range(m - 1, -1, -1):
                acc = acc + dfac[j] * pre[j] * suf
                suf = suf * fac[j]
            v[i] = pre[m]
            dv[i] = acc
    return val, der
