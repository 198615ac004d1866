"""Numpy implementations of the evaluation kernels (fallback for ``_core``)."""
import numpy as np

_CHUNK = 1 << 22  # max elements of a temporary (zeros x points) block


def horner_eval(coeffs, z):
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    val = np.zeros_like(z)
    der = np.zeros_like(z)
    if coeffs.size == 0:
        return val, der
    val[:] = coeffs[-1]
    for c in coeffs[-2::-1]:
        der = der * z + val
        val = val * z + c
    return val, der


def lacunary_eval(log2exp, coeffs, z):
    log2exp = np.asarray(log2exp, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    val = np.zeros_like(z)
    der = np.zeros_like(z)
    if coeffs.size == 0:
        return val, der
    p = z.copy()
    q = np.ones_like(z)
    j = 0
    for k in range(int(log2exp[-1]) + 1):
        while j < len(coeffs) and log2exp[j] == k:
            val += coeffs[j] * p
            der += coeffs[j] * float(2**k) * q
            j += 1
        q *= p
        p *= p
    return val, der


def unit_factors(a):
    """|a|/a, or 1 where a = 0.

    Computed as conj(a)/|a| after scaling a by max(|Re a|, |Im a|), which
    stays exact for subnormal a where complex division overflows.
    """
    a = np.asarray(a, dtype=np.complex128)
    s = np.maximum(np.abs(a.real), np.abs(a.imag))
    s = np.where(s == 0, 1.0, s)
    re, im = a.real / s, a.imag / s
    mod = np.where(a == 0, 1.0, np.hypot(re, im))
    return np.where(a == 0, 1.0, re / mod - 1j * (im / mod))


def _factors(a, z):
    """Blaschke factors and their derivatives, shape (len(a), len(z))."""
    a = a[:, None]
    mod2 = (a * a.conj()).real
    unit = unit_factors(a)
    den = 1 - a.conj() * z
    with np.errstate(divide="ignore", invalid="ignore"):
        fac = np.where(a == 0, z, unit * (a - z) / den)
        dfac = np.where(a == 0, 1.0 + 0j, unit * (mod2 - 1) / den**2)
    return fac, dfac


def blaschke_eval(zeros, z, fallback_tol=1e-8):
    zeros = np.asarray(zeros, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    val = np.ones_like(z)
    logd = np.zeros_like(z)
    if zeros.size == 0:
        return val, np.zeros_like(z)
    near = np.zeros(z.shape, dtype=bool)
    step = max(1, _CHUNK // max(1, z.size))
    for lo in range(0, zeros.size, step):
        a = zeros[lo:lo + step, None]
        diff = a - z
        near |= (np.abs(diff) < fallback_tol).any(axis=0)
        fac, _ = _factors(zeros[lo:lo + step], z)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            mod2 = (a * a.conj()).real
            term = np.where(a == 0, 1 / z, (mod2 - 1) / ((1 - a.conj() * z) * diff))
            logd += term.sum(axis=0)
        val *= fac.prod(axis=0)
    with np.errstate(invalid="ignore", over="ignore"):
        der = val * logd  # points next to a zero are redone below
    for i in np.flatnonzero(near):
        fac, dfac = _factors(zeros, z[i:i + 1])
        fac, dfac = fac[:, 0], dfac[:, 0]
        pre = np.concatenate(([1.0 + 0j], np.cumprod(fac)))
        suf = np.concatenate((np.cumprod(fac[::-1])[::-1][1:], [1.0 + 0j]))
        val[i] = pre[-1]
        der[i] = np.sum(dfac * pre[:-1] * suf)
    return val, der
