"""Pure numpy Euler-Maclaurin kernel (fallback when the extension is absent)."""
import numpy as np

# rows of the (points x terms) block evaluated at once
_BLOCK = 1 << 16


def _expm1_over(u):
    """(e^u - 1)/u, stable near u = 0."""
    out = np.empty_like(u)
    small = np.abs(u) < 0.5
    big = ~small
    out[big] = (np.exp(u[big]) - 1.0) / u[big]
    us = u[small]
    acc = np.ones_like(us)
    term = np.ones_like(us)
    for k in range(1, 24):
        term = term * us / (k + 1)
        acc = acc + term
    out[small] = acc
    return out


def em_sum(s, M, weights, subtract_pole=False):
    """Euler-Maclaurin approximation to zeta at every entry of ``s``.

    Parameters
    ----------
    s : ndarray of complex
    M : int
        Dirichlet cutoff.
    weights : ndarray of float
        ``B_{2k}/(2k)!`` for the correction terms to include.
    subtract_pole : bool
        Return zeta(s) - 1/(s-1) instead, computed without cancellation.
    """
    s = np.ascontiguousarray(s, dtype=complex).reshape(-1)
    logn = np.log(np.arange(1, M + 1, dtype=float))
    out = np.empty(s.size, dtype=complex)
    step = max(1, _BLOCK // M)
    for i in range(0, s.size, step):
        blk = s[i : i + step]
        out[i : i + step] = np.exp(-np.outer(blk, logn)).sum(axis=1)
    logM = logn[-1]
    m_pow = np.exp(-s * logM)  # M^{-s}
    out -= 0.5 * m_pow
    m1 = m_pow * M  # M^{1-s}
    if subtract_pole:
        u = (1.0 - s) * logM
        out -= logM * _expm1_over(u)
    else:
        out += m1 / (s - 1.0)
    # sum_k B_2k/(2k)! s(s+1)...(s+2k-2) M^{1-s-2k}
    poch = s.copy()
    mk = m1 / (M * M)
    inv_m2 = 1.0 / (M * M)
    for k, w in enumerate(weights):
        if k:
            poch = poch * (s + (2 * k - 1)) * (s + 2 * k)
            mk = mk * inv_m2
        out += w * poch * mk
    return out
