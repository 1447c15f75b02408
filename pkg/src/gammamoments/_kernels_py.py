"""Pure-python (numpy/scipy) implementations of the hot kernels.

The compiled extension ``gammamoments._kernels`` implements the same two
entry points; ``backend.py`` picks whichever is importable.  Both operate on
1-D arrays and must agree to ~1e-13 relative (asserted in the test suite).
"""

import numpy as np
import scipy.special as sps

BACKEND_NAME = "python"

# Modified Bessel K0 for complex argument, Re z > 0, via the Sommerfeld
# integral K0(z) = int_0^inf exp(-z cosh t) dt.  The integrand is even and
# analytic, so the trapezoid rule converges beyond all polynomial orders;
# node count is scaled with the accumulated phase |Im z|*(cosh T - 1).
_K0_ASYMPTOTIC_CUTOFF = 30.0


def ln_gamma_complex(z):
    """Analytic log-gamma on complex arrays (principal continuation)."""
    return sps.loggamma(z)


def _k0_quadrature_one(z):
    zr = z.real
    cosh_t_max = 1.0 + 46.0 / zr
    t_max = float(np.arccosh(cosh_t_max))
    phase_range = abs(z.imag) * (cosh_t_max - 1.0)
    n = 400 + int(4.0 * phase_range) + int(40.0 * t_max)
    t = np.linspace(0.0, t_max, n)
    f = np.exp(-z * np.cosh(t))
    w = np.full(n, t_max / (n - 1))
    w[0] *= 0.5
    w[-1] *= 0.5
    return np.sum(f * w)


def _k0_asymptotic_one(z):
    # K0(z) ~ sqrt(pi/2z) e^{-z} sum_k t_k,  t_k = t_{k-1} * -(2k-1)^2/(8zk)
    term = 1.0 + 0.0j
    total = term
    for k in range(1, 40):
        term = term * (-((2 * k - 1) ** 2) / (8.0 * z * k))
        if abs(term) < 1e-17 * abs(total):
            total += term
            break
        total += term
    return np.sqrt(np.pi / (2.0 * z)) * np.exp(-z) * total


def k0_complex(z):
    """K0 on a complex array with Re z > 0 (caller checks the domain)."""
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    out = np.empty_like(z)
    big = np.abs(z) >= _K0_ASYMPTOTIC_CUTOFF
    for i in np.nonzero(big)[0]:
        out[i] = _k0_asymptotic_one(z[i])
    for i in np.nonzero(~big)[0]:
        out[i] = _k0_quadrature_one(z[i])
    return out
