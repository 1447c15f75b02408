"""Log-gamma and modified Bessel functions used by every closed form.

Real K0/K1 are delegated to scipy's SLATEC routines (full double accuracy
over the whole range); complex K0 and complex log-gamma go through the
kernel backend (compiled extension or numpy fallback).
"""

import warnings

import numpy as np
import scipy.special as sps

from .backend import k0_complex as _k0_backend
from .backend import ln_gamma_complex as _lngamma_backend
from .errors import DomainError, PoleError

__all__ = [
    "ln_gamma",
    "bessel_k0",
    "bessel_k1",
    "log_bessel_k0",
    "bessel_k0_complex",
    "UnderflowWarning",
]

_K_UNDERFLOW_X = 705.0  # exp(-x) leaves the double range shortly after


class UnderflowWarning(RuntimeWarning):
    """K0/K1 underflowed to zero beyond the double exponent range."""


def _as_1d_complex(z):
    arr = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if not np.all(np.isfinite(arr)):
        raise DomainError("non-finite argument")
    return arr


def ln_gamma(z):
    """Principal-branch analytic log-gamma.

    Scalar in, scalar out; arrays are mapped elementwise.  Nonpositive real
    integers raise PoleError.  Re z <= 0 is served by the reflection formula
    (only the form the contour machinery needs; branch continuity across
    Im z = 0 is not promised there).
    """
    scalar = np.isscalar(z) or (isinstance(z, np.ndarray) and z.ndim == 0)
    arr = _as_1d_complex(z)
    on_axis = arr.imag == 0.0
    bad = on_axis & (arr.real <= 0.0) & (arr.real == np.floor(arr.real))
    if np.any(bad):
        raise PoleError(f"log-gamma pole at z = {arr[bad][0]}")
    out = np.empty_like(arr)
    right = arr.real > 0.0
    if np.any(right):
        out[right] = _lngamma_backend(arr[right])
    if np.any(~right):
        w = arr[~right]
        refl = np.log(np.pi) - np.log(np.sin(np.pi * w)) - _lngamma_backend(1.0 - w)
        out[~right] = refl
    if scalar:
        val = complex(out[0])
        return val.real if (np.isscalar(z) and not isinstance(z, complex)
                            and np.imag(z) == 0) else val
    return out


def _check_positive_real(x, name):
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name}: non-finite argument")
    if np.any(arr <= 0.0):
        raise DomainError(f"{name} requires x > 0, got {arr[arr <= 0.0][0]}")
    return arr


def _warn_underflow(arr):
    if np.any(arr > _K_UNDERFLOW_X):
        warnings.warn(
            "K underflowed to 0 beyond the double exponent range",
            UnderflowWarning,
            stacklevel=3,
        )


def bessel_k0(x):
    """Modified Bessel K0 for real x > 0."""
    arr = _check_positive_real(x, "bessel_k0")
    _warn_underflow(arr)
    out = sps.k0(arr)
    return float(out[0]) if np.isscalar(x) else out


def bessel_k1(x):
    """Modified Bessel K1 for real x > 0."""
    arr = _check_positive_real(x, "bessel_k1")
    _warn_underflow(arr)
    out = sps.k1(arr)
    return float(out[0]) if np.isscalar(x) else out


def log_bessel_k0(x):
    """ln K0(x) without underflow, via the scaled routine k0e."""
    arr = _check_positive_real(x, "log_bessel_k0")
    out = np.log(sps.k0e(arr)) - arr
    return float(out[0]) if np.isscalar(x) else out


def bessel_k0_complex(z):
    """K0(z) for Re z > 0 by principal-branch analytic continuation."""
    scalar = np.isscalar(z) or (isinstance(z, np.ndarray) and z.ndim == 0)
    arr = _as_1d_complex(z)
    if np.any(arr.real <= 0.0):
        raise DomainError("bessel_k0_complex requires Re z > 0")
    out = _k0_backend(arr)
    return complex(out[0]) if scalar else out
