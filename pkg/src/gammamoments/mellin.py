"""Vertical-contour inverse Mellin transforms and Mellin convolution.

Everything on the contour is done in log domain: the symbol returns
log-values, the quadrature renormalizes by the peak magnitude, so gamma
products with huge arguments never overflow.  For tail evaluation the
abscissa is shifted to the real saddle point of the integrand, which keeps
the oscillatory sum cancellation-free at any x.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.special as sps
from scipy.optimize import brentq

from .errors import ConstraintError, ConvergenceError, TruncationError
from .moments import MomentSequence, mellin_symbol

__all__ = [
    "ContourSpec",
    "contour_nodes",
    "inverse_mellin",
    "inverse_mellin_log",
    "default_contour",
    "saddle_abscissa",
    "adapted_contour",
    "contour_density",
    "contour_log_density",
    "mellin_convolve",
    "mellin_convolve_many",
]

RULE_TRAPEZOID = "trapezoid"
RULE_DOUBLE_EXPONENTIAL = "double-exponential"

_LOG_DROP = 48.0  # integrand magnitude covered below its peak
_CANCEL_FLOOR = 1e-12  # |sum| / sum|terms| below this means no digits left


@dataclass(frozen=True)
class ContourSpec:
    c: float
    t_max: float
    n_points: int
    rule: str = RULE_TRAPEZOID

    def __post_init__(self):
        if self.t_max <= 0:
            raise ConstraintError("t_max must be positive")
        if self.n_points < 64:
            raise ConstraintError("n_points must be at least 64")
        if self.rule not in (RULE_TRAPEZOID, RULE_DOUBLE_EXPONENTIAL):
            raise ConstraintError(f"unknown contour rule {self.rule!r}")

    def refined(self, factor=2):
        return ContourSpec(self.c, self.t_max, factor * self.n_points, self.rule)


def contour_nodes(spec: ContourSpec):
    """Nodes t_i and weights for integrating along c + i t, t in [-t_max, t_max]."""
    n = spec.n_points
    if spec.rule == RULE_TRAPEZOID:
        t = np.linspace(-spec.t_max, spec.t_max, n)
        w = np.full(n, t[1] - t[0])
        w[0] *= 0.5
        w[-1] *= 0.5
        return t, w
    # double-exponential flavour: t = sinh(u) on a uniform u-grid
    u_max = float(np.arcsinh(spec.t_max))
    u = np.linspace(-u_max, u_max, n)
    h = u[1] - u[0]
    t = np.sinh(u)
    w = np.cosh(u) * h
    w[0] *= 0.5
    w[-1] *= 0.5
    return t, w


def _contour_sum(symbol, x, spec):
    """Renormalized quadrature sum; returns (log_scale, complex_sum, diag)."""
    t, w = contour_nodes(spec)
    s = spec.c + 1j * t
    lw = symbol(s) - s * np.log(x)
    m = float(np.max(lw.real))
    terms = np.exp(lw - m) * w
    total = np.sum(terms)
    mag = float(np.sum(np.abs(terms)))
    tail = float(np.sum(np.abs(terms[np.abs(t) > 0.9 * spec.t_max])))
    return m, total, mag, tail


def inverse_mellin(symbol, x, spec: ContourSpec) -> float:
    """(1/2 pi) int exp(symbol(c+it) - (c+it) ln x) dt, real part.

    symbol maps a complex array s to log-values of the transform.
    """
    log_val, sign = inverse_mellin_log(symbol, x, spec)
    return sign * np.exp(log_val)


def inverse_mellin_log(symbol, x, spec: ContourSpec):
    """Like inverse_mellin but returns (log |value|, sign); overflow-safe."""
    if x <= 0:
        raise ConstraintError("inverse Mellin transform requires x > 0")
    m, total, mag, tail = _contour_sum(symbol, x, spec)
    if mag > 0 and tail > 1e-10 * mag:
        raise TruncationError(
            f"contour tail contributes {tail / mag:.2e} of the integral; "
            "increase t_max")
    if abs(total) < _CANCEL_FLOOR * mag:
        raise TruncationError(
            "contour sum cancels below the noise floor; shift the abscissa "
            "toward the saddle point")
    roundoff = 10.0 * np.finfo(float).eps * mag * np.sqrt(spec.n_points)
    if abs(total.imag) > 1e-9 * abs(total) and abs(total.imag) > roundoff:
        raise ConvergenceError(
            f"contour sum asymmetry: Im/|sum| = {abs(total.imag) / abs(total):.2e}")
    value = total.real / (2.0 * np.pi)
    return m + np.log(abs(value)), float(np.sign(value))


def default_contour(seq: MomentSequence, x: float = 1.0) -> ContourSpec:
    """Static contour: abscissa one unit right of the rightmost symbol pole."""
    c = seq.rightmost_pole + 1.0
    rate = 0.5 * np.pi * seq.sum_a
    t_max = _LOG_DROP / rate
    n = _phase_resolved_points(seq, c, t_max, x)
    return ContourSpec(c, t_max, n)


def _phase_resolved_points(seq, c, t_max, x, minimum=2048):
    phase_rate = sum(a * (np.log1p(abs(a) * (abs(c) + t_max)) + 2.0)
                     for a, _ in seq.factors) + abs(np.log(x))
    n = int(max(minimum, 6.0 * t_max * phase_rate))
    return 1 << int(np.ceil(np.log2(n)))


def saddle_abscissa(seq: MomentSequence, x: float) -> float:
    """Real saddle of exp(symbol(s) - s ln x): sum_j a_j psi(a_j(s-1)+b_j) = ln x."""
    if x <= 0:
        raise ConstraintError("saddle abscissa requires x > 0")
    lo = seq.rightmost_pole + 1e-9
    target = np.log(x)

    def deriv(c):
        return sum(a * sps.digamma(a * (c - 1.0) + b) for a, b in seq.factors) - target

    hi = seq.rightmost_pole + 1.0
    while deriv(hi) < 0:
        hi = seq.rightmost_pole + 2.0 * (hi - seq.rightmost_pole)
        if hi > 1e12:
            raise ConvergenceError("saddle search failed to bracket")
    if deriv(lo) > 0:
        return lo
    return float(brentq(deriv, lo, hi, xtol=1e-10, rtol=1e-12))


def adapted_contour(seq: MomentSequence, x: float) -> ContourSpec:
    """Saddle-shifted contour: cancellation-free even deep in the tail."""
    c = max(saddle_abscissa(seq, x), seq.rightmost_pole + 1e-8)
    curvature = sum(a * a * sps.polygamma(1, a * (c - 1.0) + b)
                    for a, b in seq.factors)
    t_gauss = np.sqrt(2.0 * _LOG_DROP / max(curvature, 1e-300))
    t_linear = _LOG_DROP / (0.5 * np.pi * seq.sum_a)
    t_max = t_gauss + t_linear

    def drop(t):
        return float((mellin_symbol(seq, c + 1j * t)
                      - mellin_symbol(seq, c + 0j)).real)

    while drop(t_max) > -(_LOG_DROP - 4.0):
        t_max *= 1.5
    n = _phase_resolved_points(seq, c, t_max, x, minimum=512)
    # near a pole the peak is narrow (width ~ 1/sqrt(phi'')); resolve it
    n_peak = int(12.0 * t_max * np.sqrt(curvature))
    if n_peak > n:
        n = 1 << int(np.ceil(np.log2(n_peak)))
    return ContourSpec(c, t_max, n)


def contour_log_density(seq: MomentSequence, x: float, rtol: float = 1e-10,
                        max_points: int = 1 << 17):
    """(log W(x), sign) for the principal density, by self-converging contour."""
    spec = adapted_contour(seq, x)

    def symbol(s):
        return mellin_symbol(seq, s)

    # always allow at least two refinement rounds for the convergence check
    max_points = max(max_points, 4 * spec.n_points)
    log_val, sign = inverse_mellin_log(symbol, x, spec)
    while spec.n_points < max_points:
        spec = spec.refined()
        log_ref, sign_ref = inverse_mellin_log(symbol, x, spec)
        if sign_ref == sign and abs(log_ref - log_val) < rtol:
            return log_ref, sign_ref
        log_val, sign = log_ref, sign_ref
    raise ConvergenceError(
        f"contour density did not converge below {rtol} at x={x}")


def contour_density(seq: MomentSequence, x: float, rtol: float = 1e-10) -> float:
    log_val, sign = contour_log_density(seq, x, rtol)
    return sign * float(np.exp(log_val))


# ---------------------------------------------------------------------------
# Mellin convolution


def _support_window(log_h, lo=-120.0, hi=120.0, n=1201, pad=3.0):
    """Window in u where the log-integrand is within _LOG_DROP of its max."""
    u = np.linspace(lo, hi, n)
    lh = log_h(u)
    if not np.any(np.isfinite(lh)):
        raise ConvergenceError("convolution integrand vanished everywhere")
    m = np.nanmax(lh)
    alive = np.nonzero(lh > m - _LOG_DROP)[0]
    return u[alive[0]] - pad, u[alive[-1]] + pad, m


def mellin_convolve(f, g, x, rtol: float = 1e-9, max_depth: int = 14) -> float:
    """int_0^inf f(x/t) g(t) dt/t by trapezoid doubling after t = e^u."""
    return float(mellin_convolve_many(f, g, np.asarray([x], dtype=float),
                                      rtol=rtol, max_depth=max_depth)[0])


def mellin_convolve_many(f, g, xs, rtol: float = 1e-9, max_depth: int = 14,
                         log_f=None, log_g=None):
    """Vectorized Mellin convolution on an array of evaluation points.

    f and g must accept numpy arrays.  When log_f/log_g are given, the
    support scan runs in log domain (needed when the factors underflow).
    """
    xs = np.asarray(xs, dtype=np.float64)
    if np.any(xs <= 0):
        raise ConstraintError("mellin_convolve requires x > 0")
    out = np.empty_like(xs)
    order = np.argsort(xs)
    sorted_xs = xs[order]
    # chunks share one u-window, so keep each one narrow in ln x
    lx = np.log(sorted_xs)
    start = 0
    while start < xs.size:
        stop = start + 1
        while (stop < xs.size and stop - start < 256
               and lx[stop] - lx[start] <= 4.0):
            stop += 1
        idx = order[start:stop]
        out[idx] = _convolve_chunk(f, g, sorted_xs[start:stop], rtol, max_depth,
                                   log_f, log_g)
        start = stop
    return out


def _convolve_chunk(f, g, xs, rtol, max_depth, log_f, log_g):
    lf = log_f if log_f is not None else _log_abs_wrap(f)
    lg = log_g if log_g is not None else _log_abs_wrap(g)

    probes = np.exp(np.linspace(np.log(xs.min()), np.log(xs.max()), 7))

    def log_h(u):
        # upper envelope over the chunk; fixes a common u-window
        t = np.exp(u)
        vals = np.full(u.shape, -np.inf)
        for x in probes:
            with np.errstate(over="ignore", under="ignore", divide="ignore",
                             invalid="ignore"):
                vals = np.maximum(vals, lf(x / t) + lg(t))
        return vals

    u_lo, u_hi, _ = _support_window(log_h)
    n = 257
    prev = None
    prev_abs = None
    for _ in range(max_depth):
        if xs.size * n > 50_000_000:
            raise ConvergenceError(
                "mellin convolution grid exceeded the memory budget before "
                f"reaching rtol={rtol}")
        u = np.linspace(u_lo, u_hi, n)
        t = np.exp(u)
        with np.errstate(under="ignore"):
            h = f(xs[:, None] / t[None, :]) * g(t)[None, :]
        w = np.full(n, u[1] - u[0])
        w[0] *= 0.5
        w[-1] *= 0.5
        vals = h @ w
        abs_vals = np.abs(h) @ w
        if prev is not None:
            err = np.abs(vals - prev)
            # near zero crossings |vals| << abs_vals; roundoff on the
            # cancelling sum caps the achievable absolute accuracy there
            floor = 1e-12 * np.maximum(abs_vals, prev_abs)
            if np.all(err <= rtol * np.abs(vals) + floor):
                return vals
        prev, prev_abs = vals, abs_vals
        n = 2 * (n - 1) + 1
    raise ConvergenceError(
        f"mellin convolution failed to reach rtol={rtol} after {max_depth} levels")


def _log_abs_wrap(func):
    def log_abs(v):
        with np.errstate(divide="ignore", over="ignore", under="ignore"):
            return np.log(np.abs(func(v)))
    return log_abs
