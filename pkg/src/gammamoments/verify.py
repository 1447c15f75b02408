"""Quadrature harness checking moments against their gamma-product targets.

All comparisons happen in log domain: the integral is accumulated with its
peak magnitude factored out and compared to ln rho(n), never by subtracting
astronomically large numbers.  The substitution u = x^p (p the tail power)
maps each stretched-exponential density to an ~e^{-g u} integrand, and
oscillatory vanishing-moment integrals are summed panel-by-panel between
sign changes with compensated arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classes import Perturbation
from .errors import ConstraintError, ConvergenceError, TruncationError
from .moments import MomentSequence, log_moment
from .weights import WeightFunction

__all__ = ["MomentCheckResult", "check_moment", "check_vanishing"]

_NODE_CAP = 200_000  # evaluations per moment; exceeding it is an error
_WINDOW_DROP = 60.0  # integrand log-range kept around the peak


@dataclass(frozen=True)
class MomentCheckResult:
    """Outcome of one moment integral vs its target rho(n)."""

    n: int
    log_integral: float
    log_target: float
    rel_error: float
    nodes_used: int

    @property
    def passed(self) -> bool:
        return self.rel_error <= 1e-6


def _check_n(n):
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ConstraintError(f"moment order must be a nonnegative integer, got {n!r}")


def _scan_window(log_f, v_pk, v_floor=-800.0, v_ceil=None, step=0.5):
    """[v_lo, v_hi] where log_f stays within _WINDOW_DROP of its peak."""
    probe = v_pk + np.linspace(-4.0, 4.0, 33)
    if v_ceil is not None:
        probe = probe[probe <= v_ceil]
    vals = log_f(probe)
    i = int(np.argmax(vals))
    v_pk, peak = float(probe[i]), float(vals[i])
    v_hi = v_pk
    while log_f(np.array([v_hi]))[0] > peak - _WINDOW_DROP:
        v_hi += step
        if v_ceil is not None and v_hi >= v_ceil:
            raise TruncationError(
                "integration window exceeds the certified density range; "
                "the integrand has not decayed enough at the window edge")
        if v_hi > v_pk + 4000.0:
            raise ConvergenceError("integrand fails to decay on the right")
    v_lo = v_pk
    while log_f(np.array([v_lo]))[0] > peak - _WINDOW_DROP:
        v_lo -= 2.0 * step
        if v_lo < v_floor:
            raise ConvergenceError("integrand fails to decay on the left")
    v_hi += step
    if v_ceil is not None:
        v_hi = min(v_hi, v_ceil)
    return v_lo, v_hi


def check_moment(w: WeightFunction, seq: MomentSequence, n,
                 rtol: float = 1e-9, node_cap: int = _NODE_CAP) -> MomentCheckResult:
    """Verify int_0^inf x^n W(x) dx = rho(n) in log domain.

    Integrates in v = ln(x^p) with p the tail power of W, where the
    integrand decays like e^{-g e^v} on the right and like a pure
    exponential on the left -- trapezoid doubling is then spectrally
    accurate.
    """
    _check_n(n)
    g, p = w.growth
    log_target = log_moment(seq, n)

    def log_integrand(v):
        # x = e^{v/p};  x^n W(x) dx  ->  exp(((n+1)/p) v + ln W - ln p) dv
        return ((n + 1.0) / p) * v + w.log_evaluate(np.exp(v / p)) - math.log(p)

    v_ceil = None
    if not w.tail_certified:
        from .weights import _SPLINE_LOG_DEPTH
        v_ceil = math.log(_SPLINE_LOG_DEPTH / g) - 1e-9
    v_pk = math.log(max((n + 1.0) / (p * g), 1e-3))
    v_lo, v_hi = _scan_window(log_integrand, v_pk, v_ceil=v_ceil)

    nodes_used = 33 + 2  # window scan bookkeeping (approximate, small)
    n_nodes = 257
    prev = None
    while nodes_used + n_nodes <= node_cap:
        v = np.linspace(v_lo, v_hi, n_nodes)
        lv = log_integrand(v)
        m = float(np.max(lv))
        with np.errstate(under="ignore"):
            total = float(np.trapezoid(np.exp(lv - m), v))
        log_integral = m + math.log(total)
        nodes_used += n_nodes
        if prev is not None and abs(log_integral - prev) < rtol:
            rel = abs(math.expm1(log_integral - log_target))
            return MomentCheckResult(int(n), log_integral, log_target, rel,
                                     nodes_used)
        prev = log_integral
        n_nodes = 2 * (n_nodes - 1) + 1
    raise ConvergenceError(
        f"moment integral n={n} did not stabilize within {node_cap} nodes")


def check_vanishing(omega: Perturbation, seq: MomentSequence, n,
                    node_cap: int = _NODE_CAP) -> MomentCheckResult:
    """Verify int_0^inf x^n omega(x) dx = 0, measured relative to rho(n).

    The substitution u = x^p regularizes the tail; the oscillatory sum is
    taken panel-by-panel between sign changes and combined with math.fsum.
    """
    _check_n(n)
    g, p = omega.growth
    log_target = log_moment(seq, n)
    alpha0 = omega.seq.alpha0

    # in v = ln u the integrand ~ e^{(A+1)v} near -inf and ~ e^{-g e^v} at
    # +inf: analytic on the whole line, so trapezoid doubling is spectral.
    # A is the envelope exponent of u^A e^{-g u}; A >= 0 by alpha0 > -1.
    big_a = (n + 1.0 + alpha0) / p - 1.0
    u_pk = max((big_a + 1.0) / g, 1.0)
    u_hi = u_pk + 1.0
    peak = (big_a + 1.0) * math.log(u_pk) - g * u_pk
    while (big_a + 1.0) * math.log(u_hi) - g * u_hi > peak - _WINDOW_DROP:
        u_hi += max(1.0, 0.05 * u_hi)
    v_hi = math.log(u_hi)
    v_lo = math.log(u_pk) - _WINDOW_DROP / (big_a + 1.0)

    def integrand(v):
        # x = u^{1/p}, u = e^v;  x^n omega(x) dx -> (u^{(n+1)/p} / p) omega dv
        u = np.exp(v)
        with np.errstate(under="ignore"):
            return (u ** ((n + 1.0) / p) / p
                    * omega.evaluate(u ** (1.0 / p)))

    n_nodes = 4097
    nodes_used = 0
    prev = None
    abs_scale = None
    while nodes_used + n_nodes <= node_cap:
        v = np.linspace(v_lo, v_hi, n_nodes)
        h = integrand(v)
        nodes_used += n_nodes
        dv = v[1] - v[0]
        segments = 0.5 * (h[:-1] + h[1:]) * dv
        # panel boundaries at sign changes of the integrand
        flips = np.nonzero(np.diff(np.signbit(h)))[0]
        starts = np.unique(np.concatenate(([0], flips + 1)))
        starts = starts[starts < segments.size]
        panels = np.add.reduceat(segments, starts)
        total = math.fsum(panels.tolist())
        abs_scale = float(np.sum(np.abs(segments)))
        if prev is not None:
            tol = max(1e-10 * abs_scale,
                      math.exp(min(log_target + math.log(1e-9), 700.0)))
            if abs(total - prev) <= tol:
                log_integral = math.log(abs(total)) if total != 0.0 else -math.inf
                rel = math.exp(log_integral - log_target) if total != 0.0 else 0.0
                return MomentCheckResult(int(n), log_integral, log_target, rel,
                                         nodes_used)
        prev = total
        n_nodes = 2 * (n_nodes - 1) + 1
    raise ConvergenceError(
        f"vanishing-moment integral n={n} did not stabilize within "
        f"{node_cap} nodes")
