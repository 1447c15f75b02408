"""Vanishing-moment perturbations and the non-unique solution families.

omega1 is a sine-modulated copy of the first principal density, omega2 its
"near factorization" through complex K0, omega3 a purely numeric Mellin
convolution.  Class members are principal solution + amplitude * omega;
for the second family the admissible amplitude is found by a grid search
over the oscillating ratio V/K0 with golden-section refinement.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConstraintError, SearchError
from .mellin import mellin_convolve_many
from .moments import MomentSequence, tm1, tm2, tm3
from .special import bessel_k0_complex, log_bessel_k0
from .weights import WeightFunction, log_w1, w1, weight_tm1, weight_tm2, weight_tm3

__all__ = [
    "Perturbation",
    "StieltjesClassMember",
    "omega1",
    "omega2",
    "omega2_v",
    "omega2_via_convolution",
    "omega3",
    "perturbation_tm1",
    "perturbation_tm2",
    "perturbation_tm3",
    "class_member_tm1",
    "class_member_tm2",
    "class_member_tm3",
    "find_gamma_max",
    "certify_nonnegative",
]


@dataclass(frozen=True)
class Perturbation:
    """A function on (0, inf) whose Stieltjes moments all vanish."""

    family: str  # "tm1" | "tm2" | "tm3"
    r: int
    k: int
    seq: MomentSequence  # yardstick rho(n) for "vanishing"
    growth: tuple  # (g, p): -ln |omega| <~ g x^p in the tail
    evaluate: object = field(repr=False)  # callable, vectorized
    log_envelope: object = field(repr=False)  # callable: bound on ln |omega|

    def __call__(self, x):
        return self.evaluate(x)


@dataclass(frozen=True)
class StieltjesClassMember:
    """principal solution + amplitude * perturbation; same moments as base."""

    base: WeightFunction
    perturbation: Perturbation
    amplitude: float

    def evaluate(self, x):
        return self.base.evaluate(x) + self.amplitude * self.perturbation.evaluate(x)

    def __call__(self, x):
        return self.evaluate(x)


def _check_k(k):
    if not isinstance(k, (int, np.integer)) or k == 0:
        raise ConstraintError(f"k must be a nonzero integer, got {k!r}")


# -- family 1 ---------------------------------------------------------------

def _sine_factor(q, k, x):
    phase0 = k * math.pi * (q - 1.0) / q
    slope = math.tan(k * math.pi / q)
    return np.sin(phase0 + np.asarray(x, dtype=float) ** (1.0 / q) * slope)


def omega1_general(q, k, x):
    """Vanishing-moment partner of the (qn)! density; needs q > 2|k|."""
    _check_k(k)
    if q <= 2 * abs(k):
        raise ConstraintError(f"omega1 factor requires q > 2|k| (q={q}, k={k})")
    return w1(q, x) * _sine_factor(q, k, x)


def omega1(r, k, x):
    """First-family perturbation; the side condition is r > |k|."""
    _check_k(k)
    if not r > abs(k):
        raise ConstraintError(f"first family requires r > |k| (r={r}, k={k})")
    return omega1_general(2 * r, k, x)


def perturbation_tm1(r, k) -> Perturbation:
    omega1(r, k, 1.0)  # constraint check
    return Perturbation(
        family="tm1", r=r, k=k, seq=tm1(r), growth=(1.0, 1.0 / (2.0 * r)),
        evaluate=lambda x, r=r, k=k: omega1(r, k, x),
        log_envelope=lambda x, r=r: log_w1(2 * r, x))


# -- family 2 ---------------------------------------------------------------

def _beta(r, k):
    """Principal square root of 1 + i tan(pi k / r); Re > 0 for r > 2|k|."""
    return complex(np.sqrt(1.0 + 1j * math.tan(math.pi * k / r)))


def omega2_v(r, k, x):
    """The oscillating factor V: Re[e^{i pi(1/2 - k(r-1)/r)} K0(2 x^{1/2r} beta)]."""
    _check_k(k)
    if not r > 2 * abs(k):
        raise ConstraintError(f"second family requires r > 2|k| (r={r}, k={k})")
    phase = np.exp(1j * math.pi * (0.5 - k * (r - 1.0) / r))
    u = np.asarray(x, dtype=float) ** (1.0 / (2.0 * r))
    vals = bessel_k0_complex(2.0 * u * _beta(r, k))
    out = np.real(phase * vals)
    return float(out) if np.isscalar(x) else out


def omega2(r, k, x):
    """Second-family perturbation, closed form via complex K0."""
    xa = np.asarray(x, dtype=float)
    out = 2.0 / (r * xa ** ((r - 1.0) / r)) * omega2_v(r, k, x)
    return float(out) if np.isscalar(x) else out


def omega2_via_convolution(r, k, x, rtol=1e-9):
    """Same function by the convolution route (half-index densities)."""
    _check_k(k)
    if not r > 2 * abs(k):
        raise ConstraintError(f"second family requires r > 2|k| (r={r}, k={k})")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = mellin_convolve_many(
        lambda v: w1(r, v),
        lambda v: omega1_general(r, k, v),
        xs, rtol=rtol,
        log_f=lambda v: log_w1(r, v),
        log_g=lambda v: log_w1(r, v))
    return float(out[0]) if np.isscalar(x) else out


def perturbation_tm2(r, k) -> Perturbation:
    omega2_v(r, k, 1.0)  # constraint check
    return Perturbation(
        family="tm2", r=r, k=k, seq=tm2(r), growth=(2.0, 1.0 / (2.0 * r)),
        evaluate=lambda x, r=r, k=k: omega2(r, k, x),
        log_envelope=lambda x, r=r: _log_omega2_envelope(r, x))


def _log_omega2_envelope(r, x):
    # |V| <= K0(2 x^{1/2r} Re beta) <= K0 at the real axis; the plain W2
    # envelope is a safe overestimate
    from .weights import log_w2
    return log_w2(r, x)


# -- family 3 ---------------------------------------------------------------

def omega3(r, k, x, rtol=1e-9):
    """Third-family perturbation: W2 convolved with the half-index omega1."""
    _check_k(k)
    if not r > abs(k):
        raise ConstraintError(f"third family requires r > |k| (r={r}, k={k})")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    w2w = weight_tm2(r)
    out = mellin_convolve_many(
        w2w.evaluate,
        lambda v: omega1_general(r, k, v),
        xs, rtol=rtol,
        log_f=w2w.log_evaluate,
        log_g=lambda v: log_w1(r, v))
    return float(out[0]) if np.isscalar(x) else out


def perturbation_tm3(r, k) -> Perturbation:
    _check_k(k)
    if not r > abs(k):
        raise ConstraintError(f"third family requires r > |k| (r={r}, k={k})")
    omega1_general(r, k, 1.0)  # the convolution partner has its own condition
    seq = tm3(r)
    return Perturbation(
        family="tm3", r=r, k=k, seq=seq,
        growth=(seq.tail_coefficient, seq.tail_power),
        evaluate=lambda x, r=r, k=k: omega3(r, k, x),
        log_envelope=lambda x, r=r: weight_tm3(r).log_evaluate(x))


# -- class members ----------------------------------------------------------

def class_member_tm1(r, k, eps, x):
    """W1 * [1 + eps * sin(...)]; nonnegative for |eps| < 1."""
    if abs(eps) >= 1.0:
        raise ConstraintError(f"first family needs |eps| < 1, got {eps}")
    _check_k(k)
    if not r > abs(k):
        raise ConstraintError(f"first family requires r > |k| (r={r}, k={k})")
    return w1(2 * r, x) * (1.0 + eps * _sine_factor(2 * r, k, x))


def class_member_tm2(r, k, gamma, x, gamma_bound=None):
    """W2 * [1 + gamma V/K0]; |gamma| must stay within the certified bound."""
    if gamma_bound is None:
        gamma_bound = find_gamma_max(r, k)
    if abs(gamma) > gamma_bound:
        raise ConstraintError(
            f"|gamma| = {abs(gamma):.6g} exceeds the certified bound "
            f"{gamma_bound:.6g} for (r={r}, k={k})")
    xa = np.asarray(x, dtype=float)
    u = xa ** (1.0 / (2.0 * r))
    ratio = omega2_v(r, k, xa) * np.exp(-log_bessel_k0(2.0 * u))
    return weight_tm2(r).evaluate(xa) * (1.0 + gamma * ratio)


def class_member_tm3(r, k, gamma, x, rtol=1e-9):
    """W3 + gamma * omega3; the family the construction implies for [(rn)!]^3.

    No closed positivity bound exists here; callers certify nonnegativity
    numerically (certify_nonnegative) for their amplitude of interest.
    """
    xa = np.asarray(x, dtype=float)
    return weight_tm3(r).evaluate(xa) + gamma * omega3(r, k, xa, rtol=rtol)


def member_tm1(r, k, eps) -> StieltjesClassMember:
    class_member_tm1(r, k, eps, 1.0)  # constraint check
    return StieltjesClassMember(weight_tm1(r), perturbation_tm1(r, k), eps)


def member_tm2(r, k, gamma) -> StieltjesClassMember:
    class_member_tm2(r, k, gamma, 1.0)  # constraint + bound check
    return StieltjesClassMember(weight_tm2(r), perturbation_tm2(r, k), gamma)


# -- amplitude search -------------------------------------------------------

def _ratio_v_over_k0(r, k, x):
    u = np.asarray(x, dtype=float) ** (1.0 / (2.0 * r))
    return omega2_v(r, k, x) * np.exp(-log_bessel_k0(2.0 * u))


def _grid_eval(func, xs):
    """Chunked, optionally threaded grid evaluation; deterministic reduce."""
    n_threads = int(os.environ.get("GAMMOMENTS_THREADS", "1"))
    chunks = np.array_split(xs, max(1, xs.size // 512))
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            parts = list(pool.map(func, chunks))
    else:
        parts = [func(c) for c in chunks]
    return np.concatenate(parts)


def find_gamma_max(r, k, grid_points=4000, safety=0.99):
    """Largest amplitude keeping 1 + gamma V/K0 nonnegative, times `safety`.

    The ratio tends to cos(pi(1/2 - k(r-1)/r)) at the origin and decays to
    zero at infinity (Re beta > 1), so its infimum lives on a finite window.
    """
    _check_k(k)
    if not r > 2 * abs(k):
        raise ConstraintError(f"second family requires r > 2|k| (r={r}, k={k})")
    beta_re = _beta(r, k).real
    u_star = math.log(1e8) / (2.0 * (beta_re - 1.0))
    x_hi = u_star ** (2 * r)
    xs = np.logspace(-8, math.log10(x_hi), grid_points)
    ratio = _grid_eval(lambda c: _ratio_v_over_k0(r, k, c), xs)
    neg = -ratio
    i = int(np.argmax(neg))
    worst = float(neg[i])
    if worst <= 0.0:
        raise SearchError(
            f"V/K0 never negative on the scan grid for (r={r}, k={k}); "
            "cannot certify an amplitude bound")
    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, xs.size - 1)]
    res = minimize_scalar(lambda v: float(_ratio_v_over_k0(r, k, np.exp(v))),
                          bounds=(math.log(lo), math.log(hi)), method="bounded",
                          options={"xatol": 1e-10})
    refined = max(worst, -float(res.fun))
    if refined > 10.0 * worst:
        raise SearchError(
            f"V/K0 infimum kept growing under refinement for (r={r}, k={k}); "
            "ratio may be unbounded")
    return safety / refined


def certify_nonnegative(member_eval, x_lo, x_hi, n, seed):
    """Monte Carlo recheck: member >= 0 on a random log-uniform grid."""
    rng = np.random.default_rng(seed)
    xs = np.exp(rng.uniform(math.log(x_lo), math.log(x_hi), size=n))
    vals = member_eval(np.sort(xs))
    bad = vals < 0.0
    return (not np.any(bad)), float(np.min(vals))
