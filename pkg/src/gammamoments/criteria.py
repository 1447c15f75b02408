"""Numeric uniqueness criteria for Stieltjes moment problems.

Three classical tests are decided numerically and combined into one report:

  C1 (Carleman):    sum rho(n)^{-1/2n} = inf  =>  unique
  C2 (Krein):       int -ln W(x^2)/(1+x^2) dx < inf  =>  non-unique
  C3 (converse):    psi(y) = -ln W(e^y) convex beyond some y', together
                    with a convergent Carleman sum  =>  non-unique

Series/integral convergence is classified by exponent fitting with an
explicit dead zone; borderline cases surface as Undecided rather than
being silently resolved.  For densities whose tail law is certified by a
closed form, the Krein exponent is taken from that law; for quadrature-
backed densities the verdict stays Undecided on principle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import (ConsistencyError, ConstraintError, InconclusiveError,
                     RefusesError, UndecidedError)
from .moments import MomentSequence, log_moment
from .weights import WeightFunction

__all__ = [
    "CarlemanResult",
    "KreinResult",
    "ConverseCarlemanResult",
    "CriterionReport",
    "carleman",
    "krein",
    "converse_carleman",
    "full_report",
]

_SLOPE_DEAD_ZONE = 0.05  # around the critical decay exponent -1
_KREIN_DEAD_ZONE = 0.02  # around the critical growth exponent 1


@dataclass(frozen=True)
class CarlemanResult:
    verdict: str  # "Divergent" | "Convergent"
    terms: tuple  # of (n, a_n)
    fitted_decay_exponent: float
    n_a_n_limit: float = math.nan  # lim n*a_n when the slope sits at -1

    def to_dict(self):
        return {"verdict": self.verdict,
                "fitted_decay_exponent": self.fitted_decay_exponent,
                "n_a_n_limit": self.n_a_n_limit,
                "terms": [[int(n), a] for n, a in self.terms]}


@dataclass(frozen=True)
class KreinResult:
    verdict: str  # "Finite" | "Infinite" | "Undecided"
    integral_estimate: float
    growth_exponent: float

    def to_dict(self):
        return {"verdict": self.verdict,
                "integral_estimate": self.integral_estimate,
                "growth_exponent": self.growth_exponent}


@dataclass(frozen=True)
class ConverseCarlemanResult:
    verdict: str  # "NonUnique" | "Inconclusive"
    convexity_margin: float
    y_prime: float

    def to_dict(self):
        return {"verdict": self.verdict,
                "convexity_margin": self.convexity_margin,
                "y_prime": self.y_prime}


@dataclass(frozen=True)
class CriterionReport:
    c1: CarlemanResult
    c2: KreinResult
    c3: ConverseCarlemanResult
    overall: str  # "Unique" | "NonUnique" | "Undecided"
    notes: tuple = field(default=())

    def to_dict(self):
        return {"c1": self.c1.to_dict(), "c2": self.c2.to_dict(),
                "c3": self.c3.to_dict(), "overall": self.overall,
                "notes": list(self.notes)}


# -- C1: Carleman -----------------------------------------------------------

def carleman(seq: MomentSequence, n_max: int = 200) -> CarlemanResult:
    """Classify S = sum a_n, a_n = rho(n)^{-1/2n}, as divergent/convergent.

    The decay exponent of a_n is fitted on the upper half of the range;
    slopes shallower than -1 diverge, steeper converge.  At the critical
    slope the limit of n*a_n decides (logarithmic test): a positive stable
    limit means divergence.
    """
    if n_max < 50:
        raise ConstraintError(f"carleman requires n_max >= 50, got {n_max}")
    ns = np.arange(1, n_max + 1)
    log_a = -log_moment(seq, ns) / (2.0 * ns)
    a = np.exp(log_a)
    terms = tuple((int(n), float(v)) for n, v in zip(ns, a))

    upper = ns >= n_max // 2
    slope, _ = np.polyfit(np.log(ns[upper]), log_a[upper], 1)
    slope = float(slope)

    if slope < -1.0 - _SLOPE_DEAD_ZONE:
        return CarlemanResult("Convergent", terms, slope)
    if slope > -1.0 + _SLOPE_DEAD_ZONE:
        return CarlemanResult("Divergent", terms, slope)

    # critical slope: logarithmic test on n * a_n
    tail = ns >= (3 * n_max) // 4
    lim_seq = ns[tail] * a[tail]
    spread = float(np.ptp(lim_seq) / np.max(lim_seq))
    if spread < 0.02 and lim_seq[-1] > 0.0:
        return CarlemanResult("Divergent", terms, slope,
                              n_a_n_limit=float(lim_seq[-1]))
    if np.all(np.diff(lim_seq) > 0.0):
        # n*a_n growing without bound: terms beat 1/n, series diverges
        return CarlemanResult("Divergent", terms, slope,
                              n_a_n_limit=math.inf)
    raise UndecidedError(
        f"Carleman decay exponent {slope:.4f} sits in the dead zone around "
        "-1 and n*a_n has no stable limit")


# -- C2: Krein --------------------------------------------------------------

def krein(w: WeightFunction, x_cut: float = 1e4) -> KreinResult:
    """Estimate int_0^inf -ln W(x^2)/(1+x^2) dx and classify it.

    The growth exponent beta in -ln W(x^2) ~ C x^beta is fitted on a
    log-spaced tail sample.  When the tail law is certified by a closed
    form the verdict uses the exact exponent 2*p; a quadrature-backed tail
    cannot certify the asymptotics, so the verdict stays Undecided there.
    """
    g, p = w.growth
    # keep x^2 inside the density's evaluable range
    x_top = _tail_limit(w)
    xs = np.exp(np.linspace(math.log(x_top) - 4.0, math.log(x_top), 48))
    neg_log = -w.log_evaluate(xs * xs)
    if np.any(neg_log <= 0.0):
        raise InconclusiveError("density exceeds 1 in the fitting window")
    fitted, _ = np.polyfit(np.log(xs), np.log(neg_log), 1)
    fitted = float(fitted)

    x_hi = min(x_cut, x_top)
    body, _ = quad(lambda x: float(-w.log_evaluate(np.float64(x * x)))
                   / (1.0 + x * x), 0.0, x_hi, limit=400, points=[1.0])

    beta_true = 2.0 * p
    if not w.tail_certified:
        return KreinResult("Undecided", float(body), fitted)
    if abs(fitted - beta_true) > 2.0 * _KREIN_DEAD_ZONE + 0.01:
        # numeric tail disagrees with the certified law: refuse to decide
        return KreinResult("Undecided", float(body), fitted)
    if beta_true >= 1.0:
        return KreinResult("Infinite", math.inf, fitted)
    # finite: add the analytic tail  int_X^inf C x^{beta-2} dx
    c_coef = float(neg_log[-1] / xs[-1] ** beta_true)
    tail = c_coef * x_hi ** (beta_true - 1.0) / (1.0 - beta_true)
    return KreinResult("Finite", float(body + tail), fitted)


def _tail_limit(w: WeightFunction) -> float:
    """Largest x at which -ln W is safely evaluable (and x^2 likewise)."""
    g, p = w.growth
    if w.tail_certified:
        depth = 1e8  # closed forms evaluate anywhere in log domain
    else:
        from .weights import _SPLINE_LOG_DEPTH
        depth = _SPLINE_LOG_DEPTH - 2.0
    return (depth / g) ** (1.0 / (2.0 * p))


# -- C3: converse Carleman --------------------------------------------------

def converse_carleman(seq: MomentSequence, w: WeightFunction,
                      c1: CarlemanResult | None = None,
                      grid_points: int = 2001) -> ConverseCarlemanResult:
    """Certify convexity of psi(y) = -ln W(e^y) beyond a searched y'.

    Fires (NonUnique) only when the Carleman sum is convergent; the
    criterion requires both conditions jointly.
    """
    if c1 is None:
        c1 = carleman(seq)
    if c1.verdict != "Convergent":
        raise ConstraintError(
            "converse Carleman criterion needs a convergent Carleman sum "
            f"(got {c1.verdict})")
    return _convexity_scan(w, grid_points)


def _convexity_scan(w: WeightFunction, grid_points: int) -> ConverseCarlemanResult:
    g, p = w.growth
    x_top = _tail_limit(w)
    y = np.linspace(-10.0, 2.0 * math.log(x_top), grid_points)
    psi = -w.log_evaluate(np.exp(y))
    h = y[1] - y[0]
    d2 = np.diff(psi, 2) / (h * h)
    # smallest y' beyond which every second difference is positive
    bad = np.nonzero(d2 <= 0.0)[0]
    j = 0 if bad.size == 0 else int(bad[-1]) + 1
    if j > int(0.75 * d2.size):
        raise InconclusiveError(
            "no convexity window found: second differences keep changing "
            "sign through the upper quarter of the grid")
    margin = float(np.min(d2[j:]))
    return ConverseCarlemanResult("NonUnique", margin, float(y[j + 1]))


# -- combined report --------------------------------------------------------

def full_report(seq: MomentSequence, w: WeightFunction,
                n_verify: int = 6, verify_tol: float = 1e-4,
                n_max: int = 200) -> CriterionReport:
    """Run all three criteria after verifying that w actually solves seq."""
    from .verify import check_moment
    for n in range(n_verify + 1):
        res = check_moment(w, seq, n)
        if res.rel_error > verify_tol:
            raise RefusesError(
                f"density does not reproduce moment n={n} "
                f"(relative error {res.rel_error:.2e}); criteria on a "
                "non-solution are meaningless")

    notes = []
    undecided_c1 = False
    try:
        c1 = carleman(seq, n_max=n_max)
    except UndecidedError as exc:
        undecided_c1 = True
        notes.append(str(exc))
        c1 = CarlemanResult("Convergent", (), math.nan)  # placeholder

    c2 = krein(w)

    if not undecided_c1 and c1.verdict == "Convergent":
        try:
            c3 = converse_carleman(seq, w, c1=c1)
        except InconclusiveError as exc:
            notes.append(str(exc))
            c3 = ConverseCarlemanResult("Inconclusive", math.nan, math.nan)
    else:
        c3 = ConverseCarlemanResult("Inconclusive", math.nan, math.nan)

    if undecided_c1:
        overall = "Undecided"
    elif c1.verdict == "Divergent":
        if c2.verdict == "Finite" or c3.verdict == "NonUnique":
            raise ConsistencyError(
                "C1 asserts uniqueness while C2/C3 assert non-uniqueness; "
                "the engine's verdicts are mutually inconsistent")
        overall = "Unique"
    elif c2.verdict == "Finite" or c3.verdict == "NonUnique":
        overall = "NonUnique"
    else:
        overall = "Undecided"

    if seq.kind in ("tm3", "tm4"):
        notes.append(
            "perturbation family for this sequence extrapolates the "
            "construction used for the closed-form families")
    return CriterionReport(c1, c2, c3, overall, tuple(notes))
