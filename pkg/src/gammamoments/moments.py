"""Gamma-product moment sequences, kept in log domain.

A sequence is rho(n) = prod_j Gamma(a_j n + b_j).  The four named kinds:

    TM1: (2rn)!          factors [(2r, 1)]
    TM2: [(rn)!]^2       factors [(r, 1), (r, 1)]
    TM3: [(rn)!]^3       factors [(r, 1)] * 3
    TM4: (2rn)!.[(rn)!]^2  factors [(2r, 1), (r, 1), (r, 1)]

Values like (4n)! leave the double range at n = 43, so nothing here ever
exponentiates: moments are ln rho(n), Mellin symbols are log-gamma sums.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np
import scipy.special as sps

from .errors import ConstraintError
from .special import ln_gamma

__all__ = [
    "MomentSequence",
    "tm1",
    "tm2",
    "tm3",
    "tm4",
    "gamma_product",
    "log_moment",
    "mellin_symbol",
    "parse_descriptor",
]


@dataclass(frozen=True)
class MomentSequence:
    kind: str  # "tm1" | "tm2" | "tm3" | "tm4" | "gamma"
    r: int
    factors: tuple  # of (a, b) pairs, rho(n) = prod Gamma(a*n + b)
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.factors:
            raise ConstraintError("at least one gamma factor required")
        for a, b in self.factors:
            if a <= 0:
                raise ConstraintError(f"gamma factor multiplier must be > 0, got {a}")

    @property
    def sum_a(self) -> float:
        """Total gamma 'weight'; controls contour decay and tail power."""
        return sum(a for a, _ in self.factors)

    @property
    def rightmost_pole(self) -> float:
        """Rightmost pole of the continued symbol rho(s-1)."""
        return max(1.0 - b / a for a, b in self.factors)

    @property
    def tail_power(self) -> float:
        """p in  -ln W(x) ~ g x^p  for the principal density."""
        return 1.0 / self.sum_a

    @property
    def tail_coefficient(self) -> float:
        """g in  -ln W(x) ~ g x^p  (steepest-descent constant)."""
        big_a = self.sum_a
        return big_a * math.prod(a ** (-a / big_a) for a, _ in self.factors)

    @property
    def alpha0(self) -> float:
        """Exponent of the principal density at the origin (log factors aside)."""
        return -self.rightmost_pole

    def descriptor(self) -> str:
        if self.label:
            return self.label
        terms = ",".join(_format_factor(a, b) for a, b in self.factors)
        return f"gamma:{terms}"


def tm1(r: int) -> MomentSequence:
    _check_r(r)
    return MomentSequence("tm1", r, ((2 * r, 1),), label=f"tm1:r={r}")


def tm2(r: int) -> MomentSequence:
    _check_r(r)
    return MomentSequence("tm2", r, ((r, 1), (r, 1)), label=f"tm2:r={r}")


def tm3(r: int) -> MomentSequence:
    _check_r(r)
    return MomentSequence("tm3", r, ((r, 1),) * 3, label=f"tm3:r={r}")


def tm4(r: int) -> MomentSequence:
    _check_r(r)
    return MomentSequence("tm4", r, ((2 * r, 1), (r, 1), (r, 1)), label=f"tm4:r={r}")


def gamma_product(factors, label="") -> MomentSequence:
    return MomentSequence("gamma", 0, tuple((float(a), float(b)) for a, b in factors),
                          label=label)


def _check_r(r):
    if not isinstance(r, (int, np.integer)) or r < 1:
        raise ConstraintError(f"r must be a positive integer, got {r!r}")


def log_moment(seq: MomentSequence, n) -> float:
    """ln rho(n) = sum_j ln Gamma(a_j n + b_j); vectorized over n >= 0."""
    n = np.asarray(n, dtype=np.float64)
    out = sum(sps.gammaln(a * n + b) for a, b in seq.factors)
    return float(out) if out.ndim == 0 else out


def mellin_symbol(seq: MomentSequence, s):
    """Log of the continued symbol rho(s-1); complex, vectorized over s."""
    s_arr = np.asarray(s, dtype=np.complex128)
    scalar = s_arr.ndim == 0
    flat = np.atleast_1d(s_arr).ravel()
    out = np.zeros_like(flat)
    for (a, b), mult in _grouped_factors(seq):
        out += mult * ln_gamma(a * (flat - 1.0) + b)  # raises PoleError on poles
    if scalar:
        return complex(out[0])
    return out.reshape(s_arr.shape)


def _grouped_factors(seq):
    counts = {}
    for fac in seq.factors:
        counts[fac] = counts.get(fac, 0) + 1
    return counts.items()


_TM_RE = re.compile(r"^(tm[1-4]):r=(\d+)$")
_TERM_RE = re.compile(r"^\s*(?:(\d+(?:\.\d+)?|\d+/\d+)\s*)?n\s*([+-]\s*\d+(?:\.\d+)?|[+-]\s*\d+/\d+)?\s*$")


def _parse_number(text):
    if "/" in text:
        num, den = text.split("/")
        return float(num) / float(den)
    return float(text)


def _format_factor(a, b):
    a_s = f"{a:g}" if a != 1 else ""
    if b == 0:
        return f"{a_s}n"
    sign = "+" if b > 0 else "-"
    return f"{a_s}n{sign}{abs(b):g}"


def parse_descriptor(text: str) -> MomentSequence:
    """Parse 'tm1:r=2' / 'gamma:2n+1,n+1,n+1' into a MomentSequence."""
    text = text.strip().lower()
    m = _TM_RE.match(text)
    if m:
        kind, r = m.group(1), int(m.group(2))
        return {"tm1": tm1, "tm2": tm2, "tm3": tm3, "tm4": tm4}[kind](r)
    if text.startswith("gamma:"):
        factors = []
        for term in text[len("gamma:"):].split(","):
            tm = _TERM_RE.match(term)
            if not tm:
                raise ConstraintError(f"cannot parse gamma factor {term!r}")
            a = _parse_number(tm.group(1)) if tm.group(1) else 1.0
            b = _parse_number(tm.group(2).replace(" ", "")) if tm.group(2) else 0.0
            factors.append((a, b))
        return gamma_product(factors, label=text)
    raise ConstraintError(f"unknown sequence descriptor {text!r}")
