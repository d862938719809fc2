"""Realization counting: exact multinomials, log-domain scalars, and the
entropy/count bounds used by the concentration certificates.

Counts of interest reach scales like 10**6712, so anything that can overflow
a double is carried either as an exact Python integer or as a LogScalar
(natural log of a nonnegative quantity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "LogScalar",
    "multinomial_count",
    "entropy",
    "realization_bounds_simple",
    "realization_bounds_stirling",
    "log_factorial",
    "stirling_theta",
    "lattice_cube_lower_bound",
    "sqrt_composition_sum",
    "sanov_upper_bound",
    "entropy_gap_report",
    "BridgeReport",
]

_LN_10 = math.log(10.0)
_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True, order=False)
class LogScalar:
    """A nonnegative quantity stored as its natural logarithm.

    -inf encodes exact zero.  Multiplication and division add/subtract
    logs; addition goes through log-sum-exp.  Comparisons compare logs.
    """

    log: float

    @classmethod
    def from_value(cls, x) -> "LogScalar":
        if x < 0:
            raise ValueError("LogScalar encodes nonnegative quantities only")
        if x == 0:
            return cls(-math.inf)
        if isinstance(x, int):
            # math.log is exact-ish for arbitrary precision ints
            return cls(_log_of_int(x))
        return cls(math.log(x))

    @classmethod
    def from_log(cls, lg: float) -> "LogScalar":
        return cls(float(lg))

    @classmethod
    def from_log10(cls, lg10: float) -> "LogScalar":
        return cls(float(lg10) * _LN_10)

    @property
    def log10(self) -> float:
        return self.log / _LN_10

    @property
    def value(self) -> float:
        """Float value; overflows to inf for very large quantities."""
        try:
            return math.exp(self.log)
        except OverflowError:
            return math.inf

    def __mul__(self, other: "LogScalar") -> "LogScalar":
        return LogScalar(self.log + other.log)

    def __truediv__(self, other: "LogScalar") -> "LogScalar":
        if other.log == -math.inf:
            raise ZeroDivisionError("division by LogScalar zero")
        return LogScalar(self.log - other.log)

    def __add__(self, other: "LogScalar") -> "LogScalar":
        a, b = self.log, other.log
        if a == -math.inf:
            return other
        if b == -math.inf:
            return self
        hi, lo = (a, b) if a >= b else (b, a)
        return LogScalar(hi + math.log1p(math.exp(lo - hi)))

    def __lt__(self, other):
        return self.log < other.log

    def __le__(self, other):
        return self.log <= other.log

    def __gt__(self, other):
        return self.log > other.log

    def __ge__(self, other):
        return self.log >= other.log

    def to_json(self) -> dict:
        return {"log10": self.log10}


def _log_of_int(k: int) -> float:
    # math.log takes arbitrary-precision ints directly
    if k <= 0:
        raise ValueError("positive integer required")
    return math.log(k)


def _counts_of(nu) -> tuple[list[int], int]:
    counts = [int(v) for v in (nu.nu if hasattr(nu, "nu") else nu)]
    if any(v < 0 for v in counts):
        raise ValueError("counts must be nonnegative")
    return counts, sum(counts)


def multinomial_count(nu) -> int:
    """Exact number of realizations n! / (nu_1! ... nu_m!)."""
    counts, n = _counts_of(nu)
    out = math.factorial(n)
    for v in counts:
        if v > 1:
            out //= math.factorial(v)
    return out


def _frequencies_of(f) -> tuple[list[float], int | None]:
    """Normalize the accepted frequency inputs to floats (and n if known)."""
    if hasattr(f, "numerators"):  # FrequencyVector
        n = f.n
        return [num / n for num in f.numerators], n
    seq = list(f)
    if seq and all(isinstance(v, (int, Fraction)) for v in seq):
        if sum(seq) != 1:
            raise ValueError("rational frequencies must sum to exactly 1")
        return [float(v) for v in seq], None
    vals = [float(v) for v in seq]
    if any(v < 0 for v in vals):
        raise ValueError("frequencies must be nonnegative")
    if abs(sum(vals) - 1.0) > 1e-12:
        raise ValueError(f"frequencies sum to {sum(vals)!r}, not 1")
    return vals, None


def entropy(f) -> float:
    """Shannon entropy -sum f_i ln f_i in nats, with 0 ln 0 = 0."""
    vals, _ = _frequencies_of(f)
    return -sum(v * math.log(v) for v in vals if v > 0.0)


def _entropy_exact_counts(numerators: Sequence[int], n: int) -> float:
    # H(nu/n) = ln n - (1/n) sum nu_i ln nu_i, exact counts keep this stable
    s = sum(v * math.log(v) for v in numerators if v > 1)
    return math.log(n) - s / n


def realization_bounds_simple(f) -> tuple[LogScalar, LogScalar]:
    """Crude sandwich: e^{nH(f)} / C(n+m-1, m-1) <= #f <= e^{nH(f)}."""
    if not hasattr(f, "numerators"):
        raise TypeError("realization_bounds_simple needs a FrequencyVector")
    n, m = f.n, len(f.numerators)
    nh = n * _entropy_exact_counts(f.numerators, n)
    log_fn = _log_of_int(math.comb(n + m - 1, m - 1))
    return LogScalar(nh - log_fn), LogScalar(nh)


def realization_bounds_stirling(f) -> tuple[LogScalar, LogScalar]:
    """Stirling-sharpened sandwich on the number of realizations #f.

    With mu nonzero entries and S = (2 pi n)^{-(mu-1)/2} (f_1...f_mu)^{-1/2},
      S e^{nH} exp(-(1/12n) sum 1/f_i)  <=  #f  <=  S e^{nH} e^{1/12n}.
    Valid for every f, including mu = 1 where #f = 1.
    """
    if not hasattr(f, "numerators"):
        raise TypeError("realization_bounds_stirling needs a FrequencyVector")
    n = f.n
    nz = [v for v in f.numerators if v > 0]
    mu = len(nz)
    nh = n * _entropy_exact_counts(f.numerators, n)
    log_s = -0.5 * (mu - 1) * math.log(2.0 * math.pi * n)
    log_s -= 0.5 * sum(math.log(v / n) for v in nz)
    inv_sum = sum(n / v for v in nz)  # sum of 1/f_i over nonzero entries
    lower = log_s + nh - inv_sum / (12.0 * n)
    upper = log_s + nh + 1.0 / (12.0 * n)
    return LogScalar(lower), LogScalar(upper)


def log_factorial(x: float) -> float:
    """ln x! = ln Gamma(x+1) for real x > 0 (also accepts integers)."""
    if x <= 0:
        if x == 0:
            return 0.0
        raise ValueError("log_factorial requires x > 0")
    return math.lgamma(float(x) + 1.0)


def stirling_theta(x: float) -> float:
    """Remainder coefficient in ln x! = x ln x - x + ln sqrt(2 pi x) + t/(12x).

    Lies strictly in (0, 1) for every x > 0.
    """
    if x <= 0:
        raise ValueError("stirling_theta requires x > 0")
    x = float(x)
    leading = x * math.log(x) - x + 0.5 * math.log(x) + _LN_SQRT_2PI
    return 12.0 * x * (log_factorial(x) - leading)


def lattice_cube_lower_bound(n: int, theta: float, m: int, mu_star: int) -> int:
    """Guaranteed number of denominator-n frequency vectors inside the
    l-inf cube of radius theta around a simplex point with mu_star nonzero
    entries:

        floor(n theta (1/(m-1) + 1/(mu-1)))^(mu-1) * floor(n theta/(m-1))^(m-mu)

    (first factor absent when mu_star = 1).  The caller is responsible for
    the applicability conditions theta <= phi_max and, when mu_star > 1,
    theta <= (mu_star - 1) * phi_min.
    """
    if m < 2:
        raise ValueError("lattice_cube_lower_bound requires m >= 2")
    if not 1 <= mu_star <= m:
        raise ValueError("mu_star must be in 1..m")
    if theta <= 0 or n < 1:
        return 0
    side_small = math.floor(n * theta / (m - 1))
    if mu_star == 1:
        return side_small ** (m - 1)
    side_big = math.floor(n * theta * (1.0 / (m - 1) + 1.0 / (mu_star - 1)))
    return side_big ** (mu_star - 1) * side_small ** (m - mu_star)


def sqrt_composition_sum(mu: int, n: int) -> tuple[float, float]:
    """Exact sum of (v_1...v_mu)^(-1/2) over positive compositions of n into
    mu parts, together with its integral bound pi^(mu/2)/Gamma(mu/2) n^(mu/2-1).

    The sum is evaluated by convolving the one-part sums (identical to direct
    enumeration, without its combinatorial cost).
    """
    if mu < 2:
        raise ValueError("mu must be >= 2")
    if n < mu:
        raise ValueError("n must be >= mu (compositions have positive parts)")
    if mu > 6 or n > 300:
        raise ValueError("out of enumeration budget (mu <= 6, n <= 300)")
    base = [0.0] * (n + 1)
    for v in range(1, n + 1):
        base[v] = 1.0 / math.sqrt(v)
    acc = base[:]
    for _ in range(mu - 1):
        nxt = [0.0] * (n + 1)
        for t in range(2, n + 1):
            s = 0.0
            for v in range(1, t):
                if acc[t - v]:
                    s += base[v] * acc[t - v]
            nxt[t] = s
        acc = nxt
    bound = math.pi ** (mu / 2.0) / math.gamma(mu / 2.0) * n ** (mu / 2.0 - 1.0)
    return acc[n], bound


def sanov_upper_bound(m: int, n: int, h_star: float) -> tuple[LogScalar, LogScalar]:
    """Equiprobable-sequence upper bounds on a constraint set's mass.

    Returns (probability bound, realization-count bound):
      count = C(n+m-1, n) e^{n H*},   probability = count / m^n.
    """
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    if not 0.0 <= h_star <= math.log(m) + 1e-12:
        raise ValueError("h_star must lie in [0, ln m]")
    log_count = _log_of_int(math.comb(n + m - 1, n)) + n * h_star
    log_prob = log_count - n * math.log(m)
    return LogScalar(log_prob), LogScalar(log_count)


@dataclass(frozen=True)
class BridgeReport:
    """Diagnostics linking norm distance from a reference point to entropy gap."""

    gamma: float          # l-inf distance
    theta1: float         # l1 distance
    h_f: float
    h_ref: float
    gap: float            # h_ref - h_f
    sup_gap_holds: bool        # gap <= m * gamma * ln(1/gamma)   (gamma <= 1/e)
    sup_gap_applicable: bool
    near_holds: bool | None    # theta1 <= theta  =>  h_f >= h_ref - theta ln(m/theta)
    far_holds: bool | None     # theta1 >  theta  =>  h_f <  h_ref - theta^2/2
    theta: float | None


def entropy_gap_report(phi_star, h_ref: float, f, theta: float | None = None) -> BridgeReport:
    """Evaluate the three norm-vs-entropy implications for one vector.

    When ``theta`` is given (must be in (0, 1/2]), the two l1 implications
    are evaluated at that threshold; an implication with a false antecedent
    reports True (vacuous).
    """
    ref = [float(v) for v in phi_star]
    vals, _ = _frequencies_of(f)
    m = len(ref)
    if len(vals) != m:
        raise ValueError("dimension mismatch")
    gamma = max(abs(a - b) for a, b in zip(vals, ref))
    theta1 = sum(abs(a - b) for a, b in zip(vals, ref))
    h_f = -sum(v * math.log(v) for v in vals if v > 0.0)
    gap = h_ref - h_f
    applicable = 0.0 < gamma <= 1.0 / math.e
    sup_holds = (gap <= m * gamma * math.log(1.0 / gamma) + 1e-12) if applicable else True
    near = far = None
    if theta is not None:
        if not 0.0 < theta <= 0.5:
            raise ValueError("theta must be in (0, 1/2]")
        near = True
        far = True
        if theta1 <= theta:
            near = h_f >= h_ref - theta * math.log(m / theta) - 1e-12
        else:
            far = h_f < h_ref - theta * theta / 2.0 + 1e-12
    return BridgeReport(
        gamma=gamma, theta1=theta1, h_f=h_f, h_ref=h_ref, gap=gap,
        sup_gap_holds=sup_holds, sup_gap_applicable=applicable,
        near_holds=near, far_holds=far, theta=theta,
    )
