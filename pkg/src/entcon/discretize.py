"""Round-and-adjust discretization of a real simplex vector to integer counts.

Given the continuous optimizer phi and a size n, the count vector is obtained
by rounding n*phi to nearest integers and then repairing the total back to n
by +-1 adjustments restricted to entries rounded in the opposite direction.
The result nu satisfies

    ||nu - n phi||_inf <= 1        ||nu/n - phi||_1 <= 3 mu / (4 n)

where mu is the number of nonzero entries; both are asserted on every call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["CountVector", "FrequencyVector", "round_to_counts", "closeness_radii"]


@dataclass(frozen=True)
class CountVector:
    nu: tuple[int, ...]
    n: int

    def __post_init__(self):
        if any(v < 0 for v in self.nu):
            raise ValueError("counts must be nonnegative")
        if sum(self.nu) != self.n:
            raise ValueError(f"counts sum to {sum(self.nu)}, expected n={self.n}")

    def frequencies(self) -> "FrequencyVector":
        return FrequencyVector(self.nu, self.n)

    def to_json(self) -> dict:
        return {"n": self.n, "nu": list(self.nu)}


@dataclass(frozen=True)
class FrequencyVector:
    """Exact rational frequency vector with common denominator n."""

    numerators: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "numerators", tuple(int(v) for v in self.numerators))
        if sum(self.numerators) != self.n:
            raise ValueError("numerators must sum to n")

    def as_fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.n) for v in self.numerators)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(v / self.n for v in self.numerators)

    def __len__(self) -> int:
        return len(self.numerators)


def _phi_of(sol) -> list[float]:
    phi = getattr(sol, "phi_star", sol)
    return [float(v) for v in phi]


def round_to_counts(sol, n: int) -> CountVector:
    """Map (phi, n) to the adjusted integer count vector.

    Rounding is half-away-from-zero.  When the rounded total misses n by d,
    the |d| entries with the largest rounding residual among those rounded
    in the correcting direction are adjusted by one; ties break on the
    lowest index.  Zeros of phi always map to zero counts.
    """
    phi = _phi_of(sol)
    m = len(phi)
    if n < m:
        raise ValueError(f"n={n} must be at least m={m}")
    scaled = [n * v for v in phi]
    nearest = [math.floor(x + 0.5) for x in scaled]  # half away from zero (x >= 0)
    d = sum(nearest) - n
    if d != 0:
        residual = [x - r for x, r in zip(scaled, nearest)]
        if d < 0:
            eligible = [i for i in range(m) if residual[i] > 0.0]  # rounded down
            sign = +1
        else:
            eligible = [i for i in range(m) if residual[i] < 0.0]  # rounded up
            sign = -1
        if len(eligible) < abs(d):
            raise AssertionError("rounding repair short of eligible entries")
        eligible.sort(key=lambda i: (-abs(residual[i]), i))
        for i in eligible[: abs(d)]:
            nearest[i] += sign
    out = CountVector(tuple(nearest), n)

    # guaranteed-closeness postconditions
    mu = sum(1 for v in phi if v > 0.0)
    if any(c != 0 for c, v in zip(out.nu, phi) if v == 0.0):
        raise AssertionError("a zero entry of phi received a nonzero count")
    linf = max(abs(c - x) for c, x in zip(out.nu, scaled))
    if linf > 1.0 + 1e-9:
        raise AssertionError(f"count vector strays {linf} > 1 from n*phi")
    l1 = sum(abs(c - x) for c, x in zip(out.nu, scaled))
    if l1 > 0.75 * mu + 1e-9:
        raise AssertionError(f"count vector strays {l1} > 3*mu/4 from n*phi")
    return out


def closeness_radii(sol, n: int) -> tuple[float, float]:
    """Guaranteed distances of the rounded frequency vector from phi:
    (l-inf radius 1/n, l1 radius 3*mu/(4n))."""
    phi = _phi_of(sol)
    if n < len(phi):
        raise ValueError(f"n={n} must be at least m={len(phi)}")
    mu = getattr(sol, "mu_star", None)
    if mu is None:
        mu = sum(1 for v in phi if v > 0.0)
    return 1.0 / n, 3.0 * mu / (4.0 * n)
