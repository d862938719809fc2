"""Ground truth by exhaustive computation at desk scale.

Enumerates all frequency vectors with a given denominator, counts their
realizations exactly, partitions them into the near/far sets of the
concentration statements, checks the counting lemmas against exact numbers,
and counts constrained lattice points exactly (dynamic programming for
integer-coefficient constraints, plain enumeration as fallback).

Everything here is exact or refuses to run; the module never samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constraints import ConstraintSystem, ToleranceSpec, satisfies
from .counting import LogScalar, lattice_cube_lower_bound
from .discretize import FrequencyVector

__all__ = [
    "OracleBudgetError",
    "EnumerationReport",
    "LemmaCheck",
    "IntegerRow",
    "enumerate_frequency_vectors",
    "composition_array",
    "concentration_report",
    "verify_lemma_bounds",
    "count_lattice_points",
    "count_lattice_points_enum",
    "integer_rows_from_problem",
    "die_mean_lattice_polynomial",
]

DEFAULT_BUDGET = 10 ** 8
_MEMORY_GUARD_BYTES = 2 * 10 ** 9


class OracleBudgetError(RuntimeError):
    """The requested exact computation exceeds the enumeration budget."""


def _check_budget(m: int, n: int, budget: int) -> int:
    total = math.comb(n + m - 1, m - 1)
    if total > budget:
        raise OracleBudgetError(
            f"F_n has {total} vectors for m={m}, n={n}; budget is {budget}"
        )
    return total


def composition_array(m: int, n: int) -> np.ndarray:
    """All count vectors (compositions of n into m nonnegative parts) as an
    int64 array in lexicographic order."""
    if m == 1:
        return np.array([[n]], dtype=np.int64)
    blocks = []
    for first in range(n + 1):
        rest = composition_array(m - 1, n - first)
        col = np.full((rest.shape[0], 1), first, dtype=np.int64)
        blocks.append(np.hstack([col, rest]))
    return np.vstack(blocks)


def enumerate_frequency_vectors(m: int, n: int, budget: int = DEFAULT_BUDGET):
    """Yield every FrequencyVector of denominator n over m cells, once,
    in lexicographic order of the count vectors."""
    _check_budget(m, n, budget)

    def rec(prefix, remaining, cells):
        if cells == 1:
            yield prefix + (remaining,)
            return
        for v in range(remaining + 1):
            yield from rec(prefix + (v,), remaining - v, cells - 1)

    for counts in rec((), n, m):
        yield FrequencyVector(counts, n)


@dataclass(frozen=True)
class EnumerationReport:
    """Exact partition of the constraint-satisfying realizations at size n."""

    m: int
    n: int
    criterion: str                  # "entropy" or "norm"
    threshold: float                # (1-eta)*H* or theta
    total_vectors: int              # C(n+m-1, m-1)
    in_c: int                       # vectors satisfying the constraints
    realizations_in_c: int
    a_count: int                    # realizations of the near set
    b_count: int                    # realizations of the far set
    a_vectors: int
    b_vectors: int
    boundary_vectors: int           # within 1e-12 of the threshold (counted near)
    ratio: float                    # a_count / (a_count + b_count)

    def to_json(self) -> dict:
        d = {
            "m": self.m, "n": self.n, "criterion": self.criterion,
            "threshold": self.threshold, "total_vectors": str(self.total_vectors),
            "in_C": self.in_c, "realizations_in_C": str(self.realizations_in_c),
            "A_count": str(self.a_count), "B_count": str(self.b_count),
            "A_vectors": self.a_vectors, "B_vectors": self.b_vectors,
            "boundary_vectors": self.boundary_vectors, "ratio": self.ratio,
        }
        return d


def _exact_multinomials(counts: np.ndarray) -> list[int]:
    n = int(counts[0].sum())
    fact = [math.factorial(k) for k in range(n + 1)]
    out = []
    for row in counts:
        v = fact[n]
        for c in row:
            if c > 1:
                v //= fact[c]
        out.append(v)
    return out


def _in_c_mask(cs: ConstraintSystem, tol: ToleranceSpec, freq: np.ndarray) -> np.ndarray:
    """Vectorized membership of the rows of freq in the tolerance set."""
    mask = np.ones(freq.shape[0], dtype=bool)
    for category, a, b in cs.categories():
        d = tol.value(category)
        vals = freq @ a.T
        if b is not None:
            limit = d * float(np.min(np.abs(b))) if math.isfinite(d) else math.inf
            vals = vals - b
        else:
            limit = d
        if not math.isfinite(limit):
            continue
        if category in ("eq", "eq0"):
            mask &= np.all(np.abs(vals) <= limit, axis=1)
        else:
            mask &= np.all(vals <= limit, axis=1)
    return mask


def concentration_report(cs, tol, sol, n: int, criterion: str, *,
                         eta: float | None = None, theta: float | None = None,
                         budget: int = DEFAULT_BUDGET) -> EnumerationReport:
    """Exact near/far realization split over F_n intersected with the
    tolerance set.

    criterion "entropy": near means H(f) >= (1-eta) H*;
    criterion "norm":    near means ||f - phi*||_1 <= theta.
    Vectors within 1e-12 of the threshold count as near and are flagged.
    """
    m = cs.m
    total = _check_budget(m, n, budget)
    counts = composition_array(m, n)
    freq = counts.astype(float) / n
    mask = _in_c_mask(cs, tol, freq)

    if criterion == "entropy":
        if eta is None:
            raise ValueError("entropy criterion needs eta")
        with np.errstate(divide="ignore", invalid="ignore"):
            plogp = np.where(counts > 0, counts * np.log(np.maximum(counts, 1)), 0.0)
        h = math.log(n) - plogp.sum(axis=1) / n
        threshold = (1.0 - eta) * sol.h_star
        margin = h - threshold
    elif criterion == "norm":
        if theta is None:
            raise ValueError("norm criterion needs theta")
        dist = np.abs(freq - np.asarray(sol.phi_star)).sum(axis=1)
        threshold = float(theta)
        margin = threshold - dist
    else:
        raise ValueError(f"unknown criterion {criterion!r}")

    near = margin >= -1e-12
    boundary = np.abs(margin) <= 1e-12
    realizations = _exact_multinomials(counts)

    a_count = b_count = in_c_realizations = 0
    a_vec = b_vec = bnd = 0
    for i in np.nonzero(mask)[0]:
        r = realizations[i]
        in_c_realizations += r
        if near[i]:
            a_count += r
            a_vec += 1
            if boundary[i]:
                bnd += 1
        else:
            b_count += r
            b_vec += 1
    ratio = float(Fraction(a_count, a_count + b_count)) if a_count + b_count else float("nan")
    return EnumerationReport(
        m=m, n=n, criterion=criterion, threshold=float(threshold),
        total_vectors=total, in_c=int(mask.sum()),
        realizations_in_c=in_c_realizations,
        a_count=a_count, b_count=b_count, a_vectors=a_vec, b_vectors=b_vec,
        boundary_vectors=bnd, ratio=ratio,
    )


def per_vector_detail(cs, tol, sol, n: int, criterion: str, *,
                      eta: float | None = None, theta: float | None = None,
                      budget: int = DEFAULT_BUDGET):
    """Yield one row per frequency vector: counts, entropy, distances to the
    optimum, exact realization count (decimal string), and set membership.

    Row: (nu..., H, l1_dist, linf_dist, realizations, in_C, in_A).
    """
    m = cs.m
    _check_budget(m, n, budget)
    counts = composition_array(m, n)
    freq = counts.astype(float) / n
    phi = np.asarray(sol.phi_star)
    mask = _in_c_mask(cs, tol, freq)
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(counts > 0, counts * np.log(np.maximum(counts, 1)), 0.0)
    h = math.log(n) - plogp.sum(axis=1) / n
    l1 = np.abs(freq - phi).sum(axis=1)
    linf = np.abs(freq - phi).max(axis=1)
    if criterion == "entropy":
        near = h >= (1.0 - eta) * sol.h_star - 1e-12
    elif criterion == "norm":
        near = l1 <= theta + 1e-12
    else:
        raise ValueError(f"unknown criterion {criterion!r}")
    realizations = _exact_multinomials(counts)
    for i in range(counts.shape[0]):
        yield (tuple(int(v) for v in counts[i]), float(h[i]), float(l1[i]),
               float(linf[i]), str(realizations[i]), bool(mask[i]),
               bool(mask[i] and near[i]))


@dataclass(frozen=True)
class LemmaCheck:
    """Exact near/far realization counts against their proved bounds."""

    report: EnumerationReport
    alpha: float
    b_exact: LogScalar
    b_upper: LogScalar
    a_exact: LogScalar
    a_lower: LogScalar
    shrunk_radius: float
    lattice_guarantee: int
    upper_ok: bool
    lower_ok: bool


def verify_lemma_bounds(cs, tol, sol, n: int, *, eta: float | None = None,
                        theta: float | None = None, alpha: float = 0.5,
                        budget: int = DEFAULT_BUDGET) -> LemmaCheck:
    """Compare exact #near/#far realization counts at size n with the proved
    upper bound on the far set and lower bound on the near set.

    The counting constants of the upper bound assume n >= 100, so smaller n
    are refused.  The lower bound is evaluated at the given alpha in (0,1);
    it holds for every such alpha (trivially when the guaranteed lattice
    count is zero).
    """
    if n < 100:
        raise ValueError("the far-set constants require n >= 100")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    from .bounds import entropy_radius  # local import to avoid a cycle
    from .constraints import tolerance_radius

    m = sol.m
    mu = sol.mu_star
    theta_inf = tolerance_radius(cs, tol)
    criterion = "entropy" if eta is not None else "norm"
    rep = concentration_report(cs, tol, sol, n, criterion, eta=eta, theta=theta,
                               budget=budget)
    const = math.log(4.004) + 0.5 * math.log(2 * math.pi) + m * math.log(0.6) \
        + 0.5 * (m - 1) * math.log(n)
    if criterion == "entropy":
        b_upper = const + n * (1.0 - eta) * sol.h_star
        radius = entropy_radius(sol, theta_inf, eta, alpha)
        gain = n * (1.0 - alpha * eta) * sol.h_star
    else:
        b_upper = const + n * (sol.h_star - 0.5 * theta * theta)
        radius = min(theta_inf, alpha * theta, sol.phi_min)
        h_loss = alpha * theta * math.log(m / (alpha * theta))
        gain = n * (sol.h_star - h_loss)
    lam = lattice_cube_lower_bound(n, radius, m, mu)
    if lam > 0:
        a_lower = (math.log(lam) + 0.5 * math.log(2 * math.pi)
                   + 0.5 * mu * math.log(mu / (2 * math.pi)) - mu / 12.0
                   - 0.5 * (mu - 1) * math.log(n) + gain)
    else:
        a_lower = -math.inf
    b_exact = LogScalar.from_value(rep.b_count)
    a_exact = LogScalar.from_value(rep.a_count)
    return LemmaCheck(
        report=rep, alpha=alpha,
        b_exact=b_exact, b_upper=LogScalar(b_upper),
        a_exact=a_exact, a_lower=LogScalar(a_lower),
        shrunk_radius=radius, lattice_guarantee=lam,
        upper_ok=b_exact.log <= b_upper + 1e-9,
        lower_ok=a_exact.log >= a_lower - 1e-9,
    )


# ---------------------------------------------------------------------------
# exact lattice-point counting under integer-scaled constraints

@dataclass(frozen=True)
class IntegerRow:
    """One integer-scaled constraint sum_i coeffs[i] * nu_i (rel) rhs."""

    coeffs: tuple[int, ...]
    rel: str       # "eq" or "le"
    rhs: int

    def __post_init__(self):
        if self.rel not in ("eq", "le"):
            raise ValueError("rel must be 'eq' or 'le'")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", int(self.rhs))


def count_lattice_points_enum(rows, m: int, n: int,
                              budget: int = DEFAULT_BUDGET) -> int:
    """Count by plain enumeration of all compositions (exact reference)."""
    _check_budget(m, n, budget)
    rows = [r if isinstance(r, IntegerRow) else IntegerRow(*r) for r in rows]
    total = 0

    def rec(prefix, remaining, cells):
        nonlocal total
        if cells == 1:
            nu = prefix + (remaining,)
            for r in rows:
                v = sum(c * x for c, x in zip(r.coeffs, nu))
                if r.rel == "eq":
                    if v != r.rhs:
                        return
                elif v > r.rhs:
                    return
            total += 1
            return
        for v in range(remaining + 1):
            rec(prefix + (v,), remaining - v, cells - 1)

    rec((), n, m)
    return total


def _count_single_equality_fast(coeffs, rhs, n: int) -> int:
    """Vectorized int64 DP for one equality row over compositions of n.

    Shifts the weights to start at 0, divides by their gcd, and mirrors the
    target into the lower half so the table stays small (about n * target
    int64 cells).  Intermediate values are bounded by C(n+m-1, m-1), which
    the caller has checked against the int64 overflow margin.
    """
    lo = min(coeffs)
    w = [c - lo for c in coeffs]
    r = rhs - lo * n
    if r < 0:
        return 0
    g = 0
    for v in w:
        g = math.gcd(g, v)
    if g > 0:
        if r % g:
            return 0
        w = [v // g for v in w]
        r //= g
    wmax = max(w) if w else 0
    if r > wmax * n:
        return 0
    if r > (wmax * n) // 2:
        w = [wmax - v for v in w]
        r = wmax * n - r
    if (n + 1) * (r + 1) * 8 > _MEMORY_GUARD_BYTES:
        raise OracleBudgetError("single-equality DP table exceeds the memory guard")
    table = np.zeros((n + 1, r + 1), dtype=np.int64)
    table[0, 0] = 1
    for v in w:
        if v == 0:
            for j in range(1, n + 1):
                table[j] += table[j - 1]
        elif v <= r:
            for j in range(1, n + 1):
                table[j, v:] += table[j - 1, :-v]
        # weights larger than the target can never be used
    return int(table[n, r])


def _count_general_dp(rows, m: int, n: int) -> int:
    """Exact DP over (units used, per-row partial totals), Python-int counts.

    Prunes states whose reachable final totals cannot satisfy a row: with
    ``rem`` units left for the later cells, a row's total moves by between
    rem*min and rem*max of its remaining coefficients.
    """
    k = len(rows)
    min_suffix = [[0] * k for _ in range(m)]
    max_suffix = [[0] * k for _ in range(m)]
    for i in range(m):
        for idx, r in enumerate(rows):
            tail = r.coeffs[i:]
            min_suffix[i][idx] = min(tail)
            max_suffix[i][idx] = max(tail)

    states: dict[tuple, int] = {(0,) + (0,) * k: 1}
    for cell in range(m):
        last = cell == m - 1
        new: dict[tuple, int] = {}
        for key, cnt in states.items():
            used = key[0]
            totals = key[1:]
            c_range = (n - used,) if last else range(n - used + 1)
            for c in c_range:
                u2 = used + c
                t2 = tuple(t + r.coeffs[cell] * c for t, r in zip(totals, rows))
                rem = n - u2
                ok = True
                for idx, r in enumerate(rows):
                    if rem and cell + 1 < m:
                        lo = t2[idx] + rem * min_suffix[cell + 1][idx]
                        hi = t2[idx] + rem * max_suffix[cell + 1][idx]
                    else:
                        lo = hi = t2[idx]
                    if r.rel == "eq":
                        if not lo <= r.rhs <= hi:
                            ok = False
                            break
                    elif lo > r.rhs:
                        ok = False
                        break
                if not ok:
                    continue
                k2 = (u2,) + t2
                new[k2] = new.get(k2, 0) + cnt
        states = new
        if len(states) > 2 * 10 ** 7:
            raise OracleBudgetError("general DP exceeded the state guard")
    return sum(states.values())


def count_lattice_points(rows, m: int, n: int, *, budget: int = DEFAULT_BUDGET,
                         method: str = "auto") -> int:
    """Exact number of count vectors with total n satisfying every row.

    method "auto": a single equality row takes the vectorized int64 table
    (provided the count fits the overflow margin); everything else runs the
    general exact DP.  method "enum" forces plain enumeration (budgeted) and
    exists to cross-check the DP paths.
    """
    rows = [r if isinstance(r, IntegerRow) else IntegerRow(*r) for r in rows]
    for r in rows:
        if len(r.coeffs) != m:
            raise ValueError("row length does not match m")
    if method == "enum":
        return count_lattice_points_enum(rows, m, n, budget)
    if method not in ("auto", "dp"):
        raise ValueError(f"unknown method {method!r}")
    if (len(rows) == 1 and rows[0].rel == "eq"
            and math.comb(n + m - 1, m - 1) < 2 ** 62):
        return _count_single_equality_fast(rows[0].coeffs, rows[0].rhs, n)
    return _count_general_dp(rows, m, n)


def integer_rows_from_problem(cs: ConstraintSystem, n: int,
                              tol: ToleranceSpec | None = None,
                              max_denominator: int = 10 ** 9) -> list[IntegerRow]:
    """Integer-scaled rows equivalent to the problem's constraints at size n.

    Coefficients are rationalized with the given denominator limit (config
    values are expected to be short decimals, recovered exactly).  Without
    ``tol`` the constraints are exact: a.nu = b*n / a.nu <= b*n; an equality
    whose scaled right side is not an integer is unsatisfiable and raises.
    With ``tol``, each category becomes the tolerance band used by the
    membership test, with floors on the scaled bounds (exact for integers).
    """
    out: list[IntegerRow] = []

    def rational(x) -> Fraction:
        return Fraction(float(x)).limit_denominator(max_denominator)

    def scaled_row(a_row, rhs: Fraction, rel: str):
        fr = [rational(v) for v in a_row]
        denom = 1
        for f in fr + [rhs]:
            denom = denom * f.denominator // math.gcd(denom, f.denominator)
        coeffs = [int(f * denom) for f in fr]
        scaled = rhs * denom * n
        if rel == "eq":
            if scaled.denominator != 1:
                raise ValueError(
                    f"equality right side {rhs} * n is not integral at n={n}; "
                    "the exact count is zero"
                )
            return IntegerRow(coeffs, "eq", int(scaled))
        return IntegerRow(coeffs, "le", math.floor(scaled))

    for category, a, b in cs.categories():
        d = tol.value(category) if tol is not None else 0.0
        if math.isinf(d):
            continue
        if b is not None:
            band = rational(d) * min(abs(rational(v)) for v in b)
        else:
            band = rational(d)
        for i, a_row in enumerate(a):
            rhs = rational(b[i]) if b is not None else Fraction(0)
            if category in ("eq", "eq0"):
                if tol is None:
                    out.append(scaled_row(a_row, rhs, "eq"))
                else:
                    out.append(scaled_row(a_row, rhs + band, "le"))
                    out.append(scaled_row([-v for v in a_row], -(rhs - band), "le"))
            else:
                out.append(scaled_row(a_row, rhs + band, "le"))
    return out


def die_mean_lattice_polynomial(n: int) -> float:
    """Quasi-polynomial count of the six-cell mean-4.5 polytope, evaluated
    in exact rational arithmetic and returned as a float."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    value = (
        Fraction(19, 11520) * n ** 4
        + Fraction(1, 32) * n ** 3
        + Fraction(113, 576) * n ** 2
        + Fraction(2101723, 4196000) * n
        + Fraction(225740219, 755280000)
    )
    return float(value)
