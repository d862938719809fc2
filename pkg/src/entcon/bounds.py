"""Explicit concentration thresholds N(delta, eps, eta) and N(delta, eps, theta).

Each bound solves, for a parameter alpha in (0,1), the crossing of two
monotone curves: N(alpha), a requirement of the form 1.5*C1*ln(C1+C2)+C2
coming from the ratio of realization counts of the good and bad sets, and a
radius requirement proportional to 1/r(alpha) where r(alpha) is the shrunk
closeness radius.  The crossing alpha_hat equalizes the two and yields the
reported threshold.

Six bound kinds are produced:

  theorem1        entropy criterion, whole set of near-optimal vectors
  theorem2        l1-norm criterion, whole set
  lemma_cor1      entropy criterion, realizations of the rounded vector only
  lemma_cor2      l1-norm criterion, rounded vector only
  corollary_pd    lemma_cor2 read as a statement about discrete distributions
  corollary_unif  corollary_pd specialized to no constraints (uniform target)

plus the chi-squared comparison against the classical asymptotic threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constraints import tolerance_radius
from .solver import MaxEntSolution

__all__ = [
    "BoundValidityError",
    "ValidityCheck",
    "BoundReport",
    "JaynesComparison",
    "ScanRow",
    "entropy_radius",
    "norm_margin",
    "norm_margin_root",
    "bound_entropy_set",
    "bound_norm_set",
    "bound_entropy_vector",
    "bound_norm_vector",
    "bound_distribution",
    "bound_uniform",
    "compute_bound",
    "jaynes_comparison",
    "chi2_upper_quantile",
    "regularized_gamma_q",
    "scan_alpha",
    "KIND_CLI_NAMES",
]

_LN_06 = math.log(0.6)
_LN_2PI = math.log(2.0 * math.pi)


class BoundValidityError(ValueError):
    """A side condition of the requested bound fails for these inputs."""


@dataclass(frozen=True)
class ValidityCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class BoundReport:
    """One computed threshold with its diagnostics.

    ``n_real`` is the real-valued crossing; ``n`` its integer ceiling
    (rounded to 12 significant digits first, so exact branch values like
    (m-1)/(2 r) survive float dust).  ``active_branch`` names the term of
    the final max that produced the threshold.
    """

    kind: str
    n_real: float
    n: int
    alpha_hat: float
    c1: float
    c2: float
    theta_inf: float
    theta0: float
    alpha0: float | None
    active_branch: str
    residual: float
    eps: float
    eta: float | None
    theta: float | None
    delta_h: float | None
    m: int
    mu_star: int
    radius: float | None = None
    validity: tuple[ValidityCheck, ...] = ()
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "N": self.n,
            "N_real": self.n_real,
            "alpha_hat": self.alpha_hat,
            "C1": self.c1,
            "C2": self.c2,
            "theta_inf": self.theta_inf,
            "theta0": self.theta0,
            "alpha0": self.alpha0,
            "active_branch": self.active_branch,
            "residual": self.residual,
            "eps": self.eps,
            "eta": self.eta,
            "theta": self.theta,
            "delta_h": self.delta_h,
            "m": self.m,
            "mu_star": self.mu_star,
            "radius": self.radius,
            "validity": [
                {"name": v.name, "passed": v.passed, "detail": v.detail}
                for v in self.validity
            ],
            "notes": list(self.notes),
            "summary": self.summary(),
        }

    def summary(self) -> str:
        if self.kind == "theorem1":
            what = (
                f"have frequency vectors with entropy below (1 - {self.eta:g}) "
                "of the maximum"
            )
            head = f"out of all assignments of n >= {self.n} units that satisfy"
            return (
                f"{head} the constraints to accuracy delta, at most a fraction "
                f"{self.eps:g} {what}."
            )
        if self.kind == "theorem2":
            return (
                f"out of all assignments of n >= {self.n} units that satisfy the "
                f"constraints to accuracy delta, at most a fraction {self.eps:g} "
                f"have frequency vectors farther than {self.theta:g} in l1 norm "
                "from the maximum-entropy vector."
            )
        if self.kind == "lemma_cor1":
            return (
                f"for n >= {self.n}, the rounded optimal vector alone has more "
                f"than 1/{self.eps:g} times the realizations of all "
                "constraint-satisfying vectors with entropy not within "
                f"{self.eta:g} of the maximum."
            )
        if self.kind in ("lemma_cor2", "corollary_pd"):
            noun = "distributions" if self.kind == "corollary_pd" else "vectors"
            return (
                f"for n >= {self.n}, the rounded optimal vector alone has more "
                f"than 1/{self.eps:g} times the realizations of all "
                f"constraint-satisfying {noun} farther than {self.theta:g} in l1 "
                "norm from the maximum-entropy vector; it is itself within "
                f"{self.radius:.3g} of it."
            )
        return (
            f"for n >= {self.n}, the rounded uniform distribution has more than "
            f"1/{self.eps:g} times the realizations of all distributions farther "
            f"than {self.theta:g} in l1 norm from uniform, and is itself within "
            f"{self.radius:.3g} of uniform."
        )


@dataclass(frozen=True)
class JaynesComparison:
    """Chi-squared asymptotic threshold restated in this package's terms."""

    m: int
    ell: int
    dof: int
    eps: float
    n: int
    chi2_critical: float
    eta_equivalent: float
    delta_h: float
    c1_jaynes: float
    c2_jaynes: float

    def to_json(self) -> dict:
        return {
            "m": self.m, "ell": self.ell, "dof": self.dof, "eps": self.eps,
            "n": self.n, "chi2_critical": self.chi2_critical,
            "eta_equivalent": self.eta_equivalent, "delta_h": self.delta_h,
            "C1_jaynes": self.c1_jaynes, "C2_jaynes": self.c2_jaynes,
        }


# ---------------------------------------------------------------------------
# regularized incomplete gamma (series + continued fraction) and chi2 quantile

def _gamma_p_series(a: float, x: float) -> float:
    term = 1.0 / a
    total = term
    k = a
    for _ in range(1000):
        k += 1.0
        term *= x / k
        total += term
        if abs(term) < abs(total) * 1e-16:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_cf(a: float, x: float) -> float:
    # Lentz continued fraction for Q(a, x), x >= a + 1
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 1000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def regularized_gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a)."""
    if a <= 0:
        raise ValueError("a must be positive")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_p_series(a, x)
    return _gamma_q_cf(a, x)


def chi2_upper_quantile(dof: int, eps: float) -> float:
    """x with Pr[chi2_dof > x] = eps, via bisection on Q(dof/2, x/2)."""
    if dof < 1:
        raise ValueError("dof must be >= 1")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must be in (0, 1)")
    a = dof / 2.0
    lo, hi = 0.0, max(4.0 * dof, 8.0)
    while regularized_gamma_q(a, hi / 2.0) > eps:
        hi *= 2.0
        if hi > 1e9:
            raise ValueError("quantile bracket expansion failed")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if regularized_gamma_q(a, mid / 2.0) > eps:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-10 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# shrunk radii and the norm-rate margin

def entropy_radius(sol, theta_inf: float, eta: float, alpha: float,
                   *, delta_h: float | None = None) -> float:
    """Shrunk l-inf radius guaranteeing both constraint satisfaction and an
    entropy drop of at most alpha*eta relative:

        min(theta_inf, (2/3) * d / ln(m/d), phi_min)   with d = alpha*eta*H*.

    ``delta_h`` overrides the product eta*H* when the entropy deviation is
    specified directly rather than relative to the solved optimum.
    """
    m = sol.m
    d = alpha * (delta_h if delta_h is not None else eta * sol.h_star)
    if d <= 0:
        return 0.0
    if d > m / 21.0:
        raise BoundValidityError(
            f"entropy deviation {d:.4g} violates the side condition <= m/21"
        )
    mid = (2.0 / 3.0) * d / math.log(m / d)
    return min(theta_inf, mid, sol.phi_min)


def norm_margin(alpha: float, theta: float, m: int) -> float:
    """Exponential-rate margin 0.5*theta^2 - alpha*theta*ln(m/(alpha*theta))."""
    if not 0.0 < theta < 1.0:
        raise ValueError("theta must be in (0, 1)")
    if m < 2:
        raise ValueError("m must be >= 2")
    if alpha <= 0.0:
        return 0.5 * theta * theta
    at = alpha * theta
    return 0.5 * theta * theta - at * math.log(m / at)


def norm_margin_root(theta: float, m: int) -> float:
    """Unique root alpha0 of the margin in (theta^2/2, 1).

    Requires m < 0.5 * theta^3 * exp(1/theta); otherwise the margin is not
    positive even at alpha = theta^2/2 and the norm bounds do not apply.
    """
    limit = 0.5 * theta ** 3 * math.exp(1.0 / theta) if 1.0 / theta < 700 else math.inf
    if not m < limit:
        raise BoundValidityError(
            f"m = {m} too large for theta = {theta:g} "
            f"(requires m < {limit:.4g})"
        )
    lo, hi = 0.5 * theta * theta, 1.0
    if norm_margin(lo, theta, m) <= 0.0:
        raise BoundValidityError("margin not positive at the bracket start")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if norm_margin(mid, theta, m) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14:
            break
    # the lower end keeps the margin strictly positive, which downstream
    # bracket arithmetic relies on
    return lo


# ---------------------------------------------------------------------------
# the N(alpha) requirement and the crossing solver

def _c2_numerator(m: int, mu: int, eps: float) -> float:
    return (
        m * _LN_06
        + (0.5 * _LN_2PI + 1.0 / 12.0 - 0.5 * math.log(mu)) * mu
        + math.log((1.0 / eps + 1.0) / 0.249)
    )


def _n_requirement(c1: float, c2: float) -> float:
    """1.5 C1 ln(C1+C2) + C2 when C2 > 0 and C1+C2 >= 21; the C2 <= 0 branch
    uses ln C1.  Raises for the uncovered gap."""
    if c2 > 0.0:
        if c1 + c2 < 21.0:
            raise BoundValidityError(
                f"outside bound validity: C1 + C2 = {c1 + c2:.4g} < 21 "
                "(increase eps or the closeness tolerance)"
            )
        return 1.5 * c1 * math.log(c1 + c2) + c2
    return 1.5 * c1 * math.log(c1) + c2


def _solve_crossing(n_of_alpha, rhs_of_alpha, lo: float, hi: float):
    """Root of n_of_alpha(a) - rhs_of_alpha(a) on (lo, hi), bisected in log a.

    n_of_alpha is increasing and finite at lo (ValidityError near lo is
    tolerated by advancing the bracket); rhs is decreasing.  Both tend to
    opposite-signed infinity at the ends, so a sign change exists.
    """

    def g(a):
        return n_of_alpha(a) - rhs_of_alpha(a)

    glo = None
    for _ in range(200):
        try:
            glo = g(lo)
            break
        except BoundValidityError:
            lo *= 4.0
            if lo >= hi:
                raise
    if glo is None:
        raise BoundValidityError("no valid bracket start for the crossing")
    ghi = g(hi)
    if glo > 0.0 or ghi < 0.0:
        raise BoundValidityError(
            f"crossing bracket does not change sign: g({lo:.3g}) = {glo:.3g}, "
            f"g({hi:.3g}) = {ghi:.3g}"
        )
    for _ in range(300):
        mid = math.sqrt(lo * hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)


def _round12(x: float) -> float:
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.12g}")


def _assemble(kind, inputs, alpha_hat, c1_fn, c2_fn, rhs_fn, radius_fn,
              branch_terms, eps, eta, theta, delta_h, alpha0, extra_checks):
    n_real = rhs_fn(alpha_hat)
    c1 = c1_fn(alpha_hat)
    c2 = c2_fn(alpha_hat)
    try:
        n_curve = _n_requirement(c1, c2)
        residual = abs(n_curve - n_real) / max(n_real, 1.0)
    except BoundValidityError:
        residual = math.inf
    checks = list(extra_checks)
    checks.append(ValidityCheck(
        "crossing_residual", residual <= 1e-9,
        f"|N(a) - RHS(a)|/N = {residual:.3e}"))
    checks.append(ValidityCheck(
        "c1_positive", c1 > 0.0, f"C1 = {c1:.6g}"))
    notes = []
    n_clamped = n_real
    if n_real < 100.0:
        n_clamped = 100.0
        notes.append(
            "threshold below 100 clamped to 100 (constant validity floor)")
    checks.append(ValidityCheck(
        "n_at_least_100", n_real >= 100.0,
        "counting constants assume n >= 100" if n_real < 100.0 else ""))
    terms = branch_terms(alpha_hat)
    best = max(terms, key=lambda kv: kv[1])
    failed = [c for c in checks if not c.passed and c.name == "crossing_residual"]
    if failed:
        raise BoundValidityError(failed[0].detail)
    return BoundReport(
        kind=kind,
        n_real=n_clamped,
        n=int(math.ceil(_round12(n_clamped))),
        alpha_hat=alpha_hat,
        c1=c1,
        c2=c2,
        theta_inf=inputs["theta_inf"],
        theta0=inputs["theta0_at"](alpha_hat),
        alpha0=alpha0,
        active_branch=best[0],
        residual=residual,
        eps=eps,
        eta=eta,
        theta=theta,
        delta_h=delta_h,
        m=inputs["m"],
        mu_star=inputs["mu_star"],
        radius=radius_fn(alpha_hat) if radius_fn else None,
        validity=tuple(checks),
        notes=tuple(notes),
    )


def _entropy_kind(kind, sol, cs, tol, eps, eta, delta_h, rhs_scale_fn):
    if eps <= 0 or (eta is None and delta_h is None):
        raise BoundValidityError("eps and eta must be positive")
    if eta is not None and eta <= 0:
        raise BoundValidityError("eta must be positive")
    m, mu = sol.m, sol.mu_star
    dh = delta_h if delta_h is not None else eta * sol.h_star
    theta_inf = tolerance_radius(cs, tol) if cs is not None else math.inf
    c1_num = 0.5 * (m + mu) - 1.0
    c2_num = _c2_numerator(m, mu, eps)

    def radius0(a):
        d = a * dh
        return min(theta_inf, (2.0 / 3.0) * d / math.log(m / d), sol.phi_min)

    def c1_fn(a):
        return c1_num / ((1.0 - a) * dh)

    def c2_fn(a):
        return c2_num / ((1.0 - a) * dh)

    def n_fn(a):
        return _n_requirement(c1_fn(a), c2_fn(a))

    scale = rhs_scale_fn(m, mu)

    def rhs_fn(a):
        return scale / radius0(a)

    alpha_hat = _solve_crossing(n_fn, rhs_fn, 1e-12, 1.0 - 1e-12)

    side_ok = alpha_hat * dh <= m / 21.0
    checks = [ValidityCheck(
        "entropy_side_condition", side_ok,
        f"alpha*eta*H = {alpha_hat * dh:.4g} vs m/21 = {m / 21.0:.4g}")]
    if not side_ok:
        raise BoundValidityError(
            "entropy deviation violates the side condition <= m/21")

    def branch_terms(a):
        mid = (2.0 / 3.0) * (a * dh) / math.log(m / (a * dh))
        return [
            ("entropy-radius", 1.0 / mid),
            ("constraint-tolerance", 1.0 / theta_inf if theta_inf > 0 else math.inf),
            ("support-minimum", 1.0 / sol.phi_min),
        ]

    inputs = {"m": m, "mu_star": mu, "theta_inf": theta_inf, "theta0_at": radius0}
    return _assemble(kind, inputs, alpha_hat, c1_fn, c2_fn, rhs_fn, None,
                     branch_terms, eps, eta, None, delta_h, None, checks)


def _norm_kind(kind, sol_stats, cs, tol, eps, theta, rhs_fn_builder, radius_builder):
    m, mu, phi_min = sol_stats
    if eps <= 0:
        raise BoundValidityError("eps must be positive")
    if not 0.0 < theta < 0.5:
        raise BoundValidityError("theta must be in (0, 1/2)")
    alpha0 = norm_margin_root(theta, m)
    theta_inf = tolerance_radius(cs, tol) if cs is not None else math.inf
    c1_num = 0.5 * (m + mu) - 1.0
    c2_num = _c2_numerator(m, mu, eps)

    def radius0(a):
        return min(theta_inf, a * theta, phi_min)

    def c1_fn(a):
        return c1_num / norm_margin(a, theta, m)

    def c2_fn(a):
        return c2_num / norm_margin(a, theta, m)

    def n_fn(a):
        return _n_requirement(c1_fn(a), c2_fn(a))

    rhs_fn = rhs_fn_builder(radius0)
    alpha_hat = _solve_crossing(n_fn, rhs_fn, min(1e-12, alpha0 * 1e-6), alpha0)
    checks = [ValidityCheck(
        "margin_positive", norm_margin(alpha_hat, theta, m) > 0.0,
        f"psi(alpha_hat) = {norm_margin(alpha_hat, theta, m):.4g}"),
        ValidityCheck("alpha_below_root", alpha_hat < alpha0,
                      f"alpha_hat = {alpha_hat:.4g}, alpha0 = {alpha0:.4g}")]

    def branch_terms(a):
        return [
            ("norm-radius", 1.0 / (a * theta)),
            ("constraint-tolerance", 1.0 / theta_inf if theta_inf > 0 else math.inf),
            ("support-minimum", 1.0 / phi_min),
        ]

    inputs = {"m": m, "mu_star": mu, "theta_inf": theta_inf, "theta0_at": radius0}
    radius_fn = radius_builder(radius0) if radius_builder else None
    return _assemble(kind, inputs, alpha_hat, c1_fn, c2_fn, rhs_fn, radius_fn,
                     branch_terms, eps, None, theta, None, alpha0, checks)


# ---------------------------------------------------------------------------
# public bound constructors

def _selector(m: int, mu: int) -> float:
    return 2.0 if mu == m else 1.0


def bound_entropy_set(sol: MaxEntSolution, cs, tol, eps: float, eta: float,
                      *, delta_h: float | None = None) -> BoundReport:
    """Threshold beyond which at most a fraction eps of constraint-satisfying
    realizations have entropy below (1 - eta) of the optimum."""
    return _entropy_kind(
        "theorem1", sol, cs, tol, eps, eta, delta_h,
        lambda m, mu: (m - 1) / _selector(m, mu))


def bound_entropy_vector(sol: MaxEntSolution, cs, tol, eps: float, eta: float,
                         *, delta_h: float | None = None) -> BoundReport:
    """Threshold beyond which the rounded optimum alone out-realizes the
    entropy-deficient set by a factor 1/eps."""
    return _entropy_kind(
        "lemma_cor1", sol, cs, tol, eps, eta, delta_h, lambda m, mu: 1.0)


def bound_norm_set(sol: MaxEntSolution, cs, tol, eps: float, theta: float) -> BoundReport:
    """Threshold beyond which at most a fraction eps of constraint-satisfying
    realizations are farther than theta (l1) from the optimum.  Free of the
    optimal entropy value: only m, mu, phi_min enter."""
    stats = (sol.m, sol.mu_star, sol.phi_min)
    return _norm_kind(
        "theorem2", stats, cs, tol, eps, theta,
        lambda radius0: (lambda a: (stats[0] - 1) / (_selector(stats[0], stats[1]) * radius0(a))),
        None)


def bound_norm_vector(sol: MaxEntSolution, cs, tol, eps: float, theta: float,
                      kind: str = "lemma_cor2") -> BoundReport:
    """Threshold beyond which the rounded optimum alone out-realizes the set
    farther than theta in l1 norm, by a factor 1/eps."""
    stats = (sol.m, sol.mu_star, sol.phi_min)
    return _norm_kind(
        kind, stats, cs, tol, eps, theta,
        lambda radius0: (lambda a: 0.75 * stats[1] / radius0(a)),
        lambda radius0: (lambda a: a * theta))


def bound_distribution(sol: MaxEntSolution, cs, tol, eps: float, theta: float) -> BoundReport:
    """bound_norm_vector restated for rational probability distributions built
    from n quanta of size 1/n."""
    return bound_norm_vector(sol, cs, tol, eps, theta, kind="corollary_pd")


def bound_uniform(m: int, eps: float, theta: float) -> BoundReport:
    """No-information case: the rounded uniform distribution dominates all
    distributions farther than theta from uniform.  Requires
    theta <= min(0.09, 1/m)."""
    if m < 2:
        raise BoundValidityError("m must be >= 2")
    if not 0.0 < theta <= min(0.09, 1.0 / m):
        raise BoundValidityError(
            f"theta must lie in (0, min(0.09, 1/m)] = (0, {min(0.09, 1.0 / m):g}]")
    stats = (m, m, 1.0 / m)
    return _norm_kind(
        "corollary_unif", stats, None, None, eps, theta,
        lambda radius0: (lambda a: 0.75 * m / (a * theta)),
        lambda radius0: (lambda a: a * theta))


KIND_CLI_NAMES = {
    "theorem1": "theorem1",
    "theorem2": "theorem2",
    "fstar-entropy": "lemma_cor1",
    "fstar-norm": "lemma_cor2",
    "pd": "corollary_pd",
    "uniform": "corollary_unif",
}


def compute_bound(kind: str, sol, cs, tol, eps, *, eta=None, theta=None,
                  delta_h=None, m=None) -> BoundReport:
    """Dispatch by CLI kind name."""
    internal = KIND_CLI_NAMES.get(kind, kind)
    if internal == "theorem1":
        return bound_entropy_set(sol, cs, tol, eps, eta, delta_h=delta_h)
    if internal == "lemma_cor1":
        return bound_entropy_vector(sol, cs, tol, eps, eta, delta_h=delta_h)
    if internal == "theorem2":
        return bound_norm_set(sol, cs, tol, eps, theta)
    if internal == "lemma_cor2":
        return bound_norm_vector(sol, cs, tol, eps, theta)
    if internal == "corollary_pd":
        return bound_distribution(sol, cs, tol, eps, theta)
    if internal == "corollary_unif":
        return bound_uniform(m if m is not None else sol.m, eps, theta)
    raise ValueError(f"unknown bound kind {kind!r}")


# ---------------------------------------------------------------------------
# chi-squared comparison

def jaynes_comparison(m: int, ell: int, eps: float, n: int, h_star: float) -> JaynesComparison:
    """Asymptotic chi-squared threshold: 2 n dH = chi2_{m-ell-1}(eps).

    Returns the critical value, the equivalent relative entropy tolerance
    eta = chi2/(2 n H*), and the constants of the first-order tail expansion
    C1 = s/dH, C2 = (s ln dH - ln(eps Gamma(s+1)))/dH with s = (m-3)/2.
    """
    dof = m - ell - 1
    if dof < 1:
        raise ValueError("m - ell - 1 must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    chi2 = chi2_upper_quantile(dof, eps)
    delta_h = chi2 / (2.0 * n)
    eta = delta_h / h_star
    s = (m - 3) / 2.0
    c1 = s / delta_h
    c2 = (s * math.log(delta_h) - math.log(eps) - math.lgamma(s + 1.0)) / delta_h
    return JaynesComparison(
        m=m, ell=ell, dof=dof, eps=eps, n=n, chi2_critical=chi2,
        eta_equivalent=eta, delta_h=delta_h, c1_jaynes=c1, c2_jaynes=c2)


# ---------------------------------------------------------------------------
# diagnostic alpha scan (the two curves whose crossing defines alpha_hat)

@dataclass(frozen=True)
class ScanRow:
    alpha: float
    n_curve: float | None
    rhs_curve: float | None
    is_crossing: bool = False


def scan_alpha(kind: str, sol, cs, tol, eps, *, eta=None, theta=None,
               delta_h=None, grid: int = 50, m=None) -> list[ScanRow]:
    """Tabulate N(alpha) and the radius requirement on a linear alpha grid,
    with the crossing row inserted."""
    if grid < 2:
        raise ValueError("grid must be >= 2")
    report = compute_bound(kind, sol, cs, tol, eps, eta=eta, theta=theta,
                           delta_h=delta_h, m=m)
    internal = KIND_CLI_NAMES.get(kind, kind)
    hi = report.alpha0 * (1 - 1e-12) if report.alpha0 else 1.0 - 1e-12
    lo = 1e-12

    mm = report.m
    mu = report.mu_star
    if internal in ("theorem1", "lemma_cor1"):
        dh = report.delta_h if report.delta_h is not None else report.eta * sol.h_star
        phi_min = sol.phi_min

        def curves(a):
            d = a * dh
            mid = (2.0 / 3.0) * d / math.log(mm / d)
            r = min(report.theta_inf, mid, phi_min)
            scale = (mm - 1) / _selector(mm, mu) if internal == "theorem1" else 1.0
            return (_n_requirement((0.5 * (mm + mu) - 1) / ((1 - a) * dh),
                                   _c2_numerator(mm, mu, eps) / ((1 - a) * dh)),
                    scale / r)
    else:
        phi_min = 1.0 / mm if internal == "corollary_unif" else sol.phi_min

        def curves(a):
            r = min(report.theta_inf, a * theta, phi_min)
            if internal == "theorem2":
                rhs = (mm - 1) / (_selector(mm, mu) * r)
            elif internal == "corollary_unif":
                rhs = 0.75 * mm / (a * theta)
            else:
                rhs = 0.75 * mu / r
            return (_n_requirement(
                (0.5 * (mm + mu) - 1) / norm_margin(a, theta, mm),
                _c2_numerator(mm, mu, eps) / norm_margin(a, theta, mm)), rhs)

    rows: list[ScanRow] = []
    for i in range(grid):
        a = lo + (hi - lo) * i / (grid - 1)
        try:
            nv, rv = curves(a)
        except (BoundValidityError, ValueError, ZeroDivisionError):
            nv = rv = None
        rows.append(ScanRow(a, nv, rv))
    rows.append(ScanRow(report.alpha_hat, report.n_real, report.n_real, True))
    rows.sort(key=lambda r: r.alpha)
    return rows
