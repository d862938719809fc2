"""Independent 50-digit recomputation of the threshold formulas.

Re-implements the crossing equations with decimal arithmetic only (no shared
code with the package's float engine beyond the mathematical definitions),
so the float path can be checked end to end.
"""

from decimal import Decimal, getcontext, localcontext

getcontext().prec = 60

PI = Decimal("3.14159265358979323846264338327950288419716939937510582097494")
LN_2PI = (2 * PI).ln()
LN_06 = (Decimal(6) / Decimal(10)).ln()
INF = Decimal("Infinity")


def dec(x):
    if isinstance(x, Decimal):
        return x
    if isinstance(x, float):
        if x == float("inf"):
            return INF
        return Decimal(repr(x))
    return Decimal(x)


def _c2_numerator(m, mu, eps):
    m, mu, eps = dec(m), dec(mu), dec(eps)
    return (m * LN_06
            + (LN_2PI / 2 + Decimal(1) / Decimal(12) - mu.ln() / 2) * mu
            + ((1 / eps + 1) / Decimal("0.249")).ln())


def _n_requirement(c1, c2):
    if c2 > 0:
        if c1 + c2 < 21:
            raise ValueError("C1 + C2 < 21")
        return Decimal("1.5") * c1 * (c1 + c2).ln() + c2
    return Decimal("1.5") * c1 * c1.ln() + c2


def _crossing(n_of_alpha, rhs_of_alpha, lo, hi, iters=400):
    def g(a):
        return n_of_alpha(a) - rhs_of_alpha(a)

    for _ in range(50):
        try:
            if g(lo) < 0:
                break
        except ValueError:
            pass
        lo *= 4
    assert g(lo) < 0 < g(hi)
    for _ in range(iters):
        mid = (lo * hi).sqrt()
        if g(mid) < 0:
            lo = mid
        else:
            hi = mid
        if (hi - lo) / hi < Decimal("1e-45"):
            break
    return (lo * hi).sqrt()


def entropy_bound(m, mu, delta_h, phi_min, theta_inf, eps, scale):
    """alpha_hat and threshold for the entropy-criterion bounds.

    scale = (m-1)/sel for the whole-set bound, 1 for the single-vector one;
    delta_h is the absolute entropy deviation (eta times the reference
    entropy).  Returns (alpha_hat, N) as Decimals.
    """
    m_d, dh = dec(m), dec(delta_h)
    phi_min, theta_inf, scale = dec(phi_min), dec(theta_inf), dec(scale)
    c1n = dec(m + mu) / 2 - 1
    c2n = _c2_numerator(m, mu, eps)

    def radius(a):
        d = a * dh
        mid = 2 * d / (3 * (m_d / d).ln())
        return min(theta_inf, mid, phi_min)

    def n_curve(a):
        den = (1 - a) * dh
        return _n_requirement(c1n / den, c2n / den)

    def rhs(a):
        return scale / radius(a)

    a_hat = _crossing(n_curve, rhs, Decimal("1e-12"), 1 - Decimal("1e-30"))
    return a_hat, rhs(a_hat)


def norm_margin(a, theta, m):
    at = a * theta
    return theta * theta / 2 - at * (dec(m) / at).ln()


def norm_margin_root(theta, m):
    theta = dec(theta)
    lo, hi = theta * theta / 2, Decimal(1)
    assert norm_margin(lo, theta, m) > 0
    for _ in range(300):
        mid = (lo + hi) / 2
        if norm_margin(mid, theta, m) > 0:
            lo = mid
        else:
            hi = mid
    return lo


def norm_bound(m, mu, theta, phi_min, theta_inf, eps, kind):
    """alpha_hat and threshold for the norm-criterion bounds.

    kind: "set" uses (m-1)/sel / radius; "vector" uses 3 mu /(4 radius);
    "uniform" uses 3 m / (4 a theta).
    """
    theta, phi_min, theta_inf = dec(theta), dec(phi_min), dec(theta_inf)
    c1n = dec(m + mu) / 2 - 1
    c2n = _c2_numerator(m, mu, eps)
    alpha0 = norm_margin_root(theta, m)
    sel = 2 if mu == m else 1

    def radius(a):
        return min(theta_inf, a * theta, phi_min)

    def n_curve(a):
        psi = norm_margin(a, theta, m)
        if psi <= 0:
            raise ValueError("margin not positive")
        return _n_requirement(c1n / psi, c2n / psi)

    if kind == "set":
        def rhs(a):
            return dec(m - 1) / (sel * radius(a))
    elif kind == "vector":
        def rhs(a):
            return 3 * dec(mu) / (4 * radius(a))
    elif kind == "uniform":
        def rhs(a):
            return 3 * dec(m) / (4 * a * theta)
    else:
        raise ValueError(kind)

    a_hat = _crossing(n_curve, rhs, alpha0 * Decimal("1e-12"), alpha0)
    return a_hat, rhs(a_hat)
