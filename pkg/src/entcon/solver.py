"""Entropy maximization over the simplex under linear constraints.

Solves   max H(x) = -sum x_i ln x_i   s.t.  sum x = 1, x >= 0,
         A_eq x = b_eq (both kinds),  A_le x <= b_le (both kinds).

Strategy, sized for small m (tens of cells):

* forced zeros (homogeneous rows with one-signed coefficients) are
  eliminated by presolve, since no strictly positive feasible point exists
  when constraints pin entries to the boundary;
* equality-only systems go through a damped Newton iteration on the
  Lagrangian dual, whose iterates are exponential-family vectors
  x(lam) = softmax(-B^T lam);
* systems with inequalities run an outer logarithmic-barrier loop
  (parameter divided by 10 per step, from 1 down to 1e-12) around an
  equality-eliminated primal Newton subsolver;
* a phase-1 minimax-slack problem, solved with the same barrier machinery,
  produces a strictly feasible interior start or an infeasibility verdict.

Every returned solution carries a KKT residual (primal feasibility, dual
feasibility, stationarity, complementary slackness, all in the max norm)
and solve_maxent refuses to return one above 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constraints import ConstraintSystem

__all__ = [
    "SolverError",
    "InfeasibleError",
    "ConvergenceError",
    "MaxEntSolution",
    "solve_maxent",
    "accept_external_solution",
]

_ARMIJO = 1e-4
_BACKTRACK = 0.5
_MAX_OUTER = 200
_MAX_NEWTON = 100
_ZERO_CLIP = 1e-9
_BARRIER_FINAL = 1e-12


class SolverError(RuntimeError):
    """Base class for solver failures."""


class InfeasibleError(SolverError):
    """The constraint polytope is empty (or has no admissible point)."""


class ConvergenceError(SolverError):
    """Iteration budget exhausted before reaching the target residual."""


class _SupportShrink(Exception):
    """Internal: the feasible set touches x_i = 0; retry without those cells."""

    def __init__(self, mask):
        super().__init__("support shrink")
        self.mask = mask


@dataclass(frozen=True)
class MaxEntSolution:
    """Maximizer phi_star with its entropy and support statistics."""

    phi_star: np.ndarray
    h_star: float
    mu_star: int
    phi_min: float
    phi_max: float
    kkt_residual: float

    @classmethod
    def from_phi(cls, phi, kkt_residual: float) -> "MaxEntSolution":
        x = np.array([float(v) for v in phi])
        if np.any(x < -1e-12):
            raise SolverError("solution has a negative entry")
        x = np.where(x < 0.0, 0.0, x)
        total = float(x.sum())
        if abs(total - 1.0) > 1e-12:
            raise SolverError(f"solution sums to {total!r}, not 1")
        nz = x[x > 0.0]
        h = float(-np.sum(nz * np.log(nz)))
        m = x.size
        if h > math.log(m) + 1e-9:
            raise SolverError("entropy exceeds ln m")
        x.setflags(write=False)
        return cls(
            phi_star=x,
            h_star=h,
            mu_star=int(nz.size),
            phi_min=float(nz.min()),
            phi_max=float(x.max()),
            kkt_residual=float(kkt_residual),
        )

    @property
    def m(self) -> int:
        return int(self.phi_star.size)

    def to_json(self) -> dict:
        return {
            "phi_star": [float(v) for v in self.phi_star],
            "H_star": self.h_star,
            "mu_star": self.mu_star,
            "phi_min": self.phi_min,
            "phi_max": self.phi_max,
            "kkt_residual": self.kkt_residual,
        }


# ---------------------------------------------------------------------------
# presolve: entries forced to zero by one-signed homogeneous rows

def _forced_zeros(cs: ConstraintSystem) -> np.ndarray:
    m = cs.m
    zero = np.zeros(m, dtype=bool)
    changed = True
    while changed:
        changed = False
        act = ~zero
        for a in cs.a_eq0:
            r = a[act]
            if r.size and (np.all(r >= 0) or np.all(r <= 0)) and np.any(r != 0):
                hit = act & (a != 0)
                if np.any(hit & ~zero):
                    zero |= hit
                    changed = True
        for a in cs.a_le0:
            r = a[act]
            if r.size and np.all(r >= 0) and np.any(r > 0):
                hit = act & (a > 0)
                if np.any(hit & ~zero):
                    zero |= hit
                    changed = True
    if np.all(zero):
        raise InfeasibleError("every cell is forced to zero; the simplex is empty")
    # quick contradiction scan on the reduced inequalities
    act = ~zero
    for a, b in zip(cs.a_le, cs.b_le):
        r = a[act]
        if np.all(r >= 0) and b < 0:
            raise InfeasibleError(
                f"inequality row forces a nonnegative combination <= {b} < 0"
            )
    return zero


# ---------------------------------------------------------------------------
# linear algebra helpers

def _equality_basis(e_mat: np.ndarray, e_rhs: np.ndarray):
    """Particular solution and orthonormal null-space basis of E x = e.

    Raises InfeasibleError when the system is inconsistent.
    """
    k, m = e_mat.shape
    u, s, vt = np.linalg.svd(e_mat, full_matrices=True)
    tol = max(k, m) * (s[0] if s.size else 1.0) * np.finfo(float).eps
    rank = int(np.sum(s > tol))
    # min-norm particular solution
    ut_e = u.T @ e_rhs
    x_p = vt[:rank].T @ (ut_e[:rank] / s[:rank]) if rank else np.zeros(m)
    resid = float(np.max(np.abs(e_mat @ x_p - e_rhs))) if k else 0.0
    if resid > 1e-9 * (1.0 + float(np.max(np.abs(e_rhs), initial=0.0))):
        raise InfeasibleError(
            f"equality constraints are inconsistent (residual {resid:.3e})"
        )
    z = vt[rank:].T  # m x (m - rank), orthonormal columns
    return x_p, z, rank


def _independent_rows(e_mat: np.ndarray, e_rhs: np.ndarray):
    """Select a maximal independent subset of equality rows (QR pivoting)."""
    if e_mat.shape[0] == 0:
        return e_mat, e_rhs
    q, r = np.linalg.qr(e_mat.T)  # columns of e_mat.T = rows of e_mat
    diag = np.abs(np.diag(r))
    tol = e_mat.shape[1] * np.finfo(float).eps * (diag.max() if diag.size else 1.0)
    keep: list[int] = []
    # greedy re-orthogonalization pass, robust to unpivoted QR
    basis: list[np.ndarray] = []
    for i, row in enumerate(e_mat):
        v = row.astype(float)
        for b in basis:
            v = v - (v @ b) * b
        nv = np.linalg.norm(v)
        if nv > 1e-12 * max(1.0, np.linalg.norm(row)):
            basis.append(v / nv)
            keep.append(i)
    return e_mat[keep], e_rhs[keep]


# ---------------------------------------------------------------------------
# damped Newton on the equality dual (exponential-family iterates)

def _solve_dual(b_mat: np.ndarray, b_rhs: np.ndarray, m: int, lam0=None):
    """Maximize entropy s.t. sum x = 1 and B x = b_rhs via the dual.

    Returns (x, lam).  Iterates are x(lam) = softmax(-B^T lam) > 0.
    """
    k = b_mat.shape[0]
    if k == 0:
        return np.full(m, 1.0 / m), np.zeros(0)
    lam = np.zeros(k) if lam0 is None else np.asarray(lam0, dtype=float).copy()
    scale = 1.0 + float(np.max(np.abs(b_rhs)))

    def dual_value(l):
        z = -(b_mat.T @ l)
        zmax = float(z.max())
        return zmax + math.log(float(np.sum(np.exp(z - zmax)))) + float(l @ b_rhs)

    for _ in range(_MAX_OUTER):
        z = -(b_mat.T @ lam)
        w = np.exp(z - z.max())
        x = w / w.sum()
        grad = b_rhs - b_mat @ x
        if float(np.max(np.abs(grad))) <= 1e-13 * scale:
            return x, lam
        bx = b_mat @ x
        hess = (b_mat * x) @ b_mat.T - np.outer(bx, bx)
        try:
            step = np.linalg.solve(hess + 1e-14 * np.eye(k), -grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hess, -grad, rcond=None)[0]
        slope = float(grad @ step)
        if slope >= 0.0:  # not a descent direction; fall back to gradient
            step = -grad
            slope = -float(grad @ grad)
        f0 = dual_value(lam)
        if -slope <= 1e-13 * (1.0 + abs(f0)):
            lam = lam + step  # below float noise; pure Newton step
            continue
        t = 1.0
        for _ in range(_MAX_NEWTON):
            if dual_value(lam + t * step) <= f0 + _ARMIJO * t * slope:
                break
            t *= _BACKTRACK
        lam = lam + t * step
    raise ConvergenceError(
        "dual Newton did not reach tolerance "
        f"(gradient {float(np.max(np.abs(grad))):.3e})"
    )


# ---------------------------------------------------------------------------
# barrier subproblem: minimize sum x ln x - mu * sum ln(h - G x) over E x = e

def _newton_in_nullspace(x_p, z_basis, g_mat, g_rhs, mu, y0):
    """Damped Newton for the barrier subproblem in null-space coordinates."""
    y = y0.copy()
    gz = g_mat @ z_basis if g_mat.shape[0] else None

    def parts(yv):
        x = x_p + z_basis @ yv
        s = g_rhs - g_mat @ x if gz is not None else None
        return x, s

    def value(x, s):
        v = float(np.sum(x * np.log(x)))
        if s is not None:
            v -= mu * float(np.sum(np.log(s)))
        return v

    x, s = parts(y)
    if np.any(x <= 0.0) or (s is not None and np.any(s <= 0.0)):
        raise SolverError("barrier subproblem started outside the domain")
    for _ in range(_MAX_NEWTON):
        grad_x = np.log(x) + 1.0
        if s is not None:
            grad_x = grad_x + g_mat.T @ (mu / s)
        grad = z_basis.T @ grad_x
        if float(np.max(np.abs(grad), initial=0.0)) <= 1e-13:
            break
        hess = z_basis.T @ (z_basis / x[:, None])
        if gz is not None:
            hess = hess + (gz / (s * s / mu)[:, None]).T @ gz
        try:
            step = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hess, -grad, rcond=None)[0]
        decrement = float(-grad @ step)
        if decrement <= 1e-30:
            break
        dx = z_basis @ step
        t = 1.0
        neg = dx < 0.0
        if np.any(neg):
            t = min(t, 0.99 * float(np.min(-x[neg] / dx[neg])))
        if gz is not None:
            ds = -(g_mat @ dx)
            shr = ds < 0.0
            if np.any(shr):
                t = min(t, 0.99 * float(np.min(-s[shr] / ds[shr])))
        f0 = value(x, s)
        slope = float(grad @ step)
        if decrement <= 1e-13 * (1.0 + abs(f0)):
            # objective changes are below float noise: the quadratic phase
            # of Newton; take the damped step without a merit test
            y = y + t * step
            x, s = parts(y)
            continue
        accepted = False
        for _ in range(60):
            y_try = y + t * step
            x_try, s_try = parts(y_try)
            if np.all(x_try > 0.0) and (s_try is None or np.all(s_try > 0.0)):
                if value(x_try, s_try) <= f0 + _ARMIJO * t * slope:
                    accepted = True
                    break
            t *= _BACKTRACK
        if not accepted:
            break  # stagnation; outer loop will judge the residual
        y, x, s = y_try, x_try, s_try
    return y, x, s


def _phase1(x_p, z_basis, g_mat, g_rhs):
    """Minimize the worst constraint value t = max(-x, Gx - h) over the
    affine set x = x_p + Z y, by a barrier method in (y, t).

    Returns (y, margin) with margin = max constraint value at y; a strictly
    negative margin certifies an interior point (the search stops early once
    it is safely negative).
    """
    dim = z_basis.shape[1]
    rows = [(-z_basis, -x_p)]  # -x <= t  <=>  -x_p - Z y - t <= 0
    if g_mat.shape[0]:
        rows.append((g_mat @ z_basis, g_mat @ x_p - g_rhs))
    jac = np.vstack([r[0] for r in rows])
    off = np.concatenate([r[1] for r in rows])

    def cons(yv):
        return jac @ yv + off

    y = np.zeros(dim)
    t = float(np.max(cons(y))) + 1.0
    mu = max(1.0, abs(t))
    for _ in range(60):
        for _ in range(_MAX_NEWTON):
            c = cons(y)
            w = t - c
            if np.any(w <= 0.0):
                raise SolverError("phase-1 left its domain")
            inv = 1.0 / w
            grad_y = jac.T @ (mu * inv)
            grad_t = 1.0 - mu * float(np.sum(inv))
            grad = np.concatenate([grad_y, [grad_t]])
            jw = jac * (inv[:, None])
            h_yy = mu * (jw.T @ jw)
            h_yt = -mu * (jac.T @ (inv * inv))
            h_tt = mu * float(np.sum(inv * inv))
            hess = np.zeros((dim + 1, dim + 1))
            hess[:dim, :dim] = h_yy
            hess[:dim, dim] = h_yt
            hess[dim, :dim] = h_yt
            hess[dim, dim] = h_tt
            try:
                step = np.linalg.solve(hess + 1e-12 * np.eye(dim + 1), -grad)
            except np.linalg.LinAlgError:
                step = np.linalg.lstsq(hess, -grad, rcond=None)[0]
            if float(-grad @ step) <= 1e-18:
                break
            dy, dt = step[:dim], float(step[dim])
            dw = dt - jac @ dy
            stp = 1.0
            shrink = dw < 0.0
            if np.any(shrink):
                stp = min(stp, 0.99 * float(np.min(-w[shrink] / dw[shrink])))
            f0 = t - mu * float(np.sum(np.log(w)))
            slope = float(grad @ step)
            ok = False
            for _ in range(60):
                y_try, t_try = y + stp * dy, t + stp * dt
                w_try = t_try - cons(y_try)
                if np.all(w_try > 0.0):
                    f_try = t_try - mu * float(np.sum(np.log(w_try)))
                    if f_try <= f0 + _ARMIJO * stp * slope:
                        ok = True
                        break
                stp *= _BACKTRACK
            if not ok:
                break
            y, t = y_try, t_try
            if float(np.max(cons(y))) < -1e-8:
                return y, float(np.max(cons(y)))
        mu *= 0.1
        if mu < 1e-12:
            break
    return y, float(np.max(cons(y)))


def _polish_active_set(e_mat, e_rhs, g_mat, g_rhs, x_bar):
    """Refine a barrier solution by pinning its near-active inequality rows
    as equalities and re-solving with the dual Newton iteration.

    Returns (x, lam_ineq) at machine precision, or None when the candidate
    active set does not validate (wrong slack signs or negative multipliers),
    in which case the caller keeps the barrier iterate.
    """
    ms = x_bar.size
    s = g_rhs - g_mat @ x_bar
    act = s <= 1e-6 * (1.0 + np.abs(g_rhs))
    e_aug = np.vstack([e_mat, g_mat[act]])
    b_aug = np.concatenate([e_rhs, g_rhs[act]])
    b_ind, rhs_ind = _independent_rows(e_aug, b_aug)
    try:
        x, _ = _solve_dual(b_ind, rhs_ind, ms)
    except SolverError:
        return None
    if np.any(x <= 0.0):
        return None
    s_new = g_rhs - g_mat @ x
    if np.any(s_new[~act] <= 1e-9) or np.any(s_new < -1e-9):
        return None
    grad = np.log(x) + 1.0
    basis = np.vstack([np.ones((1, ms)), e_mat, g_mat[act]])
    coef = np.linalg.lstsq(basis.T, -grad, rcond=None)[0]
    if float(np.max(np.abs(grad + basis.T @ coef))) > 1e-11:
        return None
    lam_act = coef[1 + e_mat.shape[0]:]
    if np.any(lam_act < -1e-9):
        return None
    lam = np.zeros(g_mat.shape[0])
    lam[act] = np.maximum(lam_act, 0.0)
    return x, lam


# ---------------------------------------------------------------------------
# KKT assembly

def _kkt_residual(cs, x_full, support, e_mat, e_rhs, g_mat, g_rhs, lam_ineq):
    """Max-norm KKT residual of the full problem at x (support-restricted
    stationarity; boundary entries carry their own sign multiplier)."""
    x = x_full[support]
    primal_eq = float(np.max(np.abs(e_mat @ x - e_rhs), initial=0.0))
    primal_eq = max(primal_eq, abs(float(x_full.sum()) - 1.0))
    if g_mat.shape[0]:
        viol = g_mat @ x - g_rhs
        primal_in = float(np.max(viol, initial=0.0))
        primal_in = max(primal_in, 0.0)
    else:
        primal_in = 0.0
    primal_in = max(primal_in, float(np.max(-x_full, initial=0.0)))
    # stationarity: ln x + 1 + E^T nu + G^T lam = 0 on the support
    grad = np.log(x) + 1.0
    if g_mat.shape[0]:
        grad = grad + g_mat.T @ lam_ineq
    rows = np.vstack([np.ones((1, x.size)), e_mat]) if e_mat.shape[0] else np.ones((1, x.size))
    nu = np.linalg.lstsq(rows.T, -grad, rcond=None)[0]
    stat = float(np.max(np.abs(grad + rows.T @ nu)))
    dual = float(np.max(-lam_ineq, initial=0.0)) if lam_ineq.size else 0.0
    if g_mat.shape[0]:
        comp = float(np.max(np.abs(lam_ineq * (g_rhs - g_mat @ x)), initial=0.0))
    else:
        comp = 0.0
    return max(primal_eq, primal_in, stat, dual, comp)


def _restrict(cs: ConstraintSystem, support: np.ndarray):
    """Equality/inequality blocks of cs restricted to the support columns.

    Rows that vanish on the support are dropped (an all-zero equality with a
    nonzero right side, or an all-zero inequality with a negative one, is
    infeasible outright)."""
    ms = int(support.sum())
    sub = lambda a: a[:, support] if a.shape[0] else a.reshape(0, ms)
    e_mat = np.vstack([sub(cs.a_eq), sub(cs.a_eq0)]) if (cs.a_eq.shape[0] + cs.a_eq0.shape[0]) else np.zeros((0, ms))
    e_rhs = np.concatenate([cs.b_eq, np.zeros(cs.a_eq0.shape[0])])
    g_mat = np.vstack([sub(cs.a_le), sub(cs.a_le0)]) if (cs.a_le.shape[0] + cs.a_le0.shape[0]) else np.zeros((0, ms))
    g_rhs = np.concatenate([cs.b_le, np.zeros(cs.a_le0.shape[0])])
    zero_e = ~np.any(e_mat != 0.0, axis=1)
    if np.any(zero_e & (np.abs(e_rhs) > 1e-12)):
        raise InfeasibleError("an equality row vanishes on the support but has "
                              "a nonzero right side")
    zero_g = ~np.any(g_mat != 0.0, axis=1)
    if np.any(zero_g & (g_rhs < -1e-12)):
        raise InfeasibleError("an inequality row vanishes on the support but has "
                              "a negative right side")
    return e_mat[~zero_e], e_rhs[~zero_e], g_mat[~zero_g], g_rhs[~zero_g]


def solve_maxent(cs: ConstraintSystem, start=None) -> MaxEntSolution:
    """Solve the maximum-entropy program and return the unique maximizer.

    ``start`` optionally seeds the iteration with a strictly feasible primal
    vector (used by the uniqueness probes); the converged solution does not
    depend on it.
    """
    m = cs.m
    if m == 1:
        return MaxEntSolution.from_phi([1.0], 0.0)
    support = ~_forced_zeros(cs)
    for _ in range(2 * m):  # boundary detection and zero-clip shrink the support
        try:
            x_full, lam_ineq = _solve_on_support(cs, support, start)
        except _SupportShrink as shrink:
            if not np.any(shrink.mask & support):
                raise InfeasibleError(
                    "no strictly feasible point and no cell to eliminate")
            support = support & ~shrink.mask
            if not np.any(support):
                raise InfeasibleError("every cell was eliminated; empty simplex")
            start = None
            continue
        clip = support & (x_full < _ZERO_CLIP)
        if not np.any(clip):
            break
        support = support & ~clip
        start = None
    else:
        raise ConvergenceError("support did not stabilize under zero clipping")
    x_full = np.where(x_full < _ZERO_CLIP, 0.0, x_full)
    e_mat, e_rhs, g_mat, g_rhs = _restrict(cs, support)
    kkt = _kkt_residual(cs, x_full, support, e_mat, e_rhs, g_mat, g_rhs, lam_ineq)
    if kkt > 1e-10:
        raise ConvergenceError(f"KKT residual {kkt:.3e} exceeds 1e-10")
    sol = MaxEntSolution.from_phi(x_full / x_full.sum(), kkt)
    return sol


def _interior_seed(x_p, z_basis, g_mat, g_rhs, support, full_m, start):
    """A null-space point strictly inside {x > 0, Gx < h}, or _SupportShrink
    / InfeasibleError when none exists."""
    ms = x_p.size
    candidates = []
    if start is not None:
        xs = np.asarray(start, dtype=float)[support]
        candidates.append(z_basis.T @ (xs - x_p))
    candidates.append(z_basis.T @ (np.full(ms, 1.0 / ms) - x_p))
    for seed in candidates:
        x0 = x_p + z_basis @ seed
        margin = -float(np.min(x0))
        if g_mat.shape[0]:
            margin = max(margin, float(np.max(g_mat @ x0 - g_rhs)))
        if margin < -1e-9:
            return seed
    y, margin = _phase1(x_p, z_basis, g_mat, g_rhs)
    if margin < -1e-9:
        return y
    if margin <= 1e-7:
        # the feasible set touches the boundary: cells stuck at zero must go
        x0 = x_p + z_basis @ y
        tight = x0 <= 1e-7
        if np.any(tight):
            mask = np.zeros(full_m, dtype=bool)
            mask[np.flatnonzero(support)[tight]] = True
            raise _SupportShrink(mask)
    raise InfeasibleError(
        f"no strictly feasible point (best constraint margin {margin:.3e})")


def _solve_on_support(cs: ConstraintSystem, support: np.ndarray, start):
    """Solve restricted to the support; returns (x on full index set, lam)."""
    ms = int(support.sum())
    e_mat, e_rhs, g_mat, g_rhs = _restrict(cs, support)
    e_all = np.vstack([np.ones((1, ms)), e_mat])
    e_all_rhs = np.concatenate([[1.0], e_rhs])
    x_p, z_basis, _ = _equality_basis(e_all, e_all_rhs)

    if z_basis.shape[1] == 0:
        x = x_p  # unique point of the affine set
        if np.any(x < -1e-10) or (g_mat.shape[0] and np.any(g_mat @ x - g_rhs > 1e-10)):
            raise InfeasibleError("the equality constraints pin an infeasible point")
        x_full = np.zeros(cs.m)
        x_full[support] = np.maximum(x, 0.0)
        return x_full, np.zeros(g_mat.shape[0])

    seed = _interior_seed(x_p, z_basis, g_mat, g_rhs, support, cs.m, start)

    if g_mat.shape[0] == 0:
        b_ind, b_rhs = _independent_rows(e_mat, e_rhs)
        lam0 = None
        if start is not None and b_ind.shape[0]:
            xs = np.asarray(start, dtype=float)[support]
            if np.all(xs > 0):
                lam0 = np.linalg.lstsq(b_ind.T, -np.log(xs), rcond=None)[0]
        x, _ = _solve_dual(b_ind, b_rhs, ms, lam0=lam0)
        x_full = np.zeros(cs.m)
        x_full[support] = x
        return x_full, np.zeros(0)

    y = seed
    mu = 1.0
    x = s = None
    while mu >= _BARRIER_FINAL * 0.99:
        y, x, s = _newton_in_nullspace(x_p, z_basis, g_mat, g_rhs, mu, y)
        mu *= 0.1
    lam_ineq = _BARRIER_FINAL / s
    polished = _polish_active_set(e_mat, e_rhs, g_mat, g_rhs, x)
    if polished is not None:
        x, lam_ineq = polished
    x_full = np.zeros(cs.m)
    x_full[support] = x
    return x_full, lam_ineq


def accept_external_solution(cs: ConstraintSystem, phi, *, feas_tol=1e-8) -> MaxEntSolution:
    """Package a user-supplied maximizer (e.g. an analytic solution).

    The vector is renormalized to machine-precision unit sum, checked
    against the constraints within ``feas_tol`` (absolute residuals), and
    returned with a *reported* stationarity residual: unlike solve_maxent,
    the KKT residual here is informational and not enforced.
    """
    x = np.array([float(v) for v in phi])
    if x.size != cs.m:
        raise SolverError(f"vector has {x.size} entries, expected m={cs.m}")
    if np.any(x < -feas_tol):
        raise InfeasibleError("negative entry in the supplied vector")
    x = np.maximum(x, 0.0)
    total = float(x.sum())
    if abs(total - 1.0) > max(feas_tol, 1e-6):
        raise InfeasibleError(f"supplied vector sums to {total!r}")
    x = x / total

    support = x > 0.0
    e_mat, e_rhs, g_mat, g_rhs = _restrict(cs, support)
    bad: list[str] = []
    if e_mat.shape[0]:
        r = np.abs(e_mat @ x[support] - e_rhs)
        if float(np.max(r)) > feas_tol:
            bad.append(f"equality residual {float(np.max(r)):.3e}")
    if g_mat.shape[0]:
        r = g_mat @ x[support] - g_rhs
        if float(np.max(r, initial=0.0)) > feas_tol:
            bad.append(f"inequality violation {float(np.max(r)):.3e}")
    if bad:
        raise InfeasibleError("supplied vector rejected: " + "; ".join(bad))

    act = np.zeros(g_mat.shape[0], dtype=bool)
    if g_mat.shape[0]:
        act = (g_rhs - g_mat @ x[support]) <= feas_tol
    grad = np.log(x[support]) + 1.0
    rows = [np.ones((1, int(support.sum())))]
    if e_mat.shape[0]:
        rows.append(e_mat)
    if np.any(act):
        rows.append(g_mat[act])
    basis = np.vstack(rows)
    coef = np.linalg.lstsq(basis.T, -grad, rcond=None)[0]
    stat = float(np.max(np.abs(grad + basis.T @ coef)))
    return MaxEntSolution.from_phi(x, stat)
