"""Linear constraint systems on frequency vectors, split into four categories.

A constraint system over ``m`` cells holds equalities with nonzero right-hand
sides (``A_eq x = b_eq``), inequalities with nonzero right-hand sides
(``A_le x <= b_le``), homogeneous equalities (``A_eq0 x = 0``) and homogeneous
inequalities (``A_le0 x <= 0``).  The split exists because tolerances on the
nonzero categories are *relative* to the smallest right-hand-side magnitude,
which is meaningless for zero rows.  Greater-or-equal rows must be supplied
negated into <= form by the caller.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

__all__ = [
    "ConstraintError",
    "ConstraintSystem",
    "ToleranceSpec",
    "RowResidual",
    "SatisfactionReport",
    "row_inf_norm",
    "tolerance_radius",
    "satisfies",
    "load_problem",
    "problem_to_dict",
]


class ConstraintError(ValueError):
    """Invalid constraint data or configuration."""


def _as_matrix(a, m: int, name: str) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.size == 0:
        return np.zeros((0, m))
    if arr.ndim != 2:
        raise ConstraintError(f"{name}: expected a 2-d matrix, got ndim={arr.ndim}")
    if arr.shape[1] != m:
        raise ConstraintError(f"{name}: has {arr.shape[1]} columns, expected m={m}")
    if not np.all(np.isfinite(arr)):
        raise ConstraintError(f"{name}: non-finite entries")
    return arr


def _as_vector(b, rows: int, name: str) -> np.ndarray:
    arr = np.asarray(b, dtype=float).reshape(-1)
    if arr.shape[0] != rows:
        raise ConstraintError(f"{name}: has {arr.shape[0]} entries, expected {rows}")
    if not np.all(np.isfinite(arr)):
        raise ConstraintError(f"{name}: non-finite entries")
    return arr


@dataclass(frozen=True)
class ConstraintSystem:
    """Immutable container for the four constraint categories over m cells.

    Rows with a zero right-hand side are rejected from the nonzero
    categories: the caller must place them in ``a_eq0`` / ``a_le0``
    explicitly, since the two kinds carry different tolerance semantics.
    """

    m: int
    a_eq: np.ndarray
    b_eq: np.ndarray
    a_le: np.ndarray
    b_le: np.ndarray
    a_eq0: np.ndarray
    a_le0: np.ndarray

    def __init__(self, m, eq=None, le=None, eq0=None, le0=None):
        if int(m) < 1:
            raise ConstraintError("m must be a positive integer")
        object.__setattr__(self, "m", int(m))
        a_eq, b_eq = eq if eq is not None else ((), ())
        a_le, b_le = le if le is not None else ((), ())
        a_eq = _as_matrix(a_eq, self.m, "A_eq")
        b_eq = _as_vector(b_eq, a_eq.shape[0], "b_eq")
        a_le = _as_matrix(a_le, self.m, "A_le")
        b_le = _as_vector(b_le, a_le.shape[0], "b_le")
        if np.any(b_eq == 0.0):
            raise ConstraintError(
                "b_eq contains a zero entry; zero-RHS equalities belong in eq0"
            )
        if np.any(b_le == 0.0):
            raise ConstraintError(
                "b_le contains a zero entry; zero-RHS inequalities belong in le0"
            )
        a_eq0 = _as_matrix(eq0 if eq0 is not None else (), self.m, "A_eq0")
        a_le0 = _as_matrix(le0 if le0 is not None else (), self.m, "A_le0")
        for name, arr in (
            ("a_eq", a_eq), ("b_eq", b_eq), ("a_le", a_le), ("b_le", b_le),
            ("a_eq0", a_eq0), ("a_le0", a_le0),
        ):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_rows(self) -> int:
        return (
            self.a_eq.shape[0] + self.a_le.shape[0]
            + self.a_eq0.shape[0] + self.a_le0.shape[0]
        )

    @property
    def is_unconstrained(self) -> bool:
        return self.n_rows == 0

    def categories(self):
        """Yield (name, A, b_or_None) for the nonempty categories."""
        if self.a_eq.shape[0]:
            yield "eq", self.a_eq, self.b_eq
        if self.a_le.shape[0]:
            yield "ineq", self.a_le, self.b_le
        if self.a_eq0.shape[0]:
            yield "eq0", self.a_eq0, None
        if self.a_le0.shape[0]:
            yield "ineq0", self.a_le0, None


@dataclass(frozen=True)
class ToleranceSpec:
    """Per-category constraint tolerances.

    ``eq`` and ``ineq`` are relative to the smallest |b| of their category;
    ``eq0`` and ``ineq0`` are absolute.  ``None`` means unbounded (the
    category is never violated, whatever the residual).
    """

    eq: float | None = None
    ineq: float | None = None
    eq0: float | None = None
    ineq0: float | None = None

    def __post_init__(self):
        for name in ("eq", "ineq", "eq0", "ineq0"):
            v = getattr(self, name)
            if v is not None and not (float(v) > 0.0):
                raise ConstraintError(f"tolerance {name} must be > 0 or None, got {v}")

    def value(self, category: str) -> float:
        v = getattr(self, category)
        return math.inf if v is None else float(v)


def row_inf_norm(a) -> float:
    """Matrix infinity norm: the maximum l1 norm over the rows."""
    arr = np.asarray(a, dtype=float)
    if arr.size == 0:
        raise ConstraintError("row_inf_norm of an empty matrix is undefined")
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return float(np.max(np.sum(np.abs(arr), axis=1)))


def _category_limit(category: str, tol: ToleranceSpec, b: np.ndarray | None) -> float:
    """Allowed residual magnitude for one category."""
    d = tol.value(category)
    if b is None:
        return d
    if math.isinf(d):
        return math.inf
    return d * float(np.min(np.abs(b)))


def tolerance_radius(cs: ConstraintSystem, tol: ToleranceSpec) -> float:
    """Radius r such that any simplex vector within l-inf distance r of an
    exactly-feasible point still satisfies every category within tolerance.

    Equals the minimum over nonempty categories of limit / row_inf_norm(A),
    where limit is delta*|b|_min for the nonzero categories and delta itself
    for the homogeneous ones; +inf when there are no constraints.
    """
    terms = []
    for category, a, b in cs.categories():
        limit = _category_limit(category, tol, b)
        if math.isinf(limit):
            continue
        terms.append(limit / row_inf_norm(a))
    return min(terms) if terms else math.inf


@dataclass(frozen=True)
class RowResidual:
    category: str
    row: int
    residual: float
    limit: float
    ok: bool


@dataclass(frozen=True)
class SatisfactionReport:
    ok: bool
    rows: tuple[RowResidual, ...]

    def __bool__(self) -> bool:
        return self.ok


def _check_simplex(f, m: int) -> np.ndarray:
    seq = list(f)
    if len(seq) != m:
        raise ConstraintError(f"frequency vector has {len(seq)} entries, expected {m}")
    exact = all(isinstance(v, (int, Fraction)) for v in seq)
    if exact:
        if any(v < 0 for v in seq):
            raise ConstraintError("frequency vector has a negative entry")
        if sum(seq) != 1:
            raise ConstraintError("rational frequency vector must sum to exactly 1")
        return np.array([float(v) for v in seq])
    arr = np.asarray(seq, dtype=float)
    if np.any(arr < -1e-15):
        raise ConstraintError("frequency vector has a negative entry")
    if abs(float(arr.sum()) - 1.0) > 1e-12:
        raise ConstraintError(f"frequency vector sums to {arr.sum()!r}, not 1")
    return arr


def satisfies(cs: ConstraintSystem, tol: ToleranceSpec, f) -> SatisfactionReport:
    """Check whether a simplex vector meets every constraint within tolerance.

    Equality rows are compared as |a.f - b| <= limit, inequality rows as
    a.f - b <= limit (one-sided).  Returns a per-row residual report.
    """
    x = _check_simplex(f, cs.m)
    rows: list[RowResidual] = []
    ok = True
    for category, a, b in cs.categories():
        limit = _category_limit(category, tol, b)
        values = a @ x if b is None else a @ x - b
        for i, v in enumerate(values):
            r = abs(float(v)) if category in ("eq", "eq0") else float(v)
            row_ok = r <= limit
            ok = ok and row_ok
            rows.append(RowResidual(category, i, r, limit, row_ok))
    return SatisfactionReport(ok, tuple(rows))


# ---------------------------------------------------------------------------
# Problem config (JSON) format shared by the CLI and tests.

_CATEGORY_KEYS = {
    "equalities": ("eq", True),
    "inequalities": ("ineq", True),
    "zero_equalities": ("eq0", False),
    "zero_inequalities": ("ineq0", False),
}


def load_problem(source) -> tuple[ConstraintSystem, ToleranceSpec]:
    """Load a problem config from a dict, JSON string, or file path."""
    if isinstance(source, (str, Path)) and Path(str(source)).exists():
        data = json.loads(Path(source).read_text())
    elif isinstance(source, str):
        data = json.loads(source)
    elif isinstance(source, dict):
        data = source
    else:
        raise ConstraintError(f"cannot load problem config from {source!r}")

    if "m" not in data:
        raise ConstraintError("config is missing 'm'")
    m = int(data["m"])

    parts: dict[str, object] = {}
    nonempty: list[str] = []
    for key, (short, has_b) in _CATEGORY_KEYS.items():
        block = data.get(key)
        if block is None:
            continue
        a = block.get("A") or []
        if len(a) == 0:
            continue
        nonempty.append(short)
        if has_b:
            b = block.get("b")
            if b is None:
                raise ConstraintError(f"{key}: matrix present but 'b' missing")
            parts["eq" if short == "eq" else "le"] = (a, b)
        else:
            parts["eq0" if short == "eq0" else "le0"] = a

    tols = data.get("tolerances", {})
    kwargs: dict[str, float | None] = {}
    for short in ("eq", "ineq", "eq0", "ineq0"):
        if short in nonempty and short not in tols:
            raise ConstraintError(
                f"tolerances: missing entry '{short}' for a nonempty category "
                "(use null for unbounded)"
            )
        kwargs[short] = tols.get(short)
    return ConstraintSystem(m, **parts), ToleranceSpec(**kwargs)


def problem_to_dict(cs: ConstraintSystem, tol: ToleranceSpec) -> dict:
    """Inverse of load_problem, suitable for json.dumps."""
    return {
        "m": cs.m,
        "equalities": {"A": cs.a_eq.tolist(), "b": cs.b_eq.tolist()},
        "inequalities": {"A": cs.a_le.tolist(), "b": cs.b_le.tolist()},
        "zero_equalities": {"A": cs.a_eq0.tolist()},
        "zero_inequalities": {"A": cs.a_le0.tolist()},
        "tolerances": {
            "eq": tol.eq, "ineq": tol.ineq, "eq0": tol.eq0, "ineq0": tol.ineq0,
        },
    }
