import json
from importlib import resources

import pytest

from entcon import ConstraintSystem, ToleranceSpec, load_problem, solve_maxent


def bundled(name):
    path = resources.files("entcon").joinpath(f"configs/{name}.json")
    return load_problem(json.loads(path.read_text()))


@pytest.fixture(scope="session")
def die_unconstrained():
    cs, tol = bundled("die_unconstrained")
    return cs, tol, solve_maxent(cs)


@pytest.fixture(scope="session")
def die_mean():
    cs, tol = bundled("die_mean")
    return cs, tol, solve_maxent(cs)


@pytest.fixture(scope="session")
def traffic():
    cs, tol = bundled("traffic")
    return cs, tol, solve_maxent(cs)


@pytest.fixture(scope="session")
def queue_mean():
    cs, tol = bundled("queue_mean")
    return cs, tol, solve_maxent(cs)


@pytest.fixture(scope="session")
def queue_bounded():
    cs, tol = bundled("queue_bounded")
    return cs, tol, solve_maxent(cs)


# small three-cell systems for the exhaustive sweeps
@pytest.fixture(scope="session")
def m3_uniform():
    cs = ConstraintSystem(3)
    tol = ToleranceSpec()
    return cs, tol, solve_maxent(cs)


@pytest.fixture(scope="session")
def m3_mean():
    cs = ConstraintSystem(3, eq=([[1, 2, 3]], [2.2]))
    tol = ToleranceSpec(eq=0.01)
    return cs, tol, solve_maxent(cs)


@pytest.fixture(scope="session")
def m3_capped():
    cs = ConstraintSystem(3, le=([[1.0, 0.0, 0.0]], [0.25]))
    tol = ToleranceSpec(ineq=0.02)
    return cs, tol, solve_maxent(cs)
