import numpy as np
import pytest
from hypothesis import given, strategies as st

from liftobs.chain import ChainMap, compose, disk, identity, sphere, zero_complex, zero_map
from liftobs.constructions import cocylinder, cylinder
from liftobs.exactlin import GF2, QQ, Matrix
from liftobs.oracle import InstanceParams, random_instance
from liftobs.solver import (
    HelpSolution,
    HypothesisError,
    InvalidProblemError,
    LiftingProblem,
    LinearSystem,
    MapUnknown,
    help_system,
    require,
    solve_extension,
    solve_help,
    solve_help_via_cocylinder,
    solve_square,
)

seeds = st.integers(0, 2**32 - 1)


def s0_negative():
    Z, S0 = zero_complex(GF2), sphere(GF2, 0)
    return LiftingProblem.degenerate(ChainMap(Z, S0), ChainMap(Z, S0), identity(S0), ChainMap(Z, Z))


def test_linear_system_solution_and_dual():
    S = LinearSystem(QQ)
    a = S.block(1, 2)
    S.equation([(None, a, None, 1)], Matrix(QQ, [[1, 2]]))
    x = S.solve()
    assert S.extract(x, a) == Matrix(QQ, [[1, 2]])
    assert S.check(x)
    S.equation([(None, a, None, 2)], Matrix(QQ, [[1, 1]]))
    assert S.solve() is None
    y = S.dual_certificate()
    assert y is not None and S.check_dual(y)


def test_map_unknown_yields_chain_maps():
    rng = np.random.default_rng(0)
    D1 = disk(GF2, 1)
    S = LinearSystem(GF2)
    u = MapUnknown(S, D1, D1)
    require(S, [(None, u, None, 1)], identity(D1))
    assert u.value(S.solve(rng)) == identity(D1)


def test_s0_negative_instance():
    p = s0_negative()
    assert solve_help(p) is None
    S, _, _ = help_system(p)
    y = S.dual_certificate()
    assert y is not None and S.check_dual(y)


def test_identity_instance_lifts():
    F = GF2
    S0, D1 = sphere(F, 0), disk(F, 1)
    i = ChainMap(S0, D1, {0: Matrix(F, [[1]])})
    p = LiftingProblem.degenerate(i, identity(D1), identity(D1), i)
    sol = solve_help(p)
    assert sol is not None and sol.is_valid(p)


def test_invalid_problem_rejected():
    F = GF2
    S0 = sphere(F, 0)
    Z = zero_complex(F)
    # H does not restrict to f∘i on the 0-end
    ca = cylinder(S0)
    bad_H = zero_map(ca.obj, S0)
    p = LiftingProblem(identity(S0), identity(S0), identity(S0), identity(S0), bad_H)
    assert p.violations()
    with pytest.raises(InvalidProblemError):
        p.check()
    with pytest.raises(ValueError):
        LiftingProblem.degenerate(identity(S0), identity(S0), zero_map(S0, S0), identity(S0))
    del Z


@given(st.sampled_from([2, 3, 0]), seeds)
def test_planted_instances_solve(field, seed):
    p = random_instance(InstanceParams(field=field, width=3, max_dim=2, plant_lift=True, seed=seed))
    sol = solve_help(p)
    assert sol is not None and sol.violations(p) == []


@given(st.sampled_from([2, 3, 0]), seeds)
def test_random_solutions_valid(field, seed):
    p = random_instance(InstanceParams(field=field, width=3, max_dim=2, seed=seed))
    rng = np.random.default_rng(seed)
    canonical = solve_help(p)
    sampled = solve_help(p, rng=rng)
    assert (canonical is None) == (sampled is None)
    if sampled is not None:
        assert sampled.is_valid(p)


@given(st.sampled_from([2, 0]), seeds)
def test_cocylinder_route_on_quasi_isos(field, seed):
    p = random_instance(InstanceParams(field=field, width=3, max_dim=3, force_quasi_iso_alpha=True, seed=seed))
    sol, trace = solve_help_via_cocylinder(p, return_trace=True)
    assert sol.violations(p) == []
    assert compose(cocylinder(p.Y).ev1, trace.M) == sol.K


def test_cocylinder_route_needs_quasi_iso():
    p = s0_negative()
    with pytest.raises(HypothesisError):
        solve_help_via_cocylinder(p)


def test_solve_square_and_extension():
    F = GF2
    S0, D1 = sphere(F, 0), disk(F, 1)
    i = ChainMap(S0, D1, {0: Matrix(F, [[1]])})
    # i against D1 -> 0: every map out of S0 extends over the disk
    Z = zero_complex(F)
    lift = solve_square(i, i, zero_map(D1, Z), zero_map(D1, Z))
    assert lift is not None and compose(lift, i) == i
    assert solve_extension(i, identity(S0)) is None
    with pytest.raises(HypothesisError):
        solve_extension(zero_map(S0, D1), identity(S0))


def test_help_solution_detects_errors():
    p = random_instance(InstanceParams(field=2, width=2, max_dim=2, plant_lift=True, seed=3))
    sol = solve_help(p)
    broken = HelpSolution(zero_map(sol.K.source, sol.K.target), sol.g)
    if broken.K != sol.K:
        assert broken.violations(p)
