import numpy as np
import pytest
from hypothesis import given, strategies as st

from liftobs.chain import (
    ChainMap,
    compose,
    direct_sum,
    disk,
    identity,
    is_acyclic_fibration,
    projection,
    sphere,
    validate_map,
    zero_complex,
)
from liftobs.constructions import mapping_cylinder_side
from liftobs.exactlin import GF2, QQ
from liftobs.obstruction import (
    a_initial_specialization,
    build_chi,
    extract_lift_from_trivial_chi,
    forward_direction,
    is_chi_trivial,
    section_strict_lift,
    theorem_hypotheses,
)
from liftobs.oracle import InstanceParams, planted_section_instance, random_instance
from liftobs.solver import HypothesisError, LiftingProblem, solve_help

seeds = st.integers(0, 2**32 - 1)


def s0_negative():
    Z, S0 = zero_complex(GF2), sphere(GF2, 0)
    return LiftingProblem.degenerate(ChainMap(Z, S0), ChainMap(Z, S0), identity(S0), ChainMap(Z, Z))


def acyclic_fibration_instance(F):
    """A = 0, B = Y = S0, X = S0 ⊕ D1 with α the projection onto S0."""
    S0, Z = sphere(F, 0), zero_complex(F)
    X = direct_sum(S0, disk(F, 1))
    alpha = projection(S0, disk(F, 1), 0, X)
    return LiftingProblem.degenerate(ChainMap(Z, S0), alpha, identity(S0), ChainMap(Z, X))


def test_negative_control_is_nontrivial():
    p = s0_negative()
    c = build_chi(p)
    assert c.N.obj.dims == {0: 2} and c.M.dims == {0: 2}
    assert is_chi_trivial(c) is None
    assert solve_help(p) is None


@pytest.mark.parametrize("F", [GF2, QQ])
def test_acyclic_fibration_gives_trivial_chi(F):
    p = acyclic_fibration_instance(F)
    assert is_acyclic_fibration(p.alpha)
    c = build_chi(p)
    ext = is_chi_trivial(c)
    assert ext is not None
    for mode in ("cocylinder", "direct"):
        sol = extract_lift_from_trivial_chi(p, c, ext, gap_lift=mode)
        assert sol.violations(p) == []


def test_a_initial_specialization():
    res = a_initial_specialization(acyclic_fibration_instance(GF2))
    assert res.extension is not None and res.solution is not None
    neg = a_initial_specialization(s0_negative())
    assert neg.extension is None and neg.solution is None


def test_build_chi_requires_cofibration():
    F = GF2
    S0 = sphere(F, 0)
    Z = zero_complex(F)
    i = ChainMap(S0, Z)
    p = LiftingProblem.degenerate(i, ChainMap(Z, Z), ChainMap(Z, Z), ChainMap(S0, Z))
    with pytest.raises(HypothesisError):
        build_chi(p)


@given(st.sampled_from([2, 3, 0]), seeds, st.booleans())
def test_biconditional_and_extraction(field, seed, plant):
    p = random_instance(InstanceParams(field=field, width=3, max_dim=2, plant_lift=plant, seed=seed))
    c = build_chi(p)
    assert c.violations() == []
    ext = is_chi_trivial(c)
    sol = solve_help(p)
    assert (ext is not None) == (sol is not None)
    if ext is not None:
        assert validate_map(ext) == []
        assert compose(ext, c.inclusion) == c.chi
        assert extract_lift_from_trivial_chi(p, c, ext).is_valid(p)


@given(st.sampled_from([2, 0]), seeds)
def test_forward_direction(field, seed):
    p = random_instance(InstanceParams(field=field, width=3, max_dim=2, plant_lift=True, seed=seed))
    fw = forward_direction(p, solve_help(p))
    assert compose(fw.extension, fw.chi.inclusion) == fw.chi.chi
    assert fw.canonical_trivial


@given(seeds)
def test_triviality_independent_of_witness(seed):
    p = random_instance(InstanceParams(field=2, width=3, max_dim=2, seed=seed))
    rng = np.random.default_rng(seed)
    canonical = is_chi_trivial(build_chi(p)) is not None
    other = is_chi_trivial(build_chi(p, rng=rng)) is not None
    assert canonical == other


@given(seeds)
def test_direct_gap_lift_agrees(seed):
    p = random_instance(InstanceParams(field=2, width=3, max_dim=2, plant_lift=True, seed=seed))
    c = build_chi(p)
    ext = is_chi_trivial(c)
    sol, trace = extract_lift_from_trivial_chi(p, c, ext, gap_lift="direct", return_trace=True)
    assert sol.is_valid(p)
    N1 = mapping_cylinder_side(p.i, 1)
    assert compose(trace.nu, N1.iota) == trace.mu
    assert compose(trace.jfact.f, trace.nu) == ext


@given(st.sampled_from([2, 0]), seeds)
def test_section_strict_lift(field, seed):
    i, h, alpha, f, _ = planted_section_instance(InstanceParams(field=field, width=3, max_dim=2, seed=seed))
    theta = section_strict_lift(i, h, alpha, f)
    assert theta is not None
    assert compose(alpha, theta) == f and compose(theta, i) == h


@given(seeds)
def test_theorem_hypotheses_hold(seed):
    p = random_instance(InstanceParams(field=2, width=3, max_dim=2, seed=seed))
    assert all(theorem_hypotheses(p).values())
