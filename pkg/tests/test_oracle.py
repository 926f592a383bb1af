import numpy as np
import pytest
from hypothesis import given, strategies as st

from liftobs.chain import ChainMap, disk, identity, is_fibration, is_quasi_iso, sphere, zero_complex
from liftobs.exactlin import GF2, QQ, Matrix
from liftobs.obstruction import build_chi
from liftobs.oracle import (
    EnumerationCapExceeded,
    InstanceParams,
    enumerate_extension,
    enumerate_help,
    planted_section_instance,
    random_fibration,
    random_instance,
    random_complex,
    tiny_instances,
    verify_theorem,
)
from liftobs.serialize import problem_to_json
from liftobs.solver import LiftingProblem, solve_extension, solve_help

seeds = st.integers(0, 2**64 - 1)


def test_enumerate_identity():
    F = GF2
    S0, D1 = sphere(F, 0), disk(F, 1)
    i = ChainMap(S0, D1, {0: Matrix(F, [[1]])})
    census = enumerate_help(LiftingProblem.degenerate(i, identity(D1), identity(D1), i))
    assert census.exists and census.count >= 1


def test_enumerate_negative_control():
    Z, S0 = zero_complex(GF2), sphere(GF2, 0)
    p = LiftingProblem.degenerate(ChainMap(Z, S0), ChainMap(Z, S0), identity(S0), ChainMap(Z, Z))
    assert enumerate_help(p).count == 0
    c = build_chi(p)
    assert enumerate_extension(c.inclusion, c.chi).count == 0


def test_enumerate_full_inclusion():
    D1 = disk(GF2, 1)
    census = enumerate_extension(identity(D1), identity(D1))
    assert census.count == 1


def test_enumeration_cap():
    D = random_complex(GF2, np.random.default_rng(0), 1, 1, dims={0: 5, 1: 5})
    with pytest.raises(EnumerationCapExceeded):
        enumerate_extension(identity(D), identity(D), cap_bits=10)
    with pytest.raises(ValueError):
        enumerate_extension(identity(disk(QQ, 1)), identity(disk(QQ, 1)))


def test_oracle_agrees_on_tiny_instances():
    for _, p, c in tiny_instances(8, seed=21, cap_bits=16):
        assert enumerate_help(p, 16).exists == (solve_help(p) is not None)
        assert enumerate_extension(c.inclusion, c.chi, 16).exists == (solve_extension(c.inclusion, c.chi) is not None)


@given(seeds, st.sampled_from([2, 0]), st.booleans(), st.booleans())
def test_instances_deterministic_and_valid(seed, field, plant, qi):
    params = InstanceParams(field=field, width=3, max_dim=2, plant_lift=plant, force_quasi_iso_alpha=qi, seed=seed)
    p = random_instance(params, 3)
    assert p.violations() == []
    assert problem_to_json(p) == problem_to_json(random_instance(params, 3))
    if qi:
        assert is_quasi_iso(p.alpha)


@given(seeds)
def test_generated_fibrations_and_sections(seed):
    rng = np.random.default_rng(seed % 2**32)
    Y = random_complex(GF2, rng, 3, 2)
    assert is_fibration(random_fibration(Y, rng, {0: 1, 1: 1}))
    from liftobs.chain import compose

    i, h, alpha, f, theta = planted_section_instance(InstanceParams(field=2, width=2, max_dim=2, seed=seed))
    assert is_fibration(alpha)
    assert compose(alpha, theta) == f and compose(theta, i) == h


def test_instance_invariants_at_scale():
    params = InstanceParams(field=2, width=4, max_dim=3, seed=99)
    for k in range(1000):
        assert random_instance(params, k).violations() == []


def test_params_validated():
    with pytest.raises(ValueError):
        InstanceParams(width=0)


def test_verify_theorem_small():
    rep = verify_theorem(InstanceParams(field=2, width=3, max_dim=2, seed=5), 10)
    assert rep.count == 10 and rep.ok
    assert rep.agreements == 10
    assert rep.extracted_ok == rep.chi_trivial
