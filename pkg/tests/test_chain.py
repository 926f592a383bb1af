import numpy as np
import pytest
from hypothesis import given, strategies as st

from liftobs.chain import (
    ChainComplex,
    ChainMap,
    compose,
    direct_sum,
    disk,
    homology,
    identity,
    is_acyclic,
    is_cofibration,
    is_fibration,
    is_quasi_iso,
    mapping_cone,
    shift,
    sphere,
    total_homology,
    validate,
    validate_map,
    zero_complex,
    zero_map,
)
from liftobs.exactlin import GF2, QQ, Field, Matrix, ShapeError, rank
from liftobs.oracle import random_chain_map, random_complex, random_quasi_iso

FIELDS = [GF2, Field(3), QQ]
seeds = st.integers(0, 2**32 - 1)


def rc(F, seed, width=3, dim=3):
    return random_complex(F, np.random.default_rng(seed), width, dim)


def test_sphere_and_disk_homology():
    assert total_homology(sphere(GF2, 2)) == {2: 1}
    assert total_homology(disk(QQ, 1)) == {}
    assert is_acyclic(disk(GF2, 3))
    assert not is_acyclic(sphere(GF2, 0))


def test_validate_names_degree():
    F = GF2
    bad = ChainComplex(F, {0: 1, 1: 1, 2: 1}, {1: Matrix(F, [[1]]), 2: Matrix(F, [[1]])})
    msgs = validate(bad)
    assert msgs and "2" in msgs[0]


def test_shapes_checked():
    with pytest.raises(ShapeError):
        ChainComplex(GF2, {0: 1, 1: 2}, {1: Matrix.identity(GF2, 2)})


def test_zero_dims_dropped():
    c = ChainComplex(GF2, {0: 0, 1: 1})
    assert c.dims == {1: 1}
    assert c == sphere(GF2, 1)


@given(st.sampled_from(FIELDS), seeds)
def test_random_complex_is_complex_and_euler(F, seed):
    c = rc(F, seed)
    assert validate(c) == []
    euler_dims = sum((-1) ** n * k for n, k in c.dims.items())
    euler_h = sum((-1) ** n * k for n, k in total_homology(c).items())
    assert euler_dims == euler_h


@given(st.sampled_from(FIELDS), seeds)
def test_homology_matches_rank_formula(F, seed):
    c = rc(F, seed)
    for n in range(c.lo - 1, c.hi + 2) if c.dims else ():
        expected = c.dim(n) - rank(c.diff(n)) - rank(c.diff(n + 1))
        assert homology(c, n).dim == expected


@given(st.sampled_from(FIELDS), seeds)
def test_random_maps_are_chain_maps(F, seed):
    rng = np.random.default_rng(seed)
    S, T, U = (random_complex(F, rng, 3, 2) for _ in range(3))
    f, g = random_chain_map(S, T, rng), random_chain_map(T, U, rng)
    assert validate_map(f) == [] and validate_map(g) == []
    assert validate_map(compose(g, f)) == []
    assert compose(identity(T), f) == f == compose(f, identity(S))


@given(st.sampled_from(FIELDS), seeds)
def test_quasi_iso_iff_cone_acyclic(F, seed):
    rng = np.random.default_rng(seed)
    S, T = random_complex(F, rng, 3, 2), random_complex(F, rng, 3, 2)
    f = random_chain_map(S, T, rng)
    cone = mapping_cone(f)
    assert validate(cone) == []
    assert is_quasi_iso(f) == is_acyclic(cone)


@given(st.sampled_from(FIELDS), seeds)
def test_planted_quasi_iso(F, seed):
    alpha = random_quasi_iso(F, np.random.default_rng(seed), 3, 3)
    assert is_quasi_iso(alpha)
    assert is_acyclic(mapping_cone(alpha))


@given(st.sampled_from(FIELDS), seeds)
def test_direct_sum_and_shift(F, seed):
    a, b = rc(F, seed), rc(F, seed + 1)
    h = total_homology(direct_sum(a, b))
    ha, hb = total_homology(a), total_homology(b)
    for n in set(ha) | set(hb):
        assert h.get(n, 0) == ha.get(n, 0) + hb.get(n, 0)
    s = shift(a, 2)
    assert validate(s) == []
    assert total_homology(s) == {n + 2: k for n, k in ha.items()}


def test_model_predicates():
    F = GF2
    S0, D1 = sphere(F, 0), disk(F, 1)
    inc = ChainMap(S0, D1, {0: Matrix(F, [[1]])})
    assert is_cofibration(inc) and not is_fibration(inc)
    assert not is_quasi_iso(inc)
    assert is_fibration(zero_map(D1, zero_complex(F)))
    assert is_quasi_iso(zero_map(D1, zero_complex(F)))
