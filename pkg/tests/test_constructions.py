import numpy as np
import pytest
from hypothesis import given, strategies as st

from liftobs.chain import (
    AlgebraicHomotopy,
    ChainMap,
    compose,
    disk,
    homology,
    identity,
    is_acyclic_cofibration,
    is_quasi_iso,
    sphere,
    validate_homotopy,
    zero_map,
)
from liftobs.constructions import (
    NonCommutingError,
    cocylinder,
    cylinder,
    cylinder_map,
    cylinder_map_to_homotopy,
    double_mapping_cylinder,
    factor_acof_fib,
    factor_cof_afib,
    gap_map,
    homotopy_pushout,
    homotopy_to_cylinder_map,
    mapping_cylinder_side,
    pullback,
    pushout,
)
from liftobs.exactlin import GF2, QQ, Field, Matrix
from liftobs.oracle import InstanceParams, random_chain_map, random_cofibration, random_complex, random_cospan
from liftobs.solver import nullhomotopy

FIELDS = [GF2, Field(3), QQ]
seeds = st.integers(0, 2**32 - 1)


def random_map(F, seed, width=3, dim=2):
    rng = np.random.default_rng(seed)
    S, T = random_complex(F, rng, width, dim), random_complex(F, rng, width, dim)
    return random_chain_map(S, T, rng)




@given(st.sampled_from(FIELDS), seeds)
def test_cylinder_and_cocylinder_invariants(F, seed):
    c = random_complex(F, np.random.default_rng(seed), 3, 3)
    assert cylinder(c).violations() == []
    assert cocylinder(c).violations() == []


def test_cylinder_of_point():
    cyl = cylinder(sphere(QQ, 0))
    assert cyl.obj.dims == {0: 2, 1: 1}
    assert homology(cyl.obj, 0).dim == 1 and homology(cyl.obj, 1).dim == 0


@given(st.sampled_from(FIELDS), seeds)
def test_cylinder_map_is_functorial(F, seed):
    rng = np.random.default_rng(seed)
    S, T, U = (random_complex(F, rng, 3, 2) for _ in range(3))
    f, g = random_chain_map(S, T, rng), random_chain_map(T, U, rng)
    assert cylinder_map(compose(g, f)) == compose(cylinder_map(g), cylinder_map(f))
    cs, ct = cylinder(S), cylinder(T)
    assert compose(cylinder_map(f), cs.i0) == compose(ct.i0, f)
    assert compose(ct.pi, cylinder_map(f)) == compose(f, cs.pi)


@given(st.sampled_from(FIELDS), seeds)
def test_homotopy_cylinder_roundtrip(F, seed):
    rng = np.random.default_rng(seed)
    S, T = random_complex(F, rng, 3, 2), random_complex(F, rng, 3, 2)
    f = random_chain_map(S, T, rng)
    # f + (ds + sd) is homotopic to f via any graded s
    s = {n: Matrix(F, rng.integers(0, 2, size=(T.dim(n + 1), k)).astype(object))
         for n, k in S.dims.items() if T.dim(n + 1)}
    comps = {}
    for n in S.dims:
        if T.dim(n):
            m = f.comp(n)
            if n in s:
                m = m + T.diff(n + 1) @ s[n]
            if n - 1 in s:
                m = m + s[n - 1] @ S.diff(n)
            comps[n] = m
    g = ChainMap(S, T, comps)
    h = AlgebraicHomotopy(f, g, s)
    assert validate_homotopy(h) == []
    K = homotopy_to_cylinder_map(h)
    assert compose(K, cylinder(S).i0) == f and compose(K, cylinder(S).i1) == g
    back = cylinder_map_to_homotopy(K, S)
    assert all(back.comp(n) == h.comp(n) for n in S.dims)


def test_nullhomotopy_examples():
    assert nullhomotopy(identity(disk(GF2, 1))) is not None
    assert nullhomotopy(identity(sphere(GF2, 0))) is None


@given(st.sampled_from(FIELDS), seeds)
def test_pushout_universal_property(F, seed):
    rng = np.random.default_rng(seed)
    A = random_complex(F, rng, 3, 2)
    B, C = random_complex(F, rng, 3, 2), random_complex(F, rng, 3, 2)
    u, v = random_chain_map(A, B, rng), random_chain_map(A, C, rng)
    po = pushout(u, v)
    assert po.violations() == []
    # the legs themselves form a cocone; inducing from them gives the identity
    assert po.induced(po.leg_b, po.leg_c, po.obj) == identity(po.obj)
    pb = pullback(u, u)
    assert pb.violations() == []
    assert pb.induced(pb.leg_x, pb.leg_z, pb.obj) == identity(pb.obj)


def test_noncommuting_cocone_rejected():
    F = GF2
    S0, D1 = sphere(F, 0), disk(F, 1)
    inc = ChainMap(S0, D1, {0: Matrix(F, [[1]])})
    po = pushout(inc, inc)
    with pytest.raises(NonCommutingError):
        po.induced(identity(D1), zero_map(D1, D1))


def test_suspension_by_pushout():
    F = GF2
    S0, D1 = sphere(F, 0), disk(F, 1)
    inc = ChainMap(S0, D1, {0: Matrix(F, [[1]])})
    po = pushout(inc, inc)
    # two disks glued along their boundary generator: H_1 = 1, H_0 = 0
    assert homology(po.obj, 1).dim == 1 and homology(po.obj, 0).dim == 0


@given(st.sampled_from(FIELDS), seeds)
def test_factorizations(F, seed):
    alpha = random_map(F, seed)
    assert factor_cof_afib(alpha).violations() == []
    assert factor_acof_fib(alpha).violations() == []


@given(st.sampled_from(FIELDS), seeds)
def test_mapping_cylinders_of_cofibration(F, seed):
    i = random_cofibration(F, np.random.default_rng(seed), 3, 3)
    for end in (0, 1):
        N = mapping_cylinder_side(i, end)
        assert N.violations() == []
        assert is_acyclic_cofibration(N.iota)
    assert double_mapping_cylinder(i).violations() == []


@given(st.sampled_from(FIELDS), seeds)
def test_homotopy_pushout_and_gap_map(F, seed):
    alpha, beta = random_cospan(InstanceParams(field=F.characteristic, width=3, max_dim=2, seed=seed))
    hpo = homotopy_pushout(alpha, beta)
    assert hpo.violations() == []
    gm = gap_map(alpha, beta, hpo)
    assert gm.violations() == []
    assert is_quasi_iso(gm.b)
