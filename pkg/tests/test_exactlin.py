from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from liftobs.exactlin import (
    GF2,
    QQ,
    Eliminator,
    Field,
    Matrix,
    ShapeError,
    _rref_generic,
    _rref_gf2,
    image_basis,
    kernel_basis,
    left_inverse,
    quotient_basis,
    rank,
    rref,
    solve_affine,
)

FIELDS = [GF2, Field(3), Field(7), QQ]


def rand_matrix(F, seed, max_rows=6, max_cols=6, density=0.6):
    rng = np.random.default_rng(seed)
    r = int(rng.integers(0, max_rows + 1))
    c = int(rng.integers(0, max_cols + 1))
    hi = 3 if F.p is None else F.p
    vals = rng.integers(-hi if F.p is None else 0, hi, size=(r, c))
    vals = vals * (rng.random((r, c)) < density)
    return Matrix(F, vals.astype(object)) if r and c else Matrix.zeros(F, r, c)


field_and_seed = st.tuples(st.sampled_from(FIELDS), st.integers(0, 2**32 - 1))


def test_field_parse_and_descriptor():
    assert Field.parse("Q") == QQ
    assert Field.parse(0) == QQ
    assert Field.parse(2) == GF2
    assert Field.parse("GF5") == Field(5)
    assert QQ.descriptor() == "Q" and GF2.descriptor() == 2
    with pytest.raises(ValueError):
        Field(4)


def test_scalar_canonical_forms():
    F = Field(5)
    assert F.scalar(-1) == 4
    assert F.scalar("1/2") == 3
    assert QQ.scalar("3/6") == Fraction(1, 2)
    assert QQ.to_json(Fraction(3, 2)) == "3/2"
    assert QQ.to_json(Fraction(4, 2)) == 2
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ZeroDivisionError):
        F.scalar("1/5")


def test_matrix_shapes_checked():
    with pytest.raises(ShapeError):
        Matrix(GF2, [[1, 0], [1]])
    with pytest.raises(ShapeError):
        Matrix.identity(GF2, 2) @ Matrix.identity(GF2, 3)


def test_block_assembly():
    F = QQ
    m = Matrix.block(F, [1, 2], [2, 1], {(0, 0): Matrix(F, [[1, 2]]), (1, 1): Matrix(F, [[3], [4]])})
    assert m.tolist() == [[1, 2, 0], [0, 0, 3], [0, 0, 4]]


@given(field_and_seed)
def test_rref_structure(fs):
    F, seed = fs
    A = rand_matrix(F, seed)
    R, piv = rref(A)
    assert len(piv) == rank(A)
    for r, c in enumerate(piv):
        col = R.a[:, c]
        assert col[r] == 1 and sum(1 for v in col if v != 0) == 1
        assert all(v == 0 for v in R.a[r, :c])
    assert all(v == 0 for v in R.a[len(piv):].ravel())


@given(st.integers(0, 2**32 - 1))
def test_gf2_fast_path_matches_generic(seed):
    rng = np.random.default_rng(seed)
    r, c = (int(x) for x in rng.integers(1, 70, size=2))
    a = rng.integers(0, 2, size=(r, c)).astype(np.int64)
    R1, p1 = _rref_gf2(a)
    R2, p2 = _rref_generic(GF2, a)
    assert p1 == p2
    assert np.array_equal(R1, R2)


@given(field_and_seed)
def test_kernel_and_image(fs):
    F, seed = fs
    A = rand_matrix(F, seed)
    K = kernel_basis(A)
    assert K.cols == A.cols - rank(A)
    assert (A @ K).is_zero()
    assert rank(K) == K.cols
    I = image_basis(A)
    assert I.cols == rank(A) == rank(I)


@given(field_and_seed, st.integers(0, 2**32 - 1))
def test_solve_affine(fs, seed2):
    F, seed = fs
    A = rand_matrix(F, seed)
    rng = np.random.default_rng(seed2)
    x0 = Matrix(F, rng.integers(0, 2, size=(A.cols, 1)).astype(object)) if A.cols else Matrix.zeros(F, 0, 1)
    b = A @ x0
    sol = solve_affine(A, b)
    assert sol is not None
    assert A @ sol.x == b
    assert (A @ sol.kernel).is_zero()
    # perturb b outside the column space when that is possible
    if A.rows and rank(A) < A.rows:
        for k in range(A.rows):
            e = Matrix.zeros(F, A.rows, 1).a.copy()
            e[k, 0] = F.scalar(1)
            e = Matrix(F, e)
            if rank(Matrix.hstack(F, A.rows, [A, e])) > rank(A):
                assert solve_affine(A, b + e) is None
                break


@given(field_and_seed)
def test_left_inverse_and_quotient(fs):
    F, seed = fs
    A = rand_matrix(F, seed)
    W = image_basis(A)
    if W.cols:
        L = left_inverse(W)
        assert L @ W == Matrix.identity(F, W.cols)
    P, S = quotient_basis(A.rows, A)
    assert P @ S == Matrix.identity(F, A.rows - rank(A))
    assert (P @ A).is_zero()


@given(field_and_seed, st.integers(0, 2**32 - 1))
def test_eliminator_matches_dense(fs, seed2):
    F, seed = fs
    A = rand_matrix(F, seed, max_rows=8, max_cols=7)
    rng = np.random.default_rng(seed2)
    hi = 2 if F.p is None else F.p
    b = Matrix(F, rng.integers(0, hi, size=(A.rows, 1)).astype(object)) if A.rows else Matrix.zeros(F, 0, 1)
    el = Eliminator(F, A.cols, track=True)
    for r in range(A.rows):
        el.add_row({c: A.a[r, c] for c in range(A.cols) if A.a[r, c] != 0}, b.a[r, 0])
    dense = solve_affine(A, b)
    assert (dense is None) == el.inconsistent
    _, piv = rref(A)
    if dense is not None:
        assert el.pivots() == piv
        x = el.solution()
        assert [F.scalar(v) for v in x] == [F.scalar(v) for v in dense.x.a[:, 0]]
        assert len(el.kernel_vectors()) == A.cols - len(piv)
    else:
        y = el.certificate
        yA = [F.scalar(sum(F.scalar(v) * A.a[k, c] for k, v in y.items())) for c in range(A.cols)]
        yb = F.scalar(sum(F.scalar(v) * b.a[k, 0] for k, v in y.items()))
        assert all(v == 0 for v in yA) and yb == 1


def test_eliminator_gf2_sparse_rows():
    el = Eliminator(GF2, 3)
    el.add_sparse_gf2(0b0011)  # x0 + x1 = 0
    el.add_sparse_gf2(0b1110)  # x1 + x2 = 1
    assert not el.inconsistent
    assert el.solution() == [1, 1, 0]
    el.add_sparse_gf2(0b1101)  # x0 + x2 = 1 (consistent)
    el.add_sparse_gf2(0b1000)  # 0 = 1
    assert el.inconsistent


@given(st.sampled_from(FIELDS), st.integers(0, 2**32 - 1))
def test_matrix_product_associative(F, seed):
    rng = np.random.default_rng(seed)
    n, m, k, l = (int(x) for x in rng.integers(0, 4, size=4))
    hi = 3 if F.p is None else F.p
    mk = lambda r, c: Matrix(F, rng.integers(0, hi, size=(r, c)).astype(object)) if r and c else Matrix.zeros(F, r, c)
    A, B, C = mk(n, m), mk(m, k), mk(k, l)
    assert (A @ B) @ C == A @ (B @ C)
    assert A + A.scale(-1) == Matrix.zeros(F, n, m)
