"""Exact scalars and dense matrices over a prime field F_p or the rationals.

Matrices wrap a 2-D numpy array: ``int64`` residues for small primes, Python
objects (``int`` for huge primes, ``Fraction`` for Q) otherwise.  Nothing here
ever touches floating point.

Two elimination engines live in this module:

* a dense reduced-row-echelon routine used for the small per-degree matrices
  (rank, kernels, images, quotients, ``solve_affine``);
* :class:`Eliminator`, an incremental sparse engine for the large affine
  systems the lifting solvers assemble.  Over F_2 rows are Python ints used as
  bit sets.

Both use the same pivot rule (leftmost column, then topmost row) and report
the solution with every free variable set to zero, so witnesses agree no
matter which engine produced them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Field",
    "GF2",
    "QQ",
    "Matrix",
    "ShapeError",
    "AffineSolution",
    "Eliminator",
    "rank",
    "rref",
    "solve_affine",
    "kernel_basis",
    "image_basis",
    "quotient_basis",
    "left_inverse",
    "is_prime",
]

# Residues below this bound fit int64 matmuls with plenty of headroom.
_INT64_PRIME_BOUND = 1 << 20


class ShapeError(ValueError):
    """Matrix or complex dimensions do not fit together."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class Field:
    """The ground field: ``Field(p)`` is F_p, ``Field(None)`` is Q."""

    p: int | None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
                raise ValueError(f"{self.p!r} is not a prime")
            object.__setattr__(self, "p", int(self.p))

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls(p)

    @classmethod
    def rational(cls) -> Field:
        return cls(None)

    @classmethod
    def parse(cls, spec) -> Field:
        """Accept ``2``, ``"5"``, ``"Q"``/``"QQ"``/``0`` for the rationals."""
        if isinstance(spec, str):
            s = spec.strip()
            if s.upper() in ("Q", "QQ", "RATIONAL", "RATIONALS", "0"):
                return cls(None)
            if s.upper().startswith("F") or s.upper().startswith("GF"):
                s = s.upper().lstrip("GF").lstrip("_")
            return cls(int(s))
        if spec is None or spec == 0:
            return cls(None)
        return cls(int(spec))

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def dtype(self):
        if self.p is not None and self.p < _INT64_PRIME_BOUND:
            return np.int64
        return object

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def descriptor(self):
        return "Q" if self.p is None else self.p

    # -- scalars ---------------------------------------------------------

    def scalar(self, x):
        """Canonical form of a scalar (accepts ints, Fractions, "a/b")."""
        if self.p is None:
            if isinstance(x, str):
                return Fraction(x.strip())
            return Fraction(x)
        if isinstance(x, Fraction) or isinstance(x, str):
            q = Fraction(x)
            num = q.numerator % self.p
            den = q.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(x)
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def sign(self, k: int):
        """(-1)^k as a field scalar."""
        return self.scalar(-1 if k % 2 else 1)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.p is None:
            return arr
        return arr % self.p

    def array(self, data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.ndim == 2:
            raw = data
        else:
            rows_list = [list(r) for r in data] if data is not None else []
            if rows is None:
                rows = len(rows_list)
            if cols is None:
                cols = len(rows_list[0]) if rows_list else 0
            if len(rows_list) != rows or any(len(r) != cols for r in rows_list):
                raise ShapeError(f"expected a {rows}x{cols} array")
            raw = np.empty((rows, cols), dtype=object)
            for a, r in enumerate(rows_list):
                for b, v in enumerate(r):
                    raw[a, b] = v
        if rows is not None and cols is not None and raw.shape != (rows, cols):
            raise ShapeError(f"expected shape {(rows, cols)}, got {raw.shape}")
        return self._canonical(raw)

    def _canonical(self, raw: np.ndarray) -> np.ndarray:
        if self.p is None:
            out = np.empty(raw.shape, dtype=object)
            flat_in = raw.ravel()
            flat_out = out.ravel()
            for k in range(flat_in.size):
                flat_out[k] = self.scalar(flat_in[k])
            return out
        if self.dtype is np.int64:
            if raw.dtype == object:
                out = np.empty(raw.shape, dtype=np.int64)
                flat_in = raw.ravel()
                flat_out = out.ravel()
                for k in range(flat_in.size):
                    flat_out[k] = self.scalar(flat_in[k])
                return out
            return np.asarray(raw, dtype=np.int64) % self.p
        out = np.empty(raw.shape, dtype=object)
        flat_in = raw.ravel()
        flat_out = out.ravel()
        for k in range(flat_in.size):
            flat_out[k] = self.scalar(flat_in[k])
        return out

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.dtype is np.int64:
            return np.zeros((rows, cols), dtype=np.int64)
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0) if self.p is None else 0)
        return out

    def to_json(self, x):
        if self.p is None:
            q = Fraction(x)
            return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        return int(x)


GF2 = Field(2)
QQ = Field(None)


class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "a")

    def __init__(self, field: Field, data, rows: int | None = None, cols: int | None = None):
        self.field = field
        a = field.array(data, rows, cols)
        a.flags.writeable = False
        self.a = a

    @classmethod
    def _wrap(cls, field: Field, a: np.ndarray) -> Matrix:
        m = object.__new__(cls)
        m.field = field
        if a.dtype != field.dtype:
            a = field.array(a)
        a.flags.writeable = False
        m.a = a
        return m

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Matrix:
        return cls._wrap(field, field.zeros(rows, cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        a = field.zeros(n, n)
        for k in range(n):
            a[k, k] = field.scalar(1)
        return cls._wrap(field, a)

    @classmethod
    def column(cls, field: Field, values: Sequence) -> Matrix:
        return cls(field, [[v] for v in values], len(values), 1)

    @classmethod
    def hstack(cls, field: Field, rows: int, blocks: Sequence[Matrix]) -> Matrix:
        blocks = [b for b in blocks]
        for b in blocks:
            if b.rows != rows:
                raise ShapeError(f"hstack: block has {b.rows} rows, expected {rows}")
        if not blocks:
            return cls.zeros(field, rows, 0)
        return cls._wrap(field, np.hstack([b.a for b in blocks]))

    @classmethod
    def vstack(cls, field: Field, cols: int, blocks: Sequence[Matrix]) -> Matrix:
        blocks = [b for b in blocks]
        for b in blocks:
            if b.cols != cols:
                raise ShapeError(f"vstack: block has {b.cols} cols, expected {cols}")
        if not blocks:
            return cls.zeros(field, 0, cols)
        return cls._wrap(field, np.vstack([b.a for b in blocks]))

    @classmethod
    def block(cls, field: Field, row_dims: Sequence[int], col_dims: Sequence[int], blocks) -> Matrix:
        """Assemble from a dict ``{(r, c): Matrix}``; missing blocks are zero."""
        a = field.zeros(sum(row_dims), sum(col_dims))
        roff = np.concatenate([[0], np.cumsum(row_dims)]).astype(int)
        coff = np.concatenate([[0], np.cumsum(col_dims)]).astype(int)
        for (r, c), m in blocks.items():
            if m.shape != (row_dims[r], col_dims[c]):
                raise ShapeError(f"block {(r, c)} has shape {m.shape}, expected {(row_dims[r], col_dims[c])}")
            a[roff[r]:roff[r + 1], coff[c]:coff[c + 1]] = m.a
        return cls._wrap(field, a)

    # -- basic protocol --------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def T(self) -> Matrix:
        return Matrix._wrap(self.field, self.a.T.copy())

    def __repr__(self):
        return f"Matrix({self.field}, {self.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.all(self.a == other.a))

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.entries())))

    def __getitem__(self, key):
        if isinstance(key, tuple) and all(isinstance(k, (int, np.integer)) for k in key):
            return self.a[key]
        sub = self.a[key]
        if sub.ndim != 2:
            raise IndexError("use two slices to take a submatrix")
        return Matrix._wrap(self.field, sub.copy())

    def entries(self) -> list:
        return list(self.a.ravel())

    def tolist(self) -> list[list]:
        return [[self.field.to_json(v) for v in row] for row in self.a]

    def is_zero(self) -> bool:
        return not np.any(self.a != 0)

    def _check_field(self, other: Matrix):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap(self.field, self.field.reduce(self.a + other.a))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._wrap(self.field, self.field.reduce(self.a - other.a))

    def __neg__(self) -> Matrix:
        return Matrix._wrap(self.field, self.field.reduce(-self.a))

    def scale(self, c) -> Matrix:
        c = self.field.scalar(c)
        return Matrix._wrap(self.field, self.field.reduce(self.a * c))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix._wrap(self.field, self.field.reduce(self.a @ other.a))


# ----------------------------------------------------------------------
# dense elimination


def _rref_gf2(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows, cols = a.shape
    nbytes = (cols + 7) // 8
    packed = np.packbits(a.astype(np.uint8), axis=1, bitorder="little")
    R = [int.from_bytes(packed[k].tobytes(), "little") for k in range(rows)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        bit = 1 << c
        k = next((k for k in range(r, rows) if R[k] & bit), None)
        if k is None:
            continue
        R[r], R[k] = R[k], R[r]
        pr = R[r]
        for j in range(rows):
            if j != r and R[j] & bit:
                R[j] ^= pr
        pivots.append(c)
        r += 1
    buf = np.frombuffer(b"".join(x.to_bytes(nbytes, "little") for x in R), dtype=np.uint8)
    out = np.unpackbits(buf.reshape(rows, nbytes), axis=1, bitorder="little")[:, :cols]
    return out.astype(a.dtype), pivots


def _rref_array(field: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    if field.p == 2 and a.size:
        return _rref_gf2(a)
    return _rref_generic(field, a)


def _rref_generic(field: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    R = a.copy()
    if R.dtype == object:
        R = R.copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c] != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = field.inv(R[r, c])
        R[r] = field.reduce(R[r] * inv)
        col = R[:, c].copy()
        col[r] = 0
        if np.any(col != 0):
            R = field.reduce(R - np.outer(col, R[r]))
        pivots.append(c)
        r += 1
    return R, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R, piv = _rref_array(m.field, m.a)
    return Matrix._wrap(m.field, R), piv


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref_array(m.field, m.a)[1])


def _kernel_from_rref(field: Field, R: np.ndarray, pivots: list[int], cols: int) -> np.ndarray:
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    K = field.zeros(cols, len(free))
    for j, fc in enumerate(free):
        K[fc, j] = field.scalar(1)
        for r, pc in enumerate(pivots):
            K[pc, j] = field.scalar(-R[r, fc])
    return K


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of ker m, one vector per column (one per free column of the RREF)."""
    R, piv = _rref_array(m.field, m.a)
    return Matrix._wrap(m.field, _kernel_from_rref(m.field, R, piv, m.cols))


def image_basis(m: Matrix) -> Matrix:
    """The pivot columns of m: a basis of its column space."""
    _, piv = _rref_array(m.field, m.a)
    return Matrix._wrap(m.field, m.a[:, piv].copy())


@dataclass(frozen=True)
class AffineSolution:
    """One solution ``x`` of A x = b (free variables zero) plus a basis of ker A."""

    x: Matrix
    kernel: Matrix


def solve_affine(A: Matrix, b: Matrix) -> AffineSolution | None:
    """Solve A x = b; ``None`` when inconsistent.  ``b`` may have several columns."""
    if b.rows != A.rows:
        raise ShapeError(f"right-hand side has {b.rows} rows, system has {A.rows}")
    field = A.field
    aug = np.hstack([A.a, b.a]) if A.rows else field.zeros(0, A.cols + b.cols)
    R, piv = _rref_array(field, aug)
    if any(c >= A.cols for c in piv):
        return None
    x = field.zeros(A.cols, b.cols)
    for r, c in enumerate(piv):
        x[c] = R[r, A.cols:]
    kern = _kernel_from_rref(field, R[:, :A.cols], piv, A.cols)
    return AffineSolution(Matrix._wrap(field, x), Matrix._wrap(field, kern))


def left_inverse(basis: Matrix) -> Matrix:
    """L with L @ basis = identity, for a matrix with independent columns."""
    field = basis.field
    n, k = basis.shape
    # Solve basis^T L^T = I restricted to a row basis: pick pivot rows.
    R, piv = _rref_array(field, basis.a.T.copy())
    if len(piv) != k:
        raise ValueError("columns are not independent")
    sub = Matrix._wrap(field, basis.a[piv, :].copy())
    sol = solve_affine(sub, Matrix.identity(field, k))
    assert sol is not None
    L = field.zeros(k, n)
    L[:, piv] = sol.x.a
    return Matrix._wrap(field, L)


def quotient_basis(ambient_dim: int, generators: Matrix) -> tuple[Matrix, Matrix]:
    """Projection onto k^n / span(generators) and a section of it.

    The complement is spanned by the standard basis vectors picked greedily in
    index order.  Returns ``(projection, section)`` with
    ``projection @ section == I`` and ``projection @ generators == 0``.
    """
    field = generators.field
    if generators.rows != ambient_dim:
        raise ShapeError(f"generators have {generators.rows} rows, ambient dimension is {ambient_dim}")
    W = image_basis(generators) if generators.cols else Matrix.zeros(field, ambient_dim, 0)
    w = W.cols
    eye = Matrix.identity(field, ambient_dim)
    _, piv = _rref_array(field, np.hstack([W.a, eye.a]))
    chosen = [c - w for c in piv if c >= w]
    section = Matrix._wrap(field, eye.a[:, chosen].copy())
    T = Matrix.hstack(field, ambient_dim, [W, section])
    sol = solve_affine(T, eye)
    assert sol is not None, "complement construction failed"
    projection = Matrix._wrap(field, sol.x.a[w:, :].copy())
    return projection, section


# ----------------------------------------------------------------------
# sparse incremental elimination


class Eliminator:
    """Incremental echelon basis for a large affine system.

    Rows are added one at a time and reduced against the rows kept so far.
    Each kept row has a distinct leading (lowest) column; the set of leading
    columns is therefore the pivot set of the reduced row echelon form, and
    back-substitution with free variables zero yields the same solution as a
    dense RREF would.

    With ``track=True`` each kept row remembers which input rows it combines,
    so an inconsistent system yields a dual certificate ``y`` with
    ``y A = 0`` and ``y b = 1``.
    """

    def __init__(self, field: Field, ncols: int, track: bool = False):
        self.field = field
        self.n = ncols
        self.track = track
        self.nrows = 0
        self.inconsistent = False
        self.certificate: dict[int, object] | None = None
        self._gf2 = field.p == 2
        self._basis: dict[int, object] = {}
        self._tags: dict[int, object] = {}

    # row formats: GF(2) -> int bitmask with rhs at bit n; otherwise
    # dict col -> nonzero scalar with rhs under key n.

    def add_dense(self, coeffs: np.ndarray, rhs: np.ndarray) -> None:
        """Add rows ``coeffs @ x = rhs`` given as canonical dense arrays."""
        if coeffs.shape[0] == 0:
            return
        if self._gf2:
            aug = np.zeros((coeffs.shape[0], self.n + 1), dtype=np.uint8)
            aug[:, : coeffs.shape[1]] = coeffs
            aug[:, self.n] = rhs
            packed = np.packbits(aug, axis=1, bitorder="little")
            for k in range(packed.shape[0]):
                self._insert_gf2(int.from_bytes(packed[k].tobytes(), "little"))
            return
        for k in range(coeffs.shape[0]):
            nz = np.flatnonzero(coeffs[k] != 0)
            row = {int(c): coeffs[k, c] for c in nz}
            if rhs[k] != 0:
                row[self.n] = rhs[k]
            self._insert_generic(row)

    def add_sparse_gf2(self, row: int) -> None:
        self._insert_gf2(row)

    def add_row(self, row: dict[int, object], rhs=0) -> None:
        """Add one equation given as ``{column: coefficient}``."""
        if self._gf2:
            bits = 0
            for c, v in row.items():
                if int(v) % 2:
                    bits ^= 1 << c
            if int(rhs) % 2:
                bits ^= 1 << self.n
            self._insert_gf2(bits)
            return
        f = self.field
        out = {}
        for c, v in row.items():
            v = f.scalar(v)
            if v != 0:
                out[c] = v
        rhs = f.scalar(rhs)
        if rhs != 0:
            out[self.n] = rhs
        self._insert_generic(out)

    def _insert_gf2(self, row: int) -> None:
        idx = self.nrows
        self.nrows += 1
        if row == 0:
            return
        tag = (1 << idx) if self.track else 0
        basis = self._basis
        n = self.n
        while row:
            low = row & -row
            c = low.bit_length() - 1
            if c >= n:
                self._mark_inconsistent({k: 1 for k in _bits(tag)} if self.track else None)
                return
            piv = basis.get(c)
            if piv is None:
                basis[c] = row
                if self.track:
                    self._tags[c] = tag
                return
            row ^= piv
            if self.track:
                tag ^= self._tags[c]

    def _insert_generic(self, row: dict) -> None:
        idx = self.nrows
        self.nrows += 1
        if not row:
            return
        f = self.field
        p = f.p
        tag = {idx: f.scalar(1)} if self.track else None
        basis = self._basis
        n = self.n
        while row:
            c = min(row)
            if c >= n:
                if self.track:
                    inv = f.inv(row[c])
                    cert = {}
                    for k, v in tag.items():
                        w = v * inv
                        w = w % p if p is not None else w
                        if w != 0:
                            cert[k] = w
                    self._mark_inconsistent(cert)
                else:
                    self._mark_inconsistent(None)
                return
            lead = row[c]
            piv = basis.get(c)
            if piv is None:
                inv = f.inv(lead)
                norm = {}
                for k, v in row.items():
                    w = v * inv
                    if p is not None:
                        w %= p
                    norm[k] = w
                basis[c] = norm
                if self.track:
                    t = {}
                    for k, v in tag.items():
                        w = v * inv
                        if p is not None:
                            w %= p
                        if w != 0:
                            t[k] = w
                    self._tags[c] = t
                return
            # row -= lead * piv (piv is normalised with leading 1)
            for k, v in piv.items():
                w = row.get(k, 0) - lead * v
                if p is not None:
                    w %= p
                if w == 0:
                    row.pop(k, None)
                else:
                    row[k] = w
            if self.track:
                for k, v in self._tags[c].items():
                    w = tag.get(k, 0) - lead * v
                    if p is not None:
                        w %= p
                    if w == 0:
                        tag.pop(k, None)
                    else:
                        tag[k] = w

    def _mark_inconsistent(self, cert):
        if not self.inconsistent:
            self.inconsistent = True
            self.certificate = cert

    @property
    def rank(self) -> int:
        return len(self._basis)

    def pivots(self) -> list[int]:
        return sorted(self._basis)

    def free_columns(self) -> list[int]:
        piv = self._basis
        return [c for c in range(self.n) if c not in piv]

    def solution(self, free_values: dict[int, object] | None = None) -> list | None:
        """Back-substitute; free variables take ``free_values`` (default zero)."""
        if self.inconsistent:
            return None
        f = self.field
        n = self.n
        if self._gf2:
            x = 0
            if free_values:
                for c, v in free_values.items():
                    if int(v) % 2 and c not in self._basis:
                        x |= 1 << c
            mask_vars = (1 << n) - 1
            for c in sorted(self._basis, reverse=True):
                row = self._basis[c]
                rhs = (row >> n) & 1
                rest = row & mask_vars & ~(1 << c)
                val = rhs ^ ((rest & x).bit_count() & 1)
                if val:
                    x |= 1 << c
            return [(x >> c) & 1 for c in range(n)]
        p = f.p
        zero = f.scalar(0)
        x = [zero] * n
        if free_values:
            for c, v in free_values.items():
                if c not in self._basis:
                    x[c] = f.scalar(v)
        for c in sorted(self._basis, reverse=True):
            row = self._basis[c]
            val = row.get(n, zero)
            for k, v in row.items():
                if k == c or k == n:
                    continue
                val = val - v * x[k]
            if p is not None:
                val %= p
            x[c] = val
        return x

    def kernel_vectors(self) -> list[list]:
        """Basis of the solution space of the homogeneous system."""
        out = []
        saved = self.inconsistent
        self.inconsistent = False
        try:
            for fc in self.free_columns():
                out.append(self._homogeneous({fc: 1}))
        finally:
            self.inconsistent = saved
        return out

    def _homogeneous(self, free_values):
        f = self.field
        n = self.n
        if self._gf2:
            x = 0
            for c, v in free_values.items():
                if int(v) % 2:
                    x |= 1 << c
            mask_vars = (1 << n) - 1
            for c in sorted(self._basis, reverse=True):
                rest = self._basis[c] & mask_vars & ~(1 << c)
                if (rest & x).bit_count() & 1:
                    x |= 1 << c
            return [(x >> c) & 1 for c in range(n)]
        p = f.p
        zero = f.scalar(0)
        x = [zero] * n
        for c, v in free_values.items():
            x[c] = f.scalar(v)
        for c in sorted(self._basis, reverse=True):
            val = zero
            for k, v in self._basis[c].items():
                if k == c or k == n:
                    continue
                val = val - v * x[k]
            if p is not None:
                val %= p
            x[c] = val
        return x


def _bits(x: int) -> Iterable[int]:
    k = 0
    while x:
        if x & 1:
            yield k
        x >>= 1
        k += 1
