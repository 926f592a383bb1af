"""Bounded chain complexes of finite-dimensional vector spaces.

Homological grading: ``d[n]`` maps degree ``n`` to degree ``n - 1`` and is
stored as a ``dims(n-1) x dims(n)`` matrix.  The model structure used
throughout the package:

* weak equivalences are quasi-isomorphisms,
* fibrations are degreewise surjections,
* cofibrations are degreewise injections.

Every object is then fibrant and cofibrant.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping

from .exactlin import Field, Matrix, ShapeError, image_basis, kernel_basis, quotient_basis, rank, solve_affine

__all__ = [
    "ChainComplex",
    "ChainMap",
    "AlgebraicHomotopy",
    "Homology",
    "zero_complex",
    "sphere",
    "disk",
    "validate",
    "validate_map",
    "validate_homotopy",
    "homology",
    "induced_on_homology",
    "is_quasi_iso",
    "is_cofibration",
    "is_fibration",
    "is_acyclic_cofibration",
    "is_acyclic_fibration",
    "compose",
    "identity",
    "zero_map",
    "direct_sum",
    "shift",
    "inclusion",
    "projection",
    "pair",
    "copair",
    "map_sum",
    "add_maps",
    "mapping_cone",
    "degrees",
]


class ChainComplex:
    """A finitely supported chain complex over ``field``.

    ``dims`` maps degree -> dimension (zero entries are dropped) and ``d`` maps
    degree ``n`` -> the differential out of degree ``n``.  Shapes are checked
    on construction; ``d∘d = 0`` is checked by :func:`validate` so that
    malformed input can still be represented and reported.
    """

    __slots__ = ("field", "dims", "d", "_key")

    def __init__(self, field: Field, dims: Mapping[int, int], d: Mapping[int, Matrix] | None = None):
        self.field = field
        clean = {}
        for n, k in dims.items():
            n, k = int(n), int(k)
            if k < 0:
                raise ShapeError(f"negative dimension {k} in degree {n}")
            if k:
                clean[n] = k
        self.dims = dict(sorted(clean.items()))
        diffs = {}
        for n, m in (d or {}).items():
            n = int(n)
            if m.field != field:
                raise ValueError(f"differential in degree {n} is over {m.field}, complex over {field}")
            want = (self.dim(n - 1), self.dim(n))
            if m.shape != want:
                raise ShapeError(f"differential d_{n} has shape {m.shape}, expected {want}")
            if m.rows and m.cols and not m.is_zero():
                diffs[n] = m
        self.d = dict(sorted(diffs.items()))
        self._key = None

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def diff(self, n: int) -> Matrix:
        m = self.d.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.dim(n - 1), self.dim(n))
        return m

    @property
    def lo(self) -> int | None:
        return next(iter(self.dims), None)

    @property
    def hi(self) -> int | None:
        return next(reversed(self.dims), None) if self.dims else None

    def support(self) -> range:
        if not self.dims:
            return range(0)
        return range(self.lo, self.hi + 1)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return not self.dims

    def key(self):
        if self._key is None:
            self._key = (
                self.field,
                tuple(self.dims.items()),
                tuple((n, tuple(m.entries())) for n, m in self.d.items()),
            )
        return self._key

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self is other or self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ChainComplex({self.field}, dims={self.dims})"


def degrees(*complexes: ChainComplex) -> range:
    """The union of the support windows, padded by one on each side."""
    los = [c.lo for c in complexes if c.dims]
    his = [c.hi for c in complexes if c.dims]
    if not los:
        return range(0)
    return range(min(los) - 1, max(his) + 2)


def zero_complex(field: Field) -> ChainComplex:
    return ChainComplex(field, {})


def sphere(field: Field, n: int = 0) -> ChainComplex:
    """One copy of the field in degree ``n``."""
    return ChainComplex(field, {n: 1})


def disk(field: Field, n: int = 1) -> ChainComplex:
    """The field in degrees ``n`` and ``n - 1`` joined by the identity."""
    return ChainComplex(field, {n: 1, n - 1: 1}, {n: Matrix.identity(field, 1)})


def validate(c: ChainComplex) -> list[str]:
    """Return a list of violations (empty when ``c`` is a valid complex)."""
    problems = []
    for n in c.support():
        dd = c.diff(n - 1) @ c.diff(n)
        if not dd.is_zero():
            problems.append(f"d_{n - 1} ∘ d_{n} ≠ 0 (degree {n})")
    return problems


class ChainMap:
    """Degree-0 map; ``components[n]`` is ``target.dim(n) x source.dim(n)``."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: ChainComplex, target: ChainComplex, components: Mapping[int, Matrix] | None = None):
        if source.field != target.field:
            raise ValueError("source and target live over different fields")
        self.source = source
        self.target = target
        comps = {}
        for n, m in (components or {}).items():
            n = int(n)
            want = (target.dim(n), source.dim(n))
            if m.shape != want:
                raise ShapeError(f"component in degree {n} has shape {m.shape}, expected {want}")
            if m.rows and m.cols and not m.is_zero():
                comps[n] = m
        self.components = dict(sorted(comps.items()))

    @property
    def field(self) -> Field:
        return self.source.field

    def comp(self, n: int) -> Matrix:
        m = self.components.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.target.dim(n), self.source.dim(n))
        return m

    def degrees(self) -> range:
        return degrees(self.source, self.target)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source.dims != other.source.dims or self.target.dims != other.target.dims:
            return False
        return all(self.comp(n) == other.comp(n) for n in self.source.dims if self.target.dim(n))

    def __hash__(self):
        return hash((tuple(self.source.dims.items()), tuple(self.target.dims.items())))

    def __matmul__(self, other: ChainMap) -> ChainMap:
        return compose(self, other)

    def __add__(self, other: ChainMap) -> ChainMap:
        return add_maps(self, other)

    def __sub__(self, other: ChainMap) -> ChainMap:
        return add_maps(self, other.scale(-1))

    def scale(self, c) -> ChainMap:
        return ChainMap(self.source, self.target, {n: m.scale(c) for n, m in self.components.items()})

    def is_zero(self) -> bool:
        return not self.components

    def __repr__(self):
        return f"ChainMap({self.source.dims} -> {self.target.dims})"


def validate_map(f: ChainMap) -> list[str]:
    problems = []
    for n in f.degrees():
        lhs = f.target.diff(n) @ f.comp(n)
        rhs = f.comp(n - 1) @ f.source.diff(n)
        if lhs != rhs:
            problems.append(f"chain-map square fails in degree {n}")
    return problems


def identity(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {n: Matrix.identity(c.field, k) for n, k in c.dims.items()})


def zero_map(source: ChainComplex, target: ChainComplex) -> ChainMap:
    return ChainMap(source, target, {})


def compose(f: ChainMap, g: ChainMap) -> ChainMap:
    """``f ∘ g`` (apply ``g`` first)."""
    if g.target.dims != f.source.dims:
        raise ShapeError(f"cannot compose: {g.target.dims} vs {f.source.dims}")
    comps = {}
    for n in g.components:
        fn = f.components.get(n)
        if fn is not None:
            comps[n] = fn @ g.components[n]
    return ChainMap(g.source, f.target, comps)


def add_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    if f.source.dims != g.source.dims or f.target.dims != g.target.dims:
        raise ShapeError("cannot add maps with different source/target")
    comps = dict(f.components)
    for n, m in g.components.items():
        comps[n] = comps[n] + m if n in comps else m
    return ChainMap(f.source, f.target, comps)


# -- homotopies ------------------------------------------------------------


class AlgebraicHomotopy:
    """``s`` with ``d s + s d = to - from``; ``components[n]: S_n -> T_{n+1}``."""

    __slots__ = ("start", "end", "components")

    def __init__(self, start: ChainMap, end: ChainMap, components: Mapping[int, Matrix] | None = None):
        if start.source.dims != end.source.dims or start.target.dims != end.target.dims:
            raise ShapeError("homotopy endpoints must share source and target")
        self.start = start
        self.end = end
        comps = {}
        for n, m in (components or {}).items():
            n = int(n)
            want = (start.target.dim(n + 1), start.source.dim(n))
            if m.shape != want:
                raise ShapeError(f"homotopy component {n} has shape {m.shape}, expected {want}")
            if m.rows and m.cols and not m.is_zero():
                comps[n] = m
        self.components = dict(sorted(comps.items()))

    @property
    def source(self) -> ChainComplex:
        return self.start.source

    @property
    def target(self) -> ChainComplex:
        return self.start.target

    def comp(self, n: int) -> Matrix:
        m = self.components.get(n)
        if m is None:
            return Matrix.zeros(self.source.field, self.target.dim(n + 1), self.source.dim(n))
        return m


def validate_homotopy(s: AlgebraicHomotopy) -> list[str]:
    problems = []
    S, T = s.source, s.target
    for n in degrees(S, T):
        lhs = T.diff(n + 1) @ s.comp(n) + s.comp(n - 1) @ S.diff(n)
        rhs = s.end.comp(n) - s.start.comp(n)
        if lhs != rhs:
            problems.append(f"d s + s d ≠ to - from in degree {n}")
    return problems


# -- homology and model-structure predicates --------------------------------


@dataclass(frozen=True)
class Homology:
    """``H_n`` as its dimension and cycle representatives (columns of ``basis``)."""

    degree: int
    dim: int
    basis: Matrix
    boundaries: Matrix = dc_field(repr=False)


def homology(c: ChainComplex, n: int) -> Homology:
    F = c.field
    cycles = kernel_basis(c.diff(n))
    bounds = image_basis(c.diff(n + 1))
    if cycles.cols == 0:
        return Homology(n, 0, Matrix.zeros(F, c.dim(n), 0), bounds)
    # Express boundaries in cycle coordinates, then take a complement there.
    coords = solve_affine(cycles, bounds)
    assert coords is not None, "boundaries are not cycles"
    proj, sect = quotient_basis(cycles.cols, coords.x)
    reps = cycles @ sect
    return Homology(n, reps.cols, reps, bounds)


def induced_on_homology(f: ChainMap, n: int) -> Matrix:
    """Matrix of ``H_n(f)`` in the bases chosen by :func:`homology`."""
    hs = homology(f.source, n)
    ht = homology(f.target, n)
    F = f.field
    if hs.dim == 0 or ht.dim == 0:
        return Matrix.zeros(F, ht.dim, hs.dim)
    basis = Matrix.hstack(F, f.target.dim(n), [ht.boundaries, ht.basis])
    sol = solve_affine(basis, f.comp(n) @ hs.basis)
    assert sol is not None, "image of a cycle is not a cycle"
    return sol.x[ht.boundaries.cols:, :]


def is_quasi_iso(f: ChainMap) -> bool:
    for n in degrees(f.source, f.target):
        m = induced_on_homology(f, n)
        if m.rows != m.cols or rank(m) != m.rows:
            return False
    return True


def is_cofibration(f: ChainMap) -> bool:
    return all(rank(f.comp(n)) == f.source.dim(n) for n in f.source.dims)


def is_fibration(f: ChainMap) -> bool:
    return all(rank(f.comp(n)) == f.target.dim(n) for n in f.target.dims)


def is_acyclic_cofibration(f: ChainMap) -> bool:
    return is_cofibration(f) and is_quasi_iso(f)


def is_acyclic_fibration(f: ChainMap) -> bool:
    return is_fibration(f) and is_quasi_iso(f)


# -- sums, shifts, cones ------------------------------------------------------


def direct_sum(c1: ChainComplex, c2: ChainComplex) -> ChainComplex:
    F = c1.field
    dims = {n: c1.dim(n) + c2.dim(n) for n in set(c1.dims) | set(c2.dims)}
    d = {}
    for n in set(c1.d) | set(c2.d):
        d[n] = Matrix.block(
            F,
            [c1.dim(n - 1), c2.dim(n - 1)],
            [c1.dim(n), c2.dim(n)],
            {(0, 0): c1.diff(n), (1, 1): c2.diff(n)},
        )
    return ChainComplex(F, dims, d)


def shift(c: ChainComplex, k: int) -> ChainComplex:
    """``c[k]_n = c_{n-k}`` with differential scaled by ``(-1)^k``."""
    sgn = c.field.sign(k)
    return ChainComplex(
        c.field,
        {n + k: v for n, v in c.dims.items()},
        {n + k: m.scale(sgn) for n, m in c.d.items()},
    )


def inclusion(c1: ChainComplex, c2: ChainComplex, which: int, total: ChainComplex | None = None) -> ChainMap:
    """Summand inclusion into ``c1 ⊕ c2`` (``which`` is 0 or 1)."""
    total = total or direct_sum(c1, c2)
    F = c1.field
    part = (c1, c2)[which]
    comps = {}
    for n, k in part.dims.items():
        comps[n] = Matrix.block(
            F, [c1.dim(n), c2.dim(n)], [k], {(which, 0): Matrix.identity(F, k)}
        )
    return ChainMap(part, total, comps)


def projection(c1: ChainComplex, c2: ChainComplex, which: int, total: ChainComplex | None = None) -> ChainMap:
    total = total or direct_sum(c1, c2)
    F = c1.field
    part = (c1, c2)[which]
    comps = {}
    for n, k in part.dims.items():
        comps[n] = Matrix.block(
            F, [k], [c1.dim(n), c2.dim(n)], {(0, which): Matrix.identity(F, k)}
        )
    return ChainMap(total, part, comps)


def pair(f: ChainMap, g: ChainMap, total: ChainComplex | None = None) -> ChainMap:
    """``(f, g): T -> X ⊕ Z``."""
    if f.source.dims != g.source.dims:
        raise ShapeError("pair: maps must share a source")
    total = total or direct_sum(f.target, g.target)
    F = f.field
    comps = {}
    for n in f.source.dims:
        comps[n] = Matrix.vstack(F, f.source.dim(n), [f.comp(n), g.comp(n)])
    return ChainMap(f.source, total, comps)


def copair(f: ChainMap, g: ChainMap, total: ChainComplex | None = None) -> ChainMap:
    """``[f, g]: B ⊕ C -> T``."""
    if f.target.dims != g.target.dims:
        raise ShapeError("copair: maps must share a target")
    total = total or direct_sum(f.source, g.source)
    F = f.field
    comps = {}
    for n in f.target.dims:
        comps[n] = Matrix.hstack(F, f.target.dim(n), [f.comp(n), g.comp(n)])
    return ChainMap(total, f.target, comps)


def map_sum(f: ChainMap, g: ChainMap, source: ChainComplex | None = None, target: ChainComplex | None = None) -> ChainMap:
    """``f ⊕ g: B ⊕ C -> X ⊕ Z``."""
    source = source or direct_sum(f.source, g.source)
    target = target or direct_sum(f.target, g.target)
    F = f.field
    comps = {}
    for n in set(source.dims) & set(target.dims):
        comps[n] = Matrix.block(
            F,
            [f.target.dim(n), g.target.dim(n)],
            [f.source.dim(n), g.source.dim(n)],
            {(0, 0): f.comp(n), (1, 1): g.comp(n)},
        )
    return ChainMap(source, target, comps)


def mapping_cone(f: ChainMap) -> ChainComplex:
    """``Cone(f)_n = S_{n-1} ⊕ T_n`` with ``d(s, t) = (-ds, fs + dt)``."""
    S, T = f.source, f.target
    F = f.field
    dims = {}
    for n in degrees(S, T):
        k = S.dim(n - 1) + T.dim(n)
        if k:
            dims[n] = k
    d = {}
    for n in dims:
        d[n] = Matrix.block(
            F,
            [S.dim(n - 2), T.dim(n - 1)],
            [S.dim(n - 1), T.dim(n)],
            {(0, 0): -S.diff(n - 1), (1, 0): f.comp(n - 1), (1, 1): T.diff(n)},
        )
    return ChainComplex(F, dims, d)


def is_acyclic(c: ChainComplex) -> bool:
    return all(
        rank(c.diff(n)) + rank(c.diff(n + 1)) == c.dim(n) for n in c.dims
    )


def total_homology(c: ChainComplex) -> dict[int, int]:
    return {n: homology(c, n).dim for n in c.support() if homology(c, n).dim}


def iter_degrees(maps: Iterable[ChainMap]) -> range:
    cs = []
    for m in maps:
        cs += [m.source, m.target]
    return degrees(*cs)
