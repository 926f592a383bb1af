"""Cylinders, path objects, pushouts, pullbacks and the factorizations built from them.

Conventions (any choice passing the package invariants would do; these are
fixed so that every induced map is reproducible):

* ``Cyl(B)_n = B_n ⊕ B_n ⊕ B_{n-1}`` is ``B`` tensored with the interval,
  ``d(b⊗e) = db⊗e + (-1)^{|b|} (b⊗[1] - b⊗[0])``.
* ``Cocyl(Y)_n = Y_n ⊕ Y_n ⊕ Y_{n+1}`` with
  ``d(y0, y1, z) = (dy0, dy1, dz + (-1)^n (y1 - y0))``.
* ``F(α)`` is the mapping cylinder of ``α`` glued along the 1-end, so ``c(α)``
  enters at the 0-end.
* ``C(α)`` is the mapping path object ``X ×_{α, ev0} Cocyl(Y)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import (
    AlgebraicHomotopy,
    ChainComplex,
    ChainMap,
    compose,
    copair,
    direct_sum,
    identity,
    inclusion,
    is_acyclic_cofibration,
    is_acyclic_fibration,
    is_cofibration,
    is_fibration,
    is_quasi_iso,
    map_sum,
    pair,
    validate,
    validate_map,
    zero_complex,
)
from .exactlin import Matrix, ShapeError, kernel_basis, left_inverse, quotient_basis

__all__ = [
    "NonCommutingError",
    "CylinderPackage",
    "CocylinderPackage",
    "Pushout",
    "Pullback",
    "FactorizationCofAFib",
    "FactorizationACofFib",
    "MappingCylinder",
    "DoubleMappingCylinder",
    "HomotopyPushout",
    "GapMap",
    "cylinder",
    "cylinder_map",
    "cocylinder",
    "homotopy_to_cylinder_map",
    "cylinder_map_to_homotopy",
    "pushout",
    "pullback",
    "factor_cof_afib",
    "factor_acof_fib",
    "mapping_cylinder_side",
    "double_mapping_cylinder",
    "homotopy_pushout",
    "gap_map",
]


class NonCommutingError(ValueError):
    """A square, cone or cocone submitted as commutative does not commute."""


def _structural(complexes=(), maps=()) -> list[str]:
    out = []
    for name, c in complexes:
        out += [f"{name}: {v}" for v in validate(c)]
    for name, m in maps:
        out += [f"{name}: {v}" for v in validate_map(m)]
    return out


def _require(out: list, ok: bool, msg: str) -> None:
    if not ok:
        out.append(msg)


# -- cylinder -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CylinderPackage:
    base: ChainComplex
    obj: ChainComplex
    i0: ChainMap
    i1: ChainMap
    pi: ChainMap

    def end(self, j: int) -> ChainMap:
        return self.i0 if j == 0 else self.i1

    def violations(self) -> list[str]:
        out = _structural([("Cyl", self.obj)], [("i0", self.i0), ("i1", self.i1), ("π", self.pi)])
        if out:
            return out
        ident = identity(self.base)
        _require(out, compose(self.pi, self.i0) == ident, "π∘i0 ≠ id")
        _require(out, compose(self.pi, self.i1) == ident, "π∘i1 ≠ id")
        ii = copair(self.i0, self.i1, direct_sum(self.base, self.base))
        _require(out, is_cofibration(ii), "(i0, i1): B ⊕ B -> Cyl(B) is not a cofibration")
        _require(out, is_acyclic_cofibration(self.i0), "i0 is not an acyclic cofibration")
        _require(out, is_acyclic_cofibration(self.i1), "i1 is not an acyclic cofibration")
        _require(out, is_quasi_iso(self.pi), "π is not a weak equivalence")
        return out


_CYL_CACHE: dict = {}


def cylinder(B: ChainComplex) -> CylinderPackage:
    key = B.key()
    hit = _CYL_CACHE.get(key)
    if hit is not None:
        return hit
    F = B.field
    dims = {}
    for n in range(B.lo, B.hi + 2) if B.dims else ():
        k = 2 * B.dim(n) + B.dim(n - 1)
        if k:
            dims[n] = k
    d = {}
    for n in dims:
        eps = F.sign(n - 1)
        d[n] = Matrix.block(
            F,
            [B.dim(n - 1), B.dim(n - 1), B.dim(n - 2)],
            [B.dim(n), B.dim(n), B.dim(n - 1)],
            {
                (0, 0): B.diff(n),
                (1, 1): B.diff(n),
                (0, 2): Matrix.identity(F, B.dim(n - 1)).scale(-eps),
                (1, 2): Matrix.identity(F, B.dim(n - 1)).scale(eps),
                (2, 2): B.diff(n - 1),
            },
        )
    cyl = ChainComplex(F, dims, d)
    i0, i1, pi = {}, {}, {}
    for n, k in B.dims.items():
        rows = [k, k, B.dim(n - 1)]
        eye = Matrix.identity(F, k)
        i0[n] = Matrix.block(F, rows, [k], {(0, 0): eye})
        i1[n] = Matrix.block(F, rows, [k], {(1, 0): eye})
        pi[n] = Matrix.block(F, [k], rows, {(0, 0): eye, (0, 1): eye})
    pkg = CylinderPackage(B, cyl, ChainMap(B, cyl, i0), ChainMap(B, cyl, i1), ChainMap(cyl, B, pi))
    if len(_CYL_CACHE) > 512:
        _CYL_CACHE.clear()
    _CYL_CACHE[key] = pkg
    return pkg


def cylinder_map(f: ChainMap) -> ChainMap:
    """``Cyl(f) = f ⊗ id_I``."""
    cs, ct = cylinder(f.source), cylinder(f.target)
    F = f.field
    comps = {}
    for n in set(cs.obj.dims) & set(ct.obj.dims):
        S, T = f.source, f.target
        comps[n] = Matrix.block(
            F,
            [T.dim(n), T.dim(n), T.dim(n - 1)],
            [S.dim(n), S.dim(n), S.dim(n - 1)],
            {(0, 0): f.comp(n), (1, 1): f.comp(n), (2, 2): f.comp(n - 1)},
        )
    return ChainMap(cs.obj, ct.obj, comps)


def homotopy_to_cylinder_map(s: AlgebraicHomotopy) -> ChainMap:
    """The map ``K: Cyl(B) -> Y`` with ``K i0 = from``, ``K i1 = to``.

    On the ``B_{n-1}⊗e`` summand ``K`` is ``(-1)^{n-1} s_{n-1}``.
    """
    cyl = cylinder(s.source)
    B, Y = s.source, s.target
    F = B.field
    comps = {}
    for n in cyl.obj.dims:
        if not Y.dim(n):
            continue
        comps[n] = Matrix.hstack(
            F,
            Y.dim(n),
            [s.start.comp(n), s.end.comp(n), s.comp(n - 1).scale(F.sign(n - 1))],
        )
    return ChainMap(cyl.obj, Y, comps)


def cylinder_map_to_homotopy(K: ChainMap, base: ChainComplex) -> AlgebraicHomotopy:
    cyl = cylinder(base)
    if K.source.dims != cyl.obj.dims:
        raise ShapeError("map does not start at the cylinder of the given base")
    start = compose(K, cyl.i0)
    end = compose(K, cyl.i1)
    F = base.field
    comps = {}
    for m, k in base.dims.items():
        n = m + 1
        blk = K.comp(n)
        off = 2 * base.dim(n)
        comps[m] = blk[:, off:off + k].scale(F.sign(m))
    return AlgebraicHomotopy(start, end, comps)


# -- cocylinder ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CocylinderPackage:
    base: ChainComplex
    obj: ChainComplex
    const: ChainMap
    ev0: ChainMap
    ev1: ChainMap
    ev: ChainMap  # (ev0, ev1): Cocyl(Y) -> Y ⊕ Y
    square: ChainComplex  # Y ⊕ Y

    def evaluation(self, j: int) -> ChainMap:
        return self.ev0 if j == 0 else self.ev1

    def violations(self) -> list[str]:
        maps = [("const", self.const), ("ev0", self.ev0), ("ev1", self.ev1), ("ev", self.ev)]
        out = _structural([("Cocyl", self.obj)], maps)
        if out:
            return out
        ident = identity(self.base)
        _require(out, compose(self.ev0, self.const) == ident, "ev0∘const ≠ id")
        _require(out, compose(self.ev1, self.const) == ident, "ev1∘const ≠ id")
        _require(out, is_quasi_iso(self.const), "const is not a weak equivalence")
        _require(out, is_fibration(self.ev), "(ev0, ev1) is not a fibration")
        _require(out, is_acyclic_fibration(self.ev0), "ev0 is not an acyclic fibration")
        _require(out, is_acyclic_fibration(self.ev1), "ev1 is not an acyclic fibration")
        return out


def cocylinder(Y: ChainComplex) -> CocylinderPackage:
    F = Y.field
    dims = {}
    for n in range(Y.lo - 1, Y.hi + 1) if Y.dims else ():
        k = 2 * Y.dim(n) + Y.dim(n + 1)
        if k:
            dims[n] = k
    d = {}
    for n in dims:
        eps = F.sign(n)
        d[n] = Matrix.block(
            F,
            [Y.dim(n - 1), Y.dim(n - 1), Y.dim(n)],
            [Y.dim(n), Y.dim(n), Y.dim(n + 1)],
            {
                (0, 0): Y.diff(n),
                (1, 1): Y.diff(n),
                (2, 0): Matrix.identity(F, Y.dim(n)).scale(-eps),
                (2, 1): Matrix.identity(F, Y.dim(n)).scale(eps),
                (2, 2): Y.diff(n + 1),
            },
        )
    obj = ChainComplex(F, dims, d)
    const, ev0, ev1 = {}, {}, {}
    for n, k in Y.dims.items():
        cols = [k, k, Y.dim(n + 1)]
        eye = Matrix.identity(F, k)
        const[n] = Matrix.block(F, cols, [k], {(0, 0): eye, (1, 0): eye})
        ev0[n] = Matrix.block(F, [k], cols, {(0, 0): eye})
        ev1[n] = Matrix.block(F, [k], cols, {(0, 1): eye})
    e0 = ChainMap(obj, Y, ev0)
    e1 = ChainMap(obj, Y, ev1)
    yy = direct_sum(Y, Y)
    return CocylinderPackage(Y, obj, ChainMap(Y, obj, const), e0, e1, pair(e0, e1, yy), yy)


# -- pushout / pullback ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Pushout:
    """``M = (B ⊕ C) / {(u a, -v a)}`` with legs ``leg_b: B -> M``, ``leg_c: C -> M``."""

    u: ChainMap
    v: ChainMap
    obj: ChainComplex
    leg_b: ChainMap
    leg_c: ChainMap
    proj: dict
    sect: dict

    def induced(self, x: ChainMap, y: ChainMap, target: ChainComplex | None = None) -> ChainMap:
        """The unique ``m: M -> T`` with ``m leg_b = x`` and ``m leg_c = y``."""
        if compose(x, self.u) != compose(y, self.v):
            raise NonCommutingError("cocone does not commute: x∘u ≠ y∘v")
        T = target or x.target
        F = T.field
        comps = {}
        for n, k in self.obj.dims.items():
            if not T.dim(n):
                continue
            xy = Matrix.hstack(F, T.dim(n), [x.comp(n), y.comp(n)])
            comps[n] = xy @ self.sect[n]
        return ChainMap(self.obj, T, comps)

    def violations(self) -> list[str]:
        out = _structural([("pushout", self.obj)], [("leg_b", self.leg_b), ("leg_c", self.leg_c)])
        if not out:
            _require(out, compose(self.leg_b, self.u) == compose(self.leg_c, self.v), "pushout square does not commute")
        return out


def pushout(u: ChainMap, v: ChainMap) -> Pushout:
    """Pushout of ``B <-u- A -v-> C``."""
    if u.source.dims != v.source.dims:
        raise ShapeError("pushout: maps must share a source")
    A, B, C = u.source, u.target, v.target
    F = A.field
    BC = direct_sum(B, C)
    proj, sect, dims = {}, {}, {}
    for n in BC.dims:
        gens = Matrix.vstack(F, A.dim(n), [u.comp(n), -v.comp(n)])
        P, S = quotient_basis(BC.dim(n), gens)
        proj[n], sect[n] = P, S
        if P.rows:
            dims[n] = P.rows
    d = {}
    for n in dims:
        if n - 1 in dims:
            d[n] = proj[n - 1] @ BC.diff(n) @ sect[n]
    M = ChainComplex(F, dims, d)
    pmap = ChainMap(BC, M, {n: proj[n] for n in dims})
    leg_b = compose(pmap, inclusion(B, C, 0, BC))
    leg_c = compose(pmap, inclusion(B, C, 1, BC))
    return Pushout(u, v, M, leg_b, leg_c, proj, sect)


@dataclass(frozen=True, eq=False)
class Pullback:
    """``P = ker (f, -g) ⊆ X ⊕ Z`` with legs ``leg_x: P -> X``, ``leg_z: P -> Z``."""

    f: ChainMap
    g: ChainMap
    obj: ChainComplex
    leg_x: ChainMap
    leg_z: ChainMap
    basis: dict
    coords: dict

    def induced(self, a: ChainMap, b: ChainMap, source: ChainComplex | None = None) -> ChainMap:
        """The unique ``m: T -> P`` with ``leg_x m = a`` and ``leg_z m = b``."""
        if compose(self.f, a) != compose(self.g, b):
            raise NonCommutingError("cone does not commute: f∘a ≠ g∘b")
        T = source or a.source
        F = T.field
        comps = {}
        for n, k in self.obj.dims.items():
            if not T.dim(n):
                continue
            ab = Matrix.vstack(F, T.dim(n), [a.comp(n), b.comp(n)])
            comps[n] = self.coords[n] @ ab
        return ChainMap(T, self.obj, comps)

    def violations(self) -> list[str]:
        out = _structural([("pullback", self.obj)], [("leg_x", self.leg_x), ("leg_z", self.leg_z)])
        if not out:
            _require(out, compose(self.f, self.leg_x) == compose(self.g, self.leg_z), "pullback square does not commute")
        return out


def pullback(f: ChainMap, g: ChainMap) -> Pullback:
    """Pullback of ``X -f-> Y <-g- Z``."""
    if f.target.dims != g.target.dims:
        raise ShapeError("pullback: maps must share a target")
    X, Y, Z = f.source, f.target, g.source
    F = X.field
    XZ = direct_sum(X, Z)
    basis, coords, dims = {}, {}, {}
    for n in XZ.dims:
        assembled = Matrix.hstack(F, Y.dim(n), [f.comp(n), -g.comp(n)])
        K = kernel_basis(assembled)
        if K.cols:
            basis[n] = K
            coords[n] = left_inverse(K)
            dims[n] = K.cols
    d = {}
    for n in dims:
        if n - 1 in dims:
            d[n] = coords[n - 1] @ XZ.diff(n) @ basis[n]
    P = ChainComplex(F, dims, d)
    incl = ChainMap(P, XZ, basis)
    from .chain import projection

    leg_x = compose(projection(X, Z, 0, XZ), incl)
    leg_z = compose(projection(X, Z, 1, XZ), incl)
    return Pullback(f, g, P, leg_x, leg_z, basis, coords)


# -- factorizations ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FactorizationCofAFib:
    """``α = f̃(α) ∘ c(α)`` through the mapping cylinder ``F(α)``."""

    alpha: ChainMap
    obj: ChainComplex
    c: ChainMap
    ftilde: ChainMap
    glue: Pushout
    cyl: CylinderPackage

    def violations(self) -> list[str]:
        out = _structural([("F(α)", self.obj)], [("c", self.c), ("f̃", self.ftilde)])
        if out:
            return out
        _require(out, compose(self.ftilde, self.c) == self.alpha, "f̃∘c ≠ α")
        _require(out, is_cofibration(self.c), "c is not a cofibration")
        _require(out, is_acyclic_fibration(self.ftilde), "f̃ is not an acyclic fibration")
        return out


def factor_cof_afib(alpha: ChainMap) -> FactorizationCofAFib:
    X, Y = alpha.source, alpha.target
    cyl = cylinder(X)
    po = pushout(cyl.i1, alpha)
    c = compose(po.leg_b, cyl.i0)
    ftilde = po.induced(compose(alpha, cyl.pi), identity(Y), Y)
    return FactorizationCofAFib(alpha, po.obj, c, ftilde, po, cyl)


@dataclass(frozen=True, eq=False)
class FactorizationACofFib:
    """``α = f(α) ∘ c̃(α)`` through the mapping path object ``C(α)``."""

    alpha: ChainMap
    obj: ChainComplex
    ctilde: ChainMap
    f: ChainMap
    path: Pullback
    cocyl: CocylinderPackage

    def violations(self) -> list[str]:
        out = _structural([("C(α)", self.obj)], [("c̃", self.ctilde), ("f", self.f)])
        if out:
            return out
        _require(out, compose(self.f, self.ctilde) == self.alpha, "f∘c̃ ≠ α")
        _require(out, is_acyclic_cofibration(self.ctilde), "c̃ is not an acyclic cofibration")
        _require(out, is_fibration(self.f), "f is not a fibration")
        return out


def factor_acof_fib(alpha: ChainMap) -> FactorizationACofFib:
    X, Y = alpha.source, alpha.target
    co = cocylinder(Y)
    pb = pullback(alpha, co.ev0)
    ctilde = pb.induced(identity(X), compose(co.const, alpha), X)
    f = compose(co.ev1, pb.leg_z)
    return FactorizationACofFib(alpha, pb.obj, ctilde, f, pb, co)


# -- mapping cylinders of a map ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MappingCylinder:
    """``N_j(i) = Cyl(A) ∪_{i_j, i} B`` with ``ι_j: N_j(i) -> Cyl(B)``."""

    i: ChainMap
    end: int
    obj: ChainComplex
    iota: ChainMap
    cyl_leg: ChainMap  # Cyl(A) -> N_j(i)
    base_leg: ChainMap  # B -> N_j(i)
    glue: Pushout

    def violations(self) -> list[str]:
        """Commutation of the gluing; for a cofibration ``i``, ``ι_j`` is an acyclic cofibration."""
        out = _structural([("N_j", self.obj)], [("ι_j", self.iota)])
        if out:
            return out
        cb = cylinder(self.i.target)
        _require(out, compose(self.iota, self.cyl_leg) == cylinder_map(self.i), "ι_j on Cyl(A) ≠ Cyl(i)")
        _require(out, compose(self.iota, self.base_leg) == cb.end(self.end), "ι_j on B ≠ i_j")
        if is_cofibration(self.i):
            _require(out, is_acyclic_cofibration(self.iota), "ι_j is not an acyclic cofibration")
        return out


def mapping_cylinder_side(i: ChainMap, end: int) -> MappingCylinder:
    if end not in (0, 1):
        raise ValueError("end must be 0 or 1")
    ca, cb = cylinder(i.source), cylinder(i.target)
    po = pushout(ca.end(end), i)
    iota = po.induced(cylinder_map(i), cb.end(end), cb.obj)
    return MappingCylinder(i, end, po.obj, iota, po.leg_b, po.leg_c, po)


@dataclass(frozen=True, eq=False)
class DoubleMappingCylinder:
    """``N(i) = Cyl(A) ∪_{A⊕A} (B⊕B)`` with its map ``ι: N(i) -> Cyl(B)``."""

    i: ChainMap
    obj: ChainComplex
    iota: ChainMap
    cyl_leg: ChainMap  # Cyl(A) -> N(i)
    end0: ChainMap  # B -> N(i)
    end1: ChainMap
    glue: Pushout
    ends: ChainComplex  # B ⊕ B

    def induced(self, on_cyl: ChainMap, on_end0: ChainMap, on_end1: ChainMap, target=None) -> ChainMap:
        """Glue maps on ``Cyl(A)`` and on both copies of ``B``."""
        T = target or on_cyl.target
        return self.glue.induced(on_cyl, copair(on_end0, on_end1, self.ends), T)

    def violations(self) -> list[str]:
        out = _structural([("N", self.obj)], [("ι", self.iota)])
        if out:
            return out
        cb = cylinder(self.i.target)
        _require(out, compose(self.iota, self.cyl_leg) == cylinder_map(self.i), "ι on Cyl(A) ≠ Cyl(i)")
        _require(out, compose(self.iota, self.end0) == cb.i0, "ι on the 0-end ≠ i0")
        _require(out, compose(self.iota, self.end1) == cb.i1, "ι on the 1-end ≠ i1")
        if is_cofibration(self.i):
            _require(out, is_cofibration(self.iota), "ι is not a cofibration")
        return out


def double_mapping_cylinder(i: ChainMap) -> DoubleMappingCylinder:
    A, B = i.source, i.target
    ca, cb = cylinder(A), cylinder(B)
    AA = direct_sum(A, A)
    BB = direct_sum(B, B)
    ends_a = copair(ca.i0, ca.i1, AA)
    po = pushout(ends_a, map_sum(i, i, AA, BB))
    e0 = compose(po.leg_c, inclusion(B, B, 0, BB))
    e1 = compose(po.leg_c, inclusion(B, B, 1, BB))
    iota = po.induced(cylinder_map(i), copair(cb.i0, cb.i1, BB), cb.obj)
    return DoubleMappingCylinder(i, po.obj, iota, po.leg_b, e0, e1, po, BB)


# -- homotopy pushout and the cartesian gap map ---------------------------------------


@dataclass(frozen=True, eq=False)
class HomotopyPushout:
    """``M(α, β)``: the pushout of ``F(α) <-c(α)- X -β-> Z``; ``j``, ``j′`` its legs."""

    alpha: ChainMap
    beta: ChainMap
    fact: FactorizationCofAFib
    obj: ChainComplex
    j: ChainMap
    jprime: ChainMap
    glue: Pushout

    def violations(self) -> list[str]:
        out = _structural([("M", self.obj)], [("j", self.j), ("j′", self.jprime)])
        if not out:
            _require(out, compose(self.j, self.fact.c) == compose(self.jprime, self.beta), "j∘c(α) ≠ j′∘β")
        return out


def homotopy_pushout(alpha: ChainMap, beta: ChainMap, fact: FactorizationCofAFib | None = None) -> HomotopyPushout:
    if alpha.source.dims != beta.source.dims:
        raise ShapeError("homotopy pushout: maps must share a source")
    fact = fact or factor_cof_afib(alpha)
    po = pushout(fact.c, beta)
    return HomotopyPushout(alpha, beta, fact, po.obj, po.leg_b, po.leg_c, po)


@dataclass(frozen=True, eq=False)
class GapMap:
    """``b(α, β): X -> P(α, β)`` with ``k b = c̃(j) c(α)`` and ``k′ b = β``."""

    hpo: HomotopyPushout
    jfact: FactorizationACofFib
    square: Pullback
    P: ChainComplex
    k: ChainMap
    kprime: ChainMap
    b: ChainMap

    def violations(self) -> list[str]:
        out = _structural([("P", self.P)], [("b", self.b)])
        if out:
            return out
        _require(out, compose(self.k, self.b) == compose(self.jfact.ctilde, self.hpo.fact.c), "k∘b ≠ c̃(j)∘c(α)")
        _require(out, compose(self.kprime, self.b) == self.hpo.beta, "k′∘b ≠ β")
        return out


def gap_map(alpha: ChainMap, beta: ChainMap, hpo: HomotopyPushout | None = None) -> GapMap:
    hpo = hpo or homotopy_pushout(alpha, beta)
    jfact = factor_acof_fib(hpo.j)
    sq = pullback(jfact.f, hpo.jprime)
    b = sq.induced(compose(jfact.ctilde, hpo.fact.c), beta, alpha.source)
    return GapMap(hpo, jfact, sq, sq.obj, sq.leg_x, sq.leg_z, b)


def empty_like(c: ChainComplex) -> ChainComplex:
    return zero_complex(c.field)
