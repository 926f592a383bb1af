"""Decide lifting problems by exact linear solving.

Every problem reduces to one affine system whose unknowns are the entries of
the sought chain maps, concatenated in the order the unknowns were declared
(degree ascending, row-major within a degree).  The canonical witness is the
solution with all free variables zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .chain import (
    AlgebraicHomotopy,
    ChainComplex,
    ChainMap,
    compose,
    degrees,
    direct_sum,
    is_cofibration,
    is_fibration,
    is_quasi_iso,
    pair,
    validate_map,
    zero_map,
)
from .constructions import (
    NonCommutingError,
    cocylinder,
    cylinder,
    cylinder_map,
    double_mapping_cylinder,
    pullback,
)
from .exactlin import Eliminator, Field, Matrix

__all__ = [
    "HypothesisError",
    "InvalidProblemError",
    "LinearSystem",
    "MapUnknown",
    "LiftingProblem",
    "HelpSolution",
    "solve_square",
    "solve_help",
    "solve_extension",
    "solve_help_via_cocylinder",
    "nullhomotopy",
    "help_system",
    "extension_system",
    "square_system",
]


class HypothesisError(ValueError):
    """A precondition of a construction (not merely of the input shape) fails."""


class InvalidProblemError(ValueError):
    """The solid arrows of a lifting problem do not commute."""


# -- the linear system -----------------------------------------------------------


class LinearSystem:
    """Affine equations ``Σ L·X·R = C`` in matrix unknowns ``X``."""

    def __init__(self, field: Field):
        self.field = field
        self.blocks: list[tuple[int, int, int]] = []  # (offset, rows, cols)
        self.n = 0
        self._equations: list[tuple[list, Matrix]] = []
        self._elim: Eliminator | None = None
        self._rows_cache = None

    def block(self, rows: int, cols: int) -> int:
        self.blocks.append((self.n, rows, cols))
        self.n += rows * cols
        self._elim = None
        return len(self.blocks) - 1

    def equation(self, terms: Sequence[tuple], rhs: Matrix) -> None:
        """Add ``Σ coeff · L @ X[blk] @ R = rhs``; ``L``/``R`` may be ``None``."""
        if rhs.rows == 0 or rhs.cols == 0:
            return
        self._equations.append((list(terms), rhs))
        self._elim = None
        self._rows_cache = None

    # assembly

    def _coefficients(self, terms, rhs):
        """Per-block coefficient arrays for one equation (rows = entries of rhs)."""
        F = self.field
        a, b = rhs.shape
        per_block: dict[int, np.ndarray] = {}
        for L, blk, R, coeff in terms:
            _, m, n = self.blocks[blk]
            if m == 0 or n == 0:
                continue
            La = L.a if L is not None else None
            Ra = R.a if R is not None else None
            if La is None:
                La = Matrix.identity(F, m).a
            if Ra is None:
                Ra = Matrix.identity(F, n).a
            C = np.kron(La, Ra.T)
            if coeff != 1:
                C = C * F.scalar(coeff)
            if blk in per_block:
                per_block[blk] = per_block[blk] + C
            else:
                per_block[blk] = C
        for blk in per_block:
            per_block[blk] = F.reduce(per_block[blk])
        return per_block, rhs.a.reshape(a * b)

    def rows(self):
        """Assembled nonzero rows as ``(coeffs: {col: value}, rhs)`` in order."""
        if self._rows_cache is not None:
            return self._rows_cache
        out = []
        zero = self.field.scalar(0)
        for terms, rhs in self._equations:
            per_block, rvec = self._coefficients(terms, rhs)
            nrows = rvec.shape[0]
            dicts = [dict() for _ in range(nrows)]
            for blk, C in per_block.items():
                off = self.blocks[blk][0]
                rr, cc = np.nonzero(C != 0)
                for r, c in zip(rr.tolist(), cc.tolist()):
                    dicts[r][off + c] = C[r, c]
            for r in range(nrows):
                if dicts[r] or rvec[r] != zero:
                    out.append((dicts[r], rvec[r]))
        self._rows_cache = out
        return out

    def eliminate(self, track: bool = False) -> Eliminator:
        if self._elim is not None and (self._elim.track or not track):
            return self._elim
        F = self.field
        el = Eliminator(F, self.n, track=track)
        if F.p == 2 and not track:
            for terms, rhs in self._equations:
                per_block, rvec = self._coefficients(terms, rhs)
                nrows = rvec.shape[0]
                acc = [0] * nrows
                for blk, C in per_block.items():
                    off = self.blocks[blk][0]
                    packed = np.packbits(C.astype(np.uint8), axis=1, bitorder="little")
                    for r in range(nrows):
                        v = int.from_bytes(packed[r].tobytes(), "little")
                        if v:
                            acc[r] ^= v << off
                top = self.n
                for r in range(nrows):
                    row = acc[r]
                    if rvec[r]:
                        row |= 1 << top
                    if row:
                        el.add_sparse_gf2(row)
        else:
            for coeffs, rhs in self.rows():
                el.add_row(coeffs, rhs)
        self._elim = el
        return el

    def solve(self, rng: np.random.Generator | None = None) -> list | None:
        """Solution vector (free variables zero, or random when ``rng`` given)."""
        el = self.eliminate()
        if el.inconsistent:
            return None
        free = None
        if rng is not None:
            free = {c: _random_scalar(self.field, rng) for c in el.free_columns()}
        return el.solution(free)

    def dual_certificate(self) -> dict[int, object] | None:
        """``y`` with ``y·A = 0`` and ``y·b = 1`` (row indices into :meth:`rows`)."""
        el = self.eliminate(track=True)
        if not el.inconsistent:
            return None
        return dict(el.certificate)

    def check_dual(self, y: dict[int, object]) -> bool:
        F = self.field
        rows = self.rows()
        acc: dict[int, object] = {}
        rhs = F.scalar(0)
        for k, v in y.items():
            if not 0 <= k < len(rows):
                return False
            v = F.scalar(v)
            coeffs, b = rows[k]
            for c, a in coeffs.items():
                acc[c] = F.scalar(acc.get(c, 0) + v * a)
            rhs = F.scalar(rhs + v * b)
        return all(x == 0 for x in acc.values()) and rhs == F.scalar(1)

    def check(self, x: Sequence) -> bool:
        F = self.field
        for coeffs, b in self.rows():
            s = F.scalar(0)
            for c, a in coeffs.items():
                s = s + a * x[c]
            if F.scalar(s) != F.scalar(b):
                return False
        return True

    def extract(self, x: Sequence, blk: int) -> Matrix:
        off, m, n = self.blocks[blk]
        vals = list(x[off:off + m * n])
        return Matrix(self.field, [vals[r * n:(r + 1) * n] for r in range(m)], m, n)


def _random_scalar(F: Field, rng: np.random.Generator):
    if F.p is None:
        return F.scalar(int(rng.integers(-2, 3)))
    return F.scalar(int(rng.integers(0, F.p)))


class MapUnknown:
    """An unknown graded map ``source_n -> target_{n+shift}``.

    With ``chain=True`` (degree-0 maps) the chain-map squares are added to
    the system on construction.
    """

    def __init__(self, system: LinearSystem, source: ChainComplex, target: ChainComplex, chain: bool = True, shift: int = 0):
        self.system = system
        self.source = source
        self.target = target
        self.shift = shift
        self.blocks: dict[int, int] = {}
        for n, k in source.dims.items():
            t = target.dim(n + shift)
            if t:
                self.blocks[n] = system.block(t, k)
        if chain:
            if shift:
                raise ValueError("chain condition only for degree-0 unknowns")
            for n in degrees(source, target):
                # d_T X_n - X_{n-1} d_S = 0
                terms = []
                if n in self.blocks:
                    terms.append((target.diff(n), self.blocks[n], None, 1))
                if n - 1 in self.blocks:
                    terms.append((None, self.blocks[n - 1], source.diff(n), -1))
                if terms:
                    system.equation(terms, Matrix.zeros(source.field, target.dim(n - 1), source.dim(n)))

    def term(self, n: int, left: Matrix | None = None, right: Matrix | None = None, coeff=1):
        blk = self.blocks.get(n)
        if blk is None:
            return None
        return (left, blk, right, coeff)

    def value(self, x: Sequence) -> ChainMap:
        comps = {n: self.system.extract(x, b) for n, b in self.blocks.items()}
        return ChainMap(self.source, self.target, comps)

    def graded_value(self, x: Sequence) -> dict[int, Matrix]:
        return {n: self.system.extract(x, b) for n, b in self.blocks.items()}


def require(system: LinearSystem, terms: Sequence[tuple], rhs: ChainMap) -> None:
    """Add ``Σ coeff · left ∘ X ∘ right = rhs`` degreewise.

    ``terms`` holds ``(left: ChainMap | None, X: MapUnknown, right: ChainMap | None, coeff)``.
    """
    for n in rhs.source.dims:
        if not rhs.target.dim(n):
            continue
        parts = []
        for left, X, right, coeff in terms:
            t = X.term(n, left.comp(n) if left is not None else None, right.comp(n) if right is not None else None, coeff)
            if t is not None:
                parts.append(t)
        system.equation(parts, rhs.comp(n))


# -- problems and witnesses -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LiftingProblem:
    """Solid arrows of the HELP prism: ``i: A -> B``, ``α: X -> Y``,
    ``f: B -> Y``, ``h: A -> X`` and ``H: Cyl(A) -> Y`` with
    ``H i0 = f i`` and ``H i1 = α h``."""

    i: ChainMap
    alpha: ChainMap
    f: ChainMap
    h: ChainMap
    H: ChainMap

    @property
    def A(self) -> ChainComplex:
        return self.i.source

    @property
    def B(self) -> ChainComplex:
        return self.i.target

    @property
    def X(self) -> ChainComplex:
        return self.alpha.source

    @property
    def Y(self) -> ChainComplex:
        return self.alpha.target

    @property
    def field(self) -> Field:
        return self.i.field

    @classmethod
    def degenerate(cls, i: ChainMap, alpha: ChainMap, f: ChainMap, h: ChainMap) -> LiftingProblem:
        """Take ``H = f ∘ i ∘ π``; needs the strict square ``f i = α h``."""
        if compose(f, i) != compose(alpha, h):
            raise InvalidProblemError("degenerate H needs f∘i = α∘h")
        H = compose(compose(f, i), cylinder(i.source).pi)
        return cls(i, alpha, f, h, H)

    def violations(self) -> list[str]:
        out = []
        A, B, X, Y = self.A, self.B, self.X, self.Y
        ca = cylinder(A)
        checks = [
            ("f", self.f, B, Y),
            ("h", self.h, A, X),
            ("H", self.H, ca.obj, Y),
        ]
        for name, m, s, t in checks:
            if m.source != s or m.target != t:
                out.append(f"{name} has the wrong source or target")
        if out:
            return out
        for name, m in [("i", self.i), ("alpha", self.alpha), ("f", self.f), ("h", self.h), ("H", self.H)]:
            out += [f"{name}: {v}" for v in validate_map(m)]
        if compose(self.H, ca.i0) != compose(self.f, self.i):
            out.append("H∘i0 ≠ f∘i")
        if compose(self.H, ca.i1) != compose(self.alpha, self.h):
            out.append("H∘i1 ≠ α∘h")
        return out

    def check(self) -> None:
        v = self.violations()
        if v:
            raise InvalidProblemError("; ".join(v))


@dataclass(frozen=True, eq=False)
class HelpSolution:
    """Dotted arrows ``K: Cyl(B) -> Y`` and ``g: B -> X``."""

    K: ChainMap
    g: ChainMap

    def violations(self, p: LiftingProblem) -> list[str]:
        cb = cylinder(p.B)
        out = [f"K: {v}" for v in validate_map(self.K)] + [f"g: {v}" for v in validate_map(self.g)]
        if compose(self.K, cb.i0) != p.f:
            out.append("K∘i0 ≠ f")
        if compose(self.K, cylinder_map(p.i)) != p.H:
            out.append("K∘Cyl(i) ≠ H")
        if compose(self.K, cb.i1) != compose(p.alpha, self.g):
            out.append("K∘i1 ≠ α∘g")
        if compose(self.g, p.i) != p.h:
            out.append("g∘i ≠ h")
        return out

    def is_valid(self, p: LiftingProblem) -> bool:
        return not self.violations(p)


# -- solvers ---------------------------------------------------------------------------


def square_system(i: ChainMap, top: ChainMap, alpha: ChainMap, bottom: ChainMap):
    if compose(alpha, top) != compose(bottom, i):
        raise NonCommutingError("square does not commute: α∘top ≠ bottom∘i")
    S = LinearSystem(i.field)
    theta = MapUnknown(S, i.target, alpha.source)
    require(S, [(None, theta, i, 1)], top)
    require(S, [(alpha, theta, None, 1)], bottom)
    return S, theta


def solve_square(i: ChainMap, top: ChainMap, alpha: ChainMap, bottom: ChainMap, rng=None) -> ChainMap | None:
    """A diagonal ``θ: B -> X`` with ``θ i = top`` and ``α θ = bottom``, or ``None``."""
    S, theta = square_system(i, top, alpha, bottom)
    x = S.solve(rng)
    return None if x is None else theta.value(x)


def help_system(p: LiftingProblem):
    cb = cylinder(p.B)
    S = LinearSystem(p.field)
    K = MapUnknown(S, cb.obj, p.Y)
    g = MapUnknown(S, p.B, p.X)
    require(S, [(None, K, cb.i0, 1)], p.f)
    require(S, [(None, K, cylinder_map(p.i), 1)], p.H)
    require(S, [(None, K, cb.i1, 1), (p.alpha, g, None, -1)], zero_map(p.B, p.Y))
    require(S, [(None, g, p.i, 1)], p.h)
    return S, K, g


def solve_help(p: LiftingProblem, rng=None, check: bool = True) -> HelpSolution | None:
    """Complete the HELP prism, or ``None`` when no completion exists."""
    if check:
        p.check()
    S, K, g = help_system(p)
    x = S.solve(rng)
    if x is None:
        return None
    return HelpSolution(K.value(x), g.value(x))


def extension_system(inclusion: ChainMap, target_map: ChainMap):
    if not is_cofibration(inclusion):
        raise HypothesisError("extension along a map that is not degreewise injective")
    if inclusion.source.dims != target_map.source.dims:
        raise NonCommutingError("target map does not start at the inclusion's source")
    S = LinearSystem(inclusion.field)
    E = MapUnknown(S, inclusion.target, target_map.target)
    require(S, [(None, E, inclusion, 1)], target_map)
    return S, E


def solve_extension(inclusion: ChainMap, target_map: ChainMap, rng=None) -> ChainMap | None:
    """``E: C -> M`` with ``E ∘ inclusion = target_map``, or ``None``."""
    S, E = extension_system(inclusion, target_map)
    x = S.solve(rng)
    return None if x is None else E.value(x)


def nullhomotopy(f: ChainMap) -> AlgebraicHomotopy | None:
    """``s`` with ``d s + s d = f``, or ``None``."""
    S_, T = f.source, f.target
    sys = LinearSystem(f.field)
    s = MapUnknown(sys, S_, T, chain=False, shift=1)
    for n in degrees(S_, T):
        if not (S_.dim(n) and T.dim(n)):
            continue
        terms = []
        t = s.term(n, T.diff(n + 1), None)
        if t:
            terms.append(t)
        t = s.term(n - 1, None, S_.diff(n))
        if t:
            terms.append(t)
        sys.equation(terms, f.comp(n))
    x = sys.solve()
    if x is None:
        return None
    return AlgebraicHomotopy(zero_map(S_, T), f, s.graded_value(x))


@dataclass(frozen=True, eq=False)
class CocylinderTrace:
    """Intermediate maps of the path-object construction (for inspection)."""

    Q: ChainComplex
    xi: ChainMap
    zeta: ChainMap
    Jhat: ChainMap
    J: ChainMap
    L: ChainMap
    M: ChainMap


def solve_help_via_cocylinder(p: LiftingProblem, return_trace: bool = False):
    """Complete the prism for a quasi-isomorphism ``α`` through ``Cocyl(Y)``.

    Builds ``Q = X ×_{α, ev1} Cocyl(Y)``, checks ``ev0 ∘ ξ: Q -> Y`` is an
    acyclic fibration, then lifts three times: ``Ĵ: Cyl(A) -> Cocyl(Y)``,
    ``(g, L): B -> Q`` and ``M: Cyl(B) -> Cocyl(Y)``.  Returns
    ``HelpSolution(ev1 ∘ M, g)``.
    """
    p.check()
    alpha = p.alpha
    if not is_cofibration(p.i):
        raise HypothesisError("i is not a cofibration")
    if not is_quasi_iso(alpha):
        raise HypothesisError("α is not a quasi-isomorphism")
    A, B, X, Y = p.A, p.B, p.X, p.Y
    co = cocylinder(Y)
    ca, cb = cylinder(A), cylinder(B)
    Q = pullback(alpha, co.ev1)
    xi = Q.leg_z
    to_y = compose(co.ev0, xi)
    XY = direct_sum(X, Y)
    zeta = pair(Q.leg_x, to_y, XY)
    if not (is_fibration(to_y) and is_quasi_iso(to_y)):
        raise HypothesisError("ev0∘ξ is not an acyclic fibration")

    fi = compose(p.f, p.i)
    # Ĵ: Cyl(A) -> Cocyl(Y) with Ĵ i0 = const∘f∘i and (ev0, ev1) Ĵ = (f i π, H)
    bottom = pair(compose(fi, ca.pi), p.H, co.square)
    Jhat = solve_square(ca.i0, compose(co.const, fi), co.ev, bottom)
    if Jhat is None:
        raise HypothesisError("no lift Ĵ: i0 against (ev0, ev1)")
    J = compose(Jhat, ca.i1)

    hJ = Q.induced(p.h, J, A)
    gL = solve_square(p.i, hJ, to_y, p.f)
    if gL is None:
        raise HypothesisError("no lift (g, L): i against ev0∘ξ")
    g = compose(Q.leg_x, gL)
    L = compose(xi, gL)

    N = double_mapping_cylinder(p.i)
    top = N.induced(Jhat, compose(co.const, p.f), L, co.obj)
    M = solve_square(N.iota, top, co.ev0, compose(p.f, cb.pi))
    if M is None:
        raise HypothesisError("no lift M: ι against ev0")
    sol = HelpSolution(compose(co.ev1, M), g)
    if return_trace:
        return sol, CocylinderTrace(Q.obj, xi, zeta, Jhat, J, L, M)
    return sol
