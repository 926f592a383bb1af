"""Ground truth for the solvers: brute-force enumeration over F_2, seeded
random instances, and the randomized verification harness."""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field, asdict

import numpy as np

from .chain import (
    ChainComplex,
    ChainMap,
    compose,
    direct_sum,
    disk,
    is_fibration,
    is_quasi_iso,
    validate,
    validate_map,
    zero_map,
)
from .constructions import cylinder, cylinder_map, gap_map
from .exactlin import Field, Matrix, kernel_basis, rank
from .obstruction import (
    build_chi,
    extract_lift_from_trivial_chi,
    forward_direction,
    is_chi_trivial,
)
from .solver import (
    LiftingProblem,
    LinearSystem,
    MapUnknown,
    solve_help,
    solve_help_via_cocylinder,
)

__all__ = [
    "EnumerationCapExceeded",
    "SamplingError",
    "Census",
    "InstanceParams",
    "enumerate_help",
    "enumerate_extension",
    "help_unknown_bits",
    "extension_unknown_bits",
    "tiny_instances",
    "random_complex",
    "random_chain_map",
    "random_extension",
    "random_cofibration",
    "random_quasi_iso",
    "random_fibration",
    "random_instance",
    "planted_section_instance",
    "random_cospan",
    "verify_theorem",
    "TheoremReport",
]

DEFAULT_CAP_BITS = 24
_CHUNK = 1 << 15


class EnumerationCapExceeded(ValueError):
    pass


class SamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class Census:
    exists: bool
    count: int
    bits: int


# -- brute-force enumeration over F_2 --------------------------------------------


def _slots(pairs):
    """Lay out unknown blocks: ``pairs`` is ``[(key, rows, cols)]``."""
    out, off = {}, 0
    for key, r, c in pairs:
        if r and c:
            out[key] = (off, r, c)
            off += r * c
    return out, off


def _batch(bits: np.ndarray, slot) -> np.ndarray:
    off, r, c = slot
    return bits[:, off:off + r * c].reshape(-1, r, c)


def _chain_ok(bits, slots, key, source: ChainComplex, target: ChainComplex, ok):
    """Mask of candidates whose block ``key`` is a chain map."""
    for n in range(min(list(source.dims) + list(target.dims), default=0) - 1,
                   max(list(source.dims) + list(target.dims), default=0) + 2):
        a = slots.get((key, n))
        b = slots.get((key, n - 1))
        rows, cols = target.dim(n - 1), source.dim(n)
        if not rows or not cols:
            continue
        lhs = 0
        if a is not None:
            lhs = target.diff(n).a @ _batch(bits, a)
        rhs = 0
        if b is not None:
            rhs = _batch(bits, b) @ source.diff(n).a
        diff = (np.asarray(lhs) + np.asarray(rhs)) % 2
        if np.ndim(diff) == 3:
            ok &= ~diff.reshape(diff.shape[0], -1).any(axis=1)
        elif np.any(diff):
            ok &= False
    return ok


def _eq_ok(bits, ok, lhs_terms, rhs: Matrix):
    """Mask of candidates with ``Σ L @ X @ R == rhs`` (mod 2)."""
    total = np.broadcast_to(rhs.a, (bits.shape[0],) + rhs.shape).copy()
    for L, slot, R in lhs_terms:
        if slot is None:
            continue
        X = _batch(bits, slot)
        if L is not None:
            X = L.a @ X
        if R is not None:
            X = X @ R.a
        total = total + X
    total %= 2
    ok &= ~total.reshape(total.shape[0], -1).any(axis=1)
    return ok


def _enumerate(nbits: int, cap_bits: int, check) -> Census:
    if nbits > cap_bits:
        raise EnumerationCapExceeded(f"{nbits} unknown bits exceed the cap of {cap_bits}")
    total = 1 << nbits
    count = 0
    shifts = np.arange(nbits, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        ids = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        bits = ((ids[:, None] >> shifts) & 1).astype(np.int64)
        ok = np.ones(ids.shape[0], dtype=bool)
        ok = check(bits, ok)
        count += int(ok.sum())
    return Census(count > 0, count, nbits)


def _require_gf2(F: Field):
    if F.p != 2:
        raise ValueError("enumeration is only available over F_2")


def help_unknown_bits(p: LiftingProblem) -> int:
    cb = cylinder(p.B).obj
    k = sum(cb.dim(n) * p.Y.dim(n) for n in cb.dims)
    g = sum(p.B.dim(n) * p.X.dim(n) for n in p.B.dims)
    return k + g


def extension_unknown_bits(inclusion: ChainMap, target_map: ChainMap) -> int:
    C, M = inclusion.target, target_map.target
    return sum(C.dim(n) * M.dim(n) for n in C.dims)


def enumerate_help(p: LiftingProblem, cap_bits: int = DEFAULT_CAP_BITS) -> Census:
    """Try every ``(K, g)`` and count those completing the prism."""
    _require_gf2(p.field)
    cb = cylinder(p.B)
    CB, Y, B, X = cb.obj, p.Y, p.B, p.X
    pairs = [(("K", n), Y.dim(n), CB.dim(n)) for n in CB.dims]
    pairs += [(("g", n), X.dim(n), B.dim(n)) for n in B.dims]
    slots, nbits = _slots(pairs)
    ci = cylinder_map(p.i)

    def check(bits, ok):
        ok = _chain_ok(bits, slots, "K", CB, Y, ok)
        ok = _chain_ok(bits, slots, "g", B, X, ok)
        for n in set(B.dims):
            if Y.dim(n):
                ok = _eq_ok(bits, ok, [(None, slots.get(("K", n)), cb.i0.comp(n))], p.f.comp(n))
                ok = _eq_ok(
                    bits, ok,
                    [(None, slots.get(("K", n)), cb.i1.comp(n)), (p.alpha.comp(n), slots.get(("g", n)), None)],
                    Matrix.zeros(p.field, Y.dim(n), B.dim(n)),
                )
        for n in ci.source.dims:
            if Y.dim(n):
                ok = _eq_ok(bits, ok, [(None, slots.get(("K", n)), ci.comp(n))], p.H.comp(n))
        for n in p.A.dims:
            if X.dim(n):
                ok = _eq_ok(bits, ok, [(None, slots.get(("g", n)), p.i.comp(n))], p.h.comp(n))
        return ok

    return _enumerate(nbits, cap_bits, check)


def enumerate_extension(inclusion: ChainMap, target_map: ChainMap, cap_bits: int = DEFAULT_CAP_BITS) -> Census:
    """Try every chain map ``C -> M`` and count those restricting to ``target_map``."""
    _require_gf2(inclusion.field)
    C, M = inclusion.target, target_map.target
    pairs = [(("E", n), M.dim(n), C.dim(n)) for n in C.dims]
    slots, nbits = _slots(pairs)

    def check(bits, ok):
        ok = _chain_ok(bits, slots, "E", C, M, ok)
        for n in inclusion.source.dims:
            if M.dim(n):
                ok = _eq_ok(bits, ok, [(None, slots.get(("E", n)), inclusion.comp(n))], target_map.comp(n))
        return ok

    return _enumerate(nbits, cap_bits, check)


# -- random generation -------------------------------------------------------------


def _rand_matrix(F: Field, rng, rows: int, cols: int) -> Matrix:
    if F.p is None:
        vals = rng.integers(-2, 3, size=(rows, cols))
    else:
        vals = rng.integers(0, F.p, size=(rows, cols))
    return Matrix(F, vals.astype(object) if rows and cols else np.zeros((rows, cols), dtype=object))


def random_complex(F: Field, rng, width: int, max_dim: int, lo: int = 0, dims: dict | None = None) -> ChainComplex:
    """Random complex supported in ``[lo, lo + width)`` with ``d∘d = 0``."""
    if dims is None:
        dims = {n: int(rng.integers(0, max_dim + 1)) for n in range(lo, lo + width)}
    d = {}
    prev = None
    for n in sorted(dims):
        if n - 1 in dims and prev is not None:
            ker = kernel_basis(prev) if prev.cols else Matrix.identity(F, dims[n - 1])
            R = _rand_matrix(F, rng, ker.cols, dims[n])
            d[n] = ker @ R
            prev = d[n]
        else:
            prev = Matrix.zeros(F, dims.get(n - 1, 0), dims[n])
    c = ChainComplex(F, dims, d)
    assert not validate(c)
    return c


def random_chain_map(S: ChainComplex, T: ChainComplex, rng) -> ChainMap:
    """Uniformly random chain map ``S -> T``."""
    sys = LinearSystem(S.field)
    u = MapUnknown(sys, S, T)
    x = sys.solve(rng)
    return u.value(x)


def random_invertible(F: Field, n: int, rng) -> Matrix:
    for _ in range(200):
        m = _rand_matrix(F, rng, n, n)
        if rank(m) == n:
            return m
    return Matrix.identity(F, n)


def transport(c: ChainComplex, P: dict, Pinv: dict) -> ChainComplex:
    """The complex with differential ``P d P^{-1}`` (so ``P`` is a chain iso c -> result)."""
    F = c.field
    d = {}
    for n, m in c.d.items():
        d[n] = P[n - 1] @ m @ Pinv[n]
    return ChainComplex(F, c.dims, d)


def random_automorphism(c: ChainComplex, rng):
    """A random isomorphic copy ``c'`` with the iso ``c -> c'`` and its inverse."""
    from .exactlin import solve_affine

    F = c.field
    P, Pinv = {}, {}
    for n, k in c.dims.items():
        m = random_invertible(F, k, rng)
        P[n] = m
        Pinv[n] = solve_affine(m, Matrix.identity(F, k)).x
    for n in range(c.lo - 1, c.hi + 2) if c.dims else ():
        P.setdefault(n, Matrix.identity(F, 0))
        Pinv.setdefault(n, Matrix.identity(F, 0))
    new = transport(c, P, Pinv)
    fwd = ChainMap(c, new, {n: P[n] for n in c.dims})
    back = ChainMap(new, c, {n: Pinv[n] for n in c.dims})
    return new, fwd, back


def random_extension(A: ChainComplex, E_dims: dict, rng):
    """``B = A ⊕ E`` with a random twist ``E_n -> A_{n-1}``.

    Returns ``(B, inclusion A -> B, projection B -> E, E)``; the inclusion is
    a cofibration and the projection a fibration.
    """
    F = A.field
    E = random_complex(F, rng, 0, 0, dims={n: k for n, k in E_dims.items() if k})
    sys = LinearSystem(F)
    t = MapUnknown(sys, E, A, chain=False, shift=-1)
    lo = min(list(A.dims) + list(E.dims), default=0) - 1
    hi = max(list(A.dims) + list(E.dims), default=0) + 2
    for n in range(lo, hi):
        # d_A t_n + t_{n-1} d_E = 0 as maps E_n -> A_{n-2}
        if not (E.dim(n) and A.dim(n - 2)):
            continue
        terms = []
        x = t.term(n, A.diff(n - 1), None)
        if x:
            terms.append(x)
        x = t.term(n - 1, None, E.diff(n))
        if x:
            terms.append(x)
        sys.equation(terms, Matrix.zeros(F, A.dim(n - 2), E.dim(n)))
    tw = t.graded_value(sys.solve(rng))
    dims = {n: A.dim(n) + E.dim(n) for n in set(A.dims) | set(E.dims)}
    d = {}
    for n in dims:
        blocks = {(0, 0): A.diff(n), (1, 1): E.diff(n)}
        if n in tw:
            blocks[(0, 1)] = tw[n]
        d[n] = Matrix.block(F, [A.dim(n - 1), E.dim(n - 1)], [A.dim(n), E.dim(n)], blocks)
    B = ChainComplex(F, dims, d)
    inc = ChainMap(A, B, {n: Matrix.block(F, [k, E.dim(n)], [k], {(0, 0): Matrix.identity(F, k)}) for n, k in A.dims.items()})
    proj = ChainMap(B, E, {n: Matrix.block(F, [k], [A.dim(n), k], {(0, 1): Matrix.identity(F, k)}) for n, k in E.dims.items()})
    assert not validate(B) and not validate_map(inc) and not validate_map(proj)
    return B, inc, proj, E


def _split_dims(rng, width, max_dim, lo=0):
    a = {n: int(rng.integers(0, max_dim + 1)) for n in range(lo, lo + width)}
    e = {n: int(rng.integers(0, max_dim - a[n] + 1)) for n in a}
    return a, e


def random_cofibration(F: Field, rng, width: int, max_dim: int) -> ChainMap:
    """A degreewise injection ``A -> B`` with twisted complement, in random bases."""
    a_dims, e_dims = _split_dims(rng, width, max_dim)
    A = random_complex(F, rng, 0, 0, dims={n: k for n, k in a_dims.items() if k})
    B, i, _, _ = random_extension(A, e_dims, rng)
    _, fwd, _ = random_automorphism(B, rng)
    return compose(fwd, i)


def random_quasi_iso(F: Field, rng, width: int, max_dim: int) -> ChainMap:
    """``Z ⊕ D_X -> Z ⊕ D_Y`` with identity on ``Z`` and ``D_*`` sums of disks,
    then moved to random bases."""
    lo = 0
    core = random_complex(F, rng, width, max(1, max_dim // 2), lo)
    room = {n: max_dim - core.dim(n) for n in range(lo, lo + width)}

    def disks():
        D = ChainComplex(F, {})
        space = dict(room)
        for n in range(lo + 1, lo + width):
            if space.get(n, 0) > 0 and space.get(n - 1, 0) > 0 and rng.random() < 0.5:
                D = direct_sum(D, disk(F, n))
                space[n] -= 1
                space[n - 1] -= 1
        return D

    DX, DY = disks(), disks()
    X = direct_sum(core, DX)
    Y = direct_sum(core, DY)
    tau = random_chain_map(DX, core, rng)
    rho = random_chain_map(core, DY, rng)
    sigma = random_chain_map(DX, DY, rng)
    comps = {}
    for n in X.dims:
        if not Y.dim(n):
            continue
        comps[n] = Matrix.block(
            F,
            [core.dim(n), DY.dim(n)],
            [core.dim(n), DX.dim(n)],
            {(0, 0): Matrix.identity(F, core.dim(n)), (0, 1): tau.comp(n), (1, 0): rho.comp(n), (1, 1): sigma.comp(n)},
        )
    alpha = ChainMap(X, Y, comps)
    X2, _, xback = random_automorphism(X, rng)
    Y2, yfwd, _ = random_automorphism(Y, rng)
    alpha = compose(yfwd, compose(alpha, xback))
    assert is_quasi_iso(alpha)
    return alpha


def random_fibration(Y: ChainComplex, rng, extra_dims: dict) -> ChainMap:
    """A surjection ``X -> Y`` with ``X`` an extension of ``Y`` by a random kernel."""
    F = Y.field
    K = random_complex(F, rng, 0, 0, dims={n: k for n, k in extra_dims.items() if k})
    X, inc, proj, E = _extension_onto(K, Y, rng)
    X2, _, xback = random_automorphism(X, rng)
    alpha = compose(proj, xback)
    assert is_fibration(alpha)
    return alpha


def _extension_onto(K: ChainComplex, Y: ChainComplex, rng):
    """``X = K ⊕ Y`` with a random twist ``Y_n -> K_{n-1}``; projection onto ``Y``."""
    F = Y.field
    sys = LinearSystem(F)
    t = MapUnknown(sys, Y, K, chain=False, shift=-1)
    lo = min(list(K.dims) + list(Y.dims), default=0) - 1
    hi = max(list(K.dims) + list(Y.dims), default=0) + 2
    for n in range(lo, hi):
        if not (Y.dim(n) and K.dim(n - 2)):
            continue
        terms = []
        x = t.term(n, K.diff(n - 1), None)
        if x:
            terms.append(x)
        x = t.term(n - 1, None, Y.diff(n))
        if x:
            terms.append(x)
        sys.equation(terms, Matrix.zeros(F, K.dim(n - 2), Y.dim(n)))
    tw = t.graded_value(sys.solve(rng))
    dims = {n: K.dim(n) + Y.dim(n) for n in set(K.dims) | set(Y.dims)}
    d = {}
    for n in dims:
        blocks = {(0, 0): K.diff(n), (1, 1): Y.diff(n)}
        if n in tw:
            blocks[(0, 1)] = tw[n]
        d[n] = Matrix.block(F, [K.dim(n - 1), Y.dim(n - 1)], [K.dim(n), Y.dim(n)], blocks)
    X = ChainComplex(F, dims, d)
    inc = ChainMap(K, X, {n: Matrix.block(F, [k, Y.dim(n)], [k], {(0, 0): Matrix.identity(F, k)}) for n, k in K.dims.items()})
    proj = ChainMap(X, Y, {n: Matrix.block(F, [k], [K.dim(n), k], {(0, 1): Matrix.identity(F, k)}) for n, k in Y.dims.items()})
    assert not validate(X) and not validate_map(proj)
    return X, inc, proj, Y


@dataclass(frozen=True)
class InstanceParams:
    """``field`` is a prime or 0 for Q; ``seed`` fixes the instance completely."""

    field: int = 2
    width: int = 4
    max_dim: int = 3
    plant_lift: bool = False
    force_cofibration_i: bool = True
    force_quasi_iso_alpha: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.width < 1 or self.max_dim < 1:
            raise ValueError("width and max_dim must be positive")

    @property
    def ground(self) -> Field:
        return Field(None) if self.field == 0 else Field(self.field)


def _rng(seed: int, index: int = 0, salt: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), index, salt]))


def _random_source_target(params: InstanceParams, rng):
    F = params.ground
    w, m = params.width, params.max_dim
    if params.force_cofibration_i:
        i = random_cofibration(F, rng, w, m)
        A, B = i.source, i.target
    else:
        A = random_complex(F, rng, w, m)
        B = random_complex(F, rng, w, m)
        i = random_chain_map(A, B, rng)
    return A, B, i


def _random_alpha(params: InstanceParams, rng):
    F = params.ground
    w, m = params.width, params.max_dim
    if params.force_quasi_iso_alpha:
        return random_quasi_iso(F, rng, w, m)
    X = random_complex(F, rng, w, m)
    Y = random_complex(F, rng, w, m)
    return random_chain_map(X, Y, rng)


def random_instance(params: InstanceParams, index: int = 0, retries: int = 50) -> LiftingProblem:
    """A valid lifting problem determined by ``(params.seed, index)``."""
    rng = _rng(params.seed, index)
    A, B, i = _random_source_target(params, rng)
    alpha = _random_alpha(params, rng)
    X, Y = alpha.source, alpha.target
    ca = cylinder(A)
    if params.plant_lift:
        g = random_chain_map(B, X, rng)
        cb = cylinder(B)
        sys = LinearSystem(params.ground)
        K = MapUnknown(sys, cb.obj, Y)
        from .solver import require

        require(sys, [(None, K, cb.i1, 1)], compose(alpha, g))
        Kv = K.value(sys.solve(rng))
        p = LiftingProblem(i, alpha, compose(Kv, cb.i0), compose(g, i), compose(Kv, cylinder_map(i)))
        p.check()
        return p
    from .solver import require

    for attempt in range(retries):
        h = random_chain_map(A, X, rng) if attempt < retries - 1 else zero_map(A, X)
        sys = LinearSystem(params.ground)
        f = MapUnknown(sys, B, Y)
        H = MapUnknown(sys, ca.obj, Y)
        require(sys, [(None, H, ca.i0, 1), (None, f, i, -1)], zero_map(A, Y))
        require(sys, [(None, H, ca.i1, 1)], compose(alpha, h))
        x = sys.solve(rng)
        if x is None:
            continue
        p = LiftingProblem(i, alpha, f.value(x), h, H.value(x))
        p.check()
        return p
    raise SamplingError(f"no commuting solid diagram after {retries} attempts (seed {params.seed}, index {index})")


def planted_section_instance(params: InstanceParams, index: int = 0):
    """A commuting square ``(i, h, α, f)`` with a planted strict diagonal and α a fibration.

    Returns ``(i, h, alpha, f, theta)``.
    """
    rng = _rng(params.seed, index, salt=7)
    F = params.ground
    w, m = params.width, params.max_dim
    A, B, i = _random_source_target(InstanceParams(params.field, w, m, force_cofibration_i=True, seed=params.seed), rng)
    Y = random_complex(F, rng, w, max(1, m - 1))
    extra = {n: int(rng.integers(0, max(0, m - Y.dim(n)) + 1)) for n in range(0, w)}
    alpha = random_fibration(Y, rng, extra)
    X = alpha.source
    theta = random_chain_map(B, X, rng)
    return i, compose(theta, i), alpha, compose(alpha, theta), theta


def random_cospan(params: InstanceParams, index: int = 0):
    """Random ``α: X -> Y`` and ``β: X -> Z``."""
    rng = _rng(params.seed, index, salt=11)
    F = params.ground
    X = random_complex(F, rng, params.width, params.max_dim)
    Y = random_complex(F, rng, params.width, params.max_dim)
    Z = random_complex(F, rng, params.width, params.max_dim)
    return random_chain_map(X, Y, rng), random_chain_map(X, Z, rng)


def tiny_instances(count: int, seed: int = 0, cap_bits: int = 20):
    """``count`` F_2 problems whose HELP and χ-extension searches both fit in ``cap_bits``.

    Yields ``(index, problem, chi)``; instances alternate between free and
    planted draws so both verdicts occur.
    """
    found = 0
    index = 0
    while found < count:
        params = InstanceParams(field=2, width=2, max_dim=2, plant_lift=bool(index % 2), seed=seed)
        p = random_instance(params, index)
        index += 1
        if help_unknown_bits(p) > cap_bits:
            continue
        chi = build_chi(p)
        if extension_unknown_bits(chi.inclusion, chi.chi) > cap_bits:
            continue
        found += 1
        yield index - 1, p, chi
    return


# -- the theorem harness -------------------------------------------------------------


@dataclass
class TheoremReport:
    count: int = 0
    help_solvable: int = 0
    chi_trivial: int = 0
    agreements: int = 0
    extracted_ok: int = 0
    forward_ok: int = 0
    gap_quasi_iso: int = 0
    quasi_iso_alpha: int = 0
    cocylinder_ok: int = 0
    errors: int = 0
    seconds: float = 0.0
    counterexamples: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and self.errors == 0

    def summary(self) -> str:
        return (
            f"{self.count} instances: {self.help_solvable} HELP-solvable, {self.chi_trivial} with trivial χ, "
            f"{len(self.counterexamples)} counterexamples, {self.errors} errors "
            f"({self.seconds:.1f}s)"
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def check_instance(p: LiftingProblem, gap_lift: str = "cocylinder", with_forward: bool = True, with_gap: bool = True) -> dict:
    """Run every check on one instance; returns a dict of verdicts."""
    out: dict = {}
    sol = solve_help(p)
    out["help"] = sol is not None
    c = build_chi(p)
    ext = is_chi_trivial(c)
    out["chi_trivial"] = ext is not None
    out["agree"] = out["help"] == out["chi_trivial"]
    if ext is not None:
        lifted = extract_lift_from_trivial_chi(p, c, ext, gap_lift=gap_lift)
        out["extracted_ok"] = lifted.is_valid(p)
    if sol is not None and with_forward:
        fw = forward_direction(p, sol)
        out["forward_ok"] = compose(fw.extension, fw.chi.inclusion) == fw.chi.chi and fw.canonical_trivial
    if with_gap:
        out["gap_quasi_iso"] = is_quasi_iso(gap_map(p.alpha, p.alpha, c.hpo).b)
    if is_quasi_iso(p.alpha):
        out["quasi_iso_alpha"] = True
        via = solve_help_via_cocylinder(p)
        out["cocylinder_ok"] = via.is_valid(p) and out["help"]
    return out


def verify_theorem(params: InstanceParams, count: int, gap_lift: str = "cocylinder", problem_encoder=None) -> TheoremReport:
    """Check the biconditional (and the constructive steps) on ``count`` instances."""
    rep = TheoremReport()
    t0 = time.perf_counter()
    for k in range(count):
        p = random_instance(params, k)
        rep.count += 1
        try:
            res = check_instance(p, gap_lift=gap_lift)
        except Exception as exc:  # report-valued: record and move on
            rep.errors += 1
            rep.counterexamples.append(_bundle(p, k, f"{type(exc).__name__}: {exc}", problem_encoder))
            continue
        rep.help_solvable += res["help"]
        rep.chi_trivial += res["chi_trivial"]
        rep.agreements += res["agree"]
        rep.extracted_ok += res.get("extracted_ok", False)
        rep.forward_ok += res.get("forward_ok", False)
        rep.gap_quasi_iso += res.get("gap_quasi_iso", False)
        rep.quasi_iso_alpha += res.get("quasi_iso_alpha", False)
        rep.cocylinder_ok += res.get("cocylinder_ok", False)
        failed = [
            key for key in ("agree", "extracted_ok", "forward_ok", "gap_quasi_iso", "cocylinder_ok")
            if key in res and not res[key]
        ]
        if failed:
            rep.counterexamples.append(_bundle(p, k, "failed: " + ", ".join(failed), problem_encoder))
    rep.seconds = time.perf_counter() - t0
    return rep


def _bundle(p, index, reason, encoder):
    if encoder is None:
        from .serialize import problem_to_json

        encoder = problem_to_json
    return {"index": index, "reason": reason, "problem": encoder(p)}
