"""The obstruction map χ: N(i) -> M(α, α) and the two directions of the lifting theorem.

``build_chi`` solves the auxiliary prism against ``f̃(α)`` for ``(J, ĥ)`` and
glues ``j′∘H``, ``j′∘f`` and ``j∘ĥ`` over the double mapping cylinder.
``χ`` is *trivial* when it extends strictly along ``N(i) -> Cyl(B)``.

``extract_lift_from_trivial_chi`` turns an extension back into a prism
completion by following the converse argument step by step: ``λ``, ``μ``,
``ν`` give a lift ``(ψ, φ)`` of ``N_0(i)`` into ``C(j)``; those induce
``Ψ``, ``Φ`` into the pullback ``P(α, α)``; a prism completion against the
gap map ``b(α, α)`` then pushes down to ``(K, g)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import (
    ChainMap,
    compose,
    is_acyclic_cofibration,
    is_acyclic_fibration,
    is_cofibration,
    is_fibration,
    is_quasi_iso,
)
from .constructions import (
    DoubleMappingCylinder,
    FactorizationACofFib,
    FactorizationCofAFib,
    GapMap,
    HomotopyPushout,
    cylinder,
    cylinder_map,
    double_mapping_cylinder,
    factor_acof_fib,
    factor_cof_afib,
    gap_map,
    homotopy_pushout,
    mapping_cylinder_side,
)
from .solver import (
    HelpSolution,
    HypothesisError,
    LiftingProblem,
    solve_extension,
    solve_help,
    solve_help_via_cocylinder,
    solve_square,
)

__all__ = [
    "TheoremViolation",
    "ChiPackage",
    "ForwardResult",
    "ExtractionTrace",
    "build_chi",
    "is_chi_trivial",
    "forward_direction",
    "extract_lift_from_trivial_chi",
    "section_strict_lift",
    "a_initial_specialization",
    "theorem_hypotheses",
]


class TheoremViolation(AssertionError):
    """A step the ambient model structure guarantees has failed."""


@dataclass(frozen=True, eq=False)
class ChiPackage:
    problem: LiftingProblem
    fact: FactorizationCofAFib
    hpo: HomotopyPushout
    N: DoubleMappingCylinder
    chi: ChainMap
    hhat: ChainMap  # B -> F(α)
    J: ChainMap  # Cyl(B) -> Y

    @property
    def M(self):
        return self.hpo.obj

    @property
    def inclusion(self) -> ChainMap:
        return self.N.iota

    def violations(self) -> list[str]:
        p = self.problem
        j, jp = self.hpo.j, self.hpo.jprime
        cb = cylinder(p.B)
        out = []
        if compose(self.chi, self.N.end0) != compose(jp, p.f):
            out.append("χ on the 0-end ≠ j′∘f")
        if compose(self.chi, self.N.end1) != compose(j, self.hhat):
            out.append("χ on the 1-end ≠ j∘ĥ")
        if compose(self.chi, self.N.cyl_leg) != compose(jp, p.H):
            out.append("χ on Cyl(A) ≠ j′∘H")
        if compose(self.hhat, p.i) != compose(self.fact.c, p.h):
            out.append("ĥ∘i ≠ c(α)∘h")
        if compose(self.J, cb.i0) != p.f:
            out.append("J∘i0 ≠ f")
        if compose(self.J, cylinder_map(p.i)) != p.H:
            out.append("J∘Cyl(i) ≠ H")
        if compose(self.J, cb.i1) != compose(self.fact.ftilde, self.hhat):
            out.append("J∘i1 ≠ f̃(α)∘ĥ")
        return out


def _glue_chi(p, fact, hpo, N, J, hhat) -> ChiPackage:
    j, jp = hpo.j, hpo.jprime
    chi = N.induced(compose(jp, p.H), compose(jp, p.f), compose(j, hhat), hpo.obj)
    pkg = ChiPackage(p, fact, hpo, N, chi, hhat, J)
    bad = pkg.violations()
    if bad:
        raise TheoremViolation("χ construction inconsistent: " + "; ".join(bad))
    return pkg


def build_chi(p: LiftingProblem, rng: np.random.Generator | None = None, witness: tuple[ChainMap, ChainMap] | None = None) -> ChiPackage:
    """Construct χ for ``p``.

    ``(J, ĥ)`` is the canonical witness of the auxiliary prism unless
    ``witness`` supplies one, or ``rng`` asks for a random one.
    """
    p.check()
    if not is_cofibration(p.i):
        raise HypothesisError("i is not a cofibration")
    fact = factor_cof_afib(p.alpha)
    hpo = homotopy_pushout(p.alpha, p.alpha, fact)
    N = double_mapping_cylinder(p.i)
    if witness is None:
        aux = LiftingProblem(p.i, fact.ftilde, p.f, compose(fact.c, p.h), p.H)
        sol = solve_help(aux, rng=rng, check=False)
        if sol is None:
            raise TheoremViolation("i does not have HELP against f̃(α)")
        J, hhat = sol.K, sol.g
    else:
        J, hhat = witness
    return _glue_chi(p, fact, hpo, N, J, hhat)


def is_chi_trivial(c: ChiPackage, rng=None) -> ChainMap | None:
    """An extension ``𝒳: Cyl(B) -> M(α, α)`` of χ, or ``None``."""
    return solve_extension(c.inclusion, c.chi, rng=rng)


@dataclass(frozen=True, eq=False)
class ForwardResult:
    chi: ChiPackage  # built from the witness-derived (J, ĥ) = (K, c(α) g)
    extension: ChainMap  # j′ ∘ K
    canonical_trivial: bool  # χ built with the canonical (J, ĥ) also extends


def forward_direction(p: LiftingProblem, sol: HelpSolution) -> ForwardResult:
    """Given a prism completion ``(K, g)``, exhibit χ as trivial explicitly."""
    if sol is None:
        raise ValueError("forward direction needs a HELP witness")
    bad = sol.violations(p)
    if bad:
        raise ValueError("not a HELP witness: " + "; ".join(bad))
    fact = factor_cof_afib(p.alpha)
    chi = build_chi(p, witness=(sol.K, compose(fact.c, sol.g)))
    ext = compose(chi.hpo.jprime, sol.K)
    if compose(ext, chi.inclusion) != chi.chi:
        raise TheoremViolation("j′∘K does not restrict to χ")
    canonical = build_chi(p)
    trivial = is_chi_trivial(canonical) is not None
    if not trivial:
        raise TheoremViolation("HELP solvable but canonical χ is not trivial")
    return ForwardResult(chi, ext, trivial)


@dataclass(frozen=True, eq=False)
class ExtractionTrace:
    jfact: FactorizationACofFib
    gap: GapMap
    lam: ChainMap  # λ: Cyl(A) -> C(j)
    mu: ChainMap  # μ: N_1(i) -> C(j)
    nu: ChainMap  # ν: Cyl(B) -> C(j)
    phi: ChainMap  # φ: B -> C(j)
    psi: ChainMap  # ψ: Cyl(A) -> C(j)
    Phi: ChainMap  # Φ: B -> P(α, α)
    Psi: ChainMap  # Ψ: Cyl(A) -> P(α, α)
    Psi_hat: ChainMap  # Ψ̂: Cyl(B) -> P(α, α)
    g_hat: ChainMap  # ĝ: B -> X


def extract_lift_from_trivial_chi(
    p: LiftingProblem,
    c: ChiPackage,
    extension: ChainMap,
    gap_lift: str = "cocylinder",
    return_trace: bool = False,
):
    """Build ``(K, g)`` from an extension of χ.

    ``gap_lift`` selects how the prism against the gap map is completed:
    ``"cocylinder"`` follows the path-object construction, ``"direct"``
    solves it as one linear system.
    """
    if compose(extension, c.inclusion) != c.chi:
        raise ValueError("extension does not restrict to χ")
    A = p.A
    ca, cb = cylinder(A), cylinder(p.B)
    fact, hpo = c.fact, c.hpo
    jp = hpo.jprime
    gap = gap_map(p.alpha, p.alpha, hpo)
    jf = gap.jfact
    ctj, fj = jf.ctilde, jf.f
    if not is_fibration(fj):
        raise TheoremViolation("f(j) is not a fibration")
    if not is_acyclic_cofibration(ca.i1):
        raise TheoremViolation("i1 on Cyl(A) is not an acyclic cofibration")

    # λ: lift of i1: A -> Cyl(A) against f(j)
    top = compose(ctj, compose(fact.c, p.h))
    lam = solve_square(ca.i1, top, fj, compose(jp, p.H))
    if lam is None:
        raise TheoremViolation("no lift λ")

    # μ: N_1(i) -> C(j) glued from λ and c̃(j)∘ĥ
    N1 = mapping_cylinder_side(p.i, 1)
    if not is_acyclic_cofibration(N1.iota):
        raise TheoremViolation("ι1 is not an acyclic cofibration")
    mu = N1.glue.induced(lam, compose(ctj, c.hhat), jf.obj)

    # ν: lift of ι1 against f(j) with bottom 𝒳
    nu = solve_square(N1.iota, mu, fj, extension)
    if nu is None:
        raise TheoremViolation("no lift ν")

    phi = compose(nu, cb.i0)
    psi = lam
    Phi = gap.square.induced(phi, p.f, p.B)
    Psi = gap.square.induced(psi, p.H, ca.obj)
    b = gap.b

    big = LiftingProblem(p.i, b, Phi, p.h, Psi)
    bad = big.violations()
    if bad:
        raise TheoremViolation("prism against the gap map does not commute: " + "; ".join(bad))
    if gap_lift == "cocylinder":
        sol = solve_help_via_cocylinder(big)
    elif gap_lift == "direct":
        sol = solve_help(big, check=False)
    else:
        raise ValueError(f"unknown gap_lift {gap_lift!r}")
    if sol is None:
        raise TheoremViolation("no completion of the prism against b(α, α)")
    result = HelpSolution(compose(gap.kprime, sol.K), sol.g)
    bad = result.violations(p)
    if bad:
        raise TheoremViolation("extracted witness fails: " + "; ".join(bad))
    if return_trace:
        trace = ExtractionTrace(jf, gap, lam, mu, nu, phi, psi, Phi, Psi, sol.K, sol.g)
        return result, trace
    return result


def section_strict_lift(i: ChainMap, h: ChainMap, alpha: ChainMap, f: ChainMap, gap_lift: str = "cocylinder") -> ChainMap | None:
    """A strict diagonal ``θ`` with ``θ i = h`` and ``α θ = f`` read off a trivial χ.

    ``H`` is the degenerate homotopy ``α h π``.  Returns ``None`` when χ is
    not trivial.
    """
    p = LiftingProblem.degenerate(i, alpha, f, h)
    c = build_chi(p)
    ext = is_chi_trivial(c)
    if ext is None:
        return None
    sol = extract_lift_from_trivial_chi(p, c, ext, gap_lift=gap_lift)
    ca = cylinder(p.A)
    N1 = mapping_cylinder_side(i, 1)
    top = N1.glue.induced(compose(h, ca.pi), sol.g, alpha.source)
    J = solve_square(N1.iota, top, alpha, sol.K)
    if J is None:
        raise HypothesisError("ι1 does not lift against α for this square")
    theta = compose(J, cylinder(p.B).i0)
    if compose(theta, i) != h or compose(alpha, theta) != f:
        raise TheoremViolation("section lift fails its square")
    return theta


@dataclass(frozen=True, eq=False)
class InitialResult:
    chi: ChiPackage
    extension: ChainMap | None
    solution: HelpSolution | None


def a_initial_specialization(p: LiftingProblem, gap_lift: str = "cocylinder") -> InitialResult:
    """The pipeline for ``A = 0``: χ lives on ``B ⊕ B``."""
    if not p.A.is_zero():
        raise ValueError("A must be the zero complex")
    c = build_chi(p)
    if c.N.obj.dims != {n: 2 * k for n, k in p.B.dims.items()}:
        raise TheoremViolation("N(0 -> B) is not B ⊕ B")
    ext = is_chi_trivial(c)
    sol = None if ext is None else extract_lift_from_trivial_chi(p, c, ext, gap_lift=gap_lift)
    return InitialResult(c, ext, sol)


def theorem_hypotheses(p: LiftingProblem, c: ChiPackage | None = None) -> dict[str, bool]:
    """Sufficient conditions, checked by predicates, for every hypothesis used."""
    c = c or build_chi(p)
    ca = cylinder(p.A)
    jf = factor_acof_fib(c.hpo.j)
    N0 = mapping_cylinder_side(p.i, 0)
    N1 = mapping_cylinder_side(p.i, 1)
    gap = gap_map(p.alpha, p.alpha, c.hpo)
    fact = c.fact
    return {
        "i cofibration": is_cofibration(p.i),
        "iota_0 acyclic cofibration": is_acyclic_cofibration(N0.iota),
        "iota_1 acyclic cofibration": is_acyclic_cofibration(N1.iota),
        "i_1,A square f(j)": is_acyclic_cofibration(ca.i1) and is_fibration(jf.f),
        "iota_1 square f(j)": is_acyclic_cofibration(N1.iota) and is_fibration(jf.f),
        "f~(alpha) acyclic fibration": is_acyclic_fibration(fact.ftilde),
        "N(i) -> Cyl(B) cofibration": is_cofibration(c.N.iota),
        "gap map quasi-iso": is_quasi_iso(gap.b),
    }
