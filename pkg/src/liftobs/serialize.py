"""JSON interchange for complexes, maps, lifting problems and certificates.

Complexes are ``{"dims": {"0": 1}, "d": {"1": [[...]]}}`` and maps are
``{"from": name, "to": name, "components": {"n": matrix}}``.  Entries are
integers over F_p and integers or ``"a/b"`` strings over Q.  Output always
uses sorted keys, so serialization is canonical.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .chain import ChainComplex, ChainMap, compose, validate, validate_map
from .constructions import cylinder, double_mapping_cylinder, factor_cof_afib, homotopy_pushout
from .exactlin import Field, Matrix, ShapeError
from .solver import HelpSolution, LiftingProblem, extension_system, help_system

__all__ = [
    "ParseError",
    "CERTIFICATE_KINDS",
    "matrix_to_json",
    "matrix_from_json",
    "complex_to_json",
    "complex_from_json",
    "map_to_json",
    "map_from_json",
    "problem_to_json",
    "problem_from_json",
    "load_problem",
    "dumps",
    "problem_digest",
    "witness_digest",
    "help_certificate",
    "chi_certificate",
    "strict_lift_certificate",
    "help_nonexistence_certificate",
    "chi_nonexistence_certificate",
    "verify_certificate",
]

COMPLEX_NAMES = ("A", "B", "X", "Y")
MAP_ENDPOINTS = {
    "i": ("A", "B"),
    "alpha": ("X", "Y"),
    "f": ("B", "Y"),
    "h": ("A", "X"),
    "H": ("cyl(A)", "Y"),
}
CERTIFICATE_KINDS = ("help_solution", "chi_extension", "strict_lift", "nonexistence")


class ParseError(ValueError):
    """Malformed or invalid input; the message names the offending field."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _sha(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


# -- matrices, complexes, maps -----------------------------------------------------


def matrix_to_json(m: Matrix) -> list:
    F = m.field
    return [[F.to_json(v) for v in row] for row in m.a.tolist()]


def matrix_from_json(F: Field, data, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ParseError(f"{where}: expected a list of rows")
    if rows == 0 or cols == 0:
        if any(len(r) for r in data) or (data and rows == 0):
            raise ParseError(f"{where}: expected an empty {rows}x{cols} matrix")
        return Matrix.zeros(F, rows, cols)
    if len(data) != rows or any(len(r) != cols for r in data):
        got = f"{len(data)}x{len(data[0]) if data else 0}"
        raise ParseError(f"{where}: expected a {rows}x{cols} matrix, got {got}")
    for a, r in enumerate(data):
        for b, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, (int, str)):
                raise ParseError(f"{where}[{a}][{b}]: entry {v!r} is not an integer or \"a/b\" string")
    try:
        return Matrix(F, data, rows, cols)
    except (ValueError, ZeroDivisionError, ShapeError) as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _degree(key, where: str) -> int:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: degree key {key!r} is not an integer") from None


def complex_to_json(c: ChainComplex) -> dict:
    return {
        "dims": {str(n): k for n, k in sorted(c.dims.items())},
        "d": {str(n): matrix_to_json(m) for n, m in sorted(c.d.items())},
    }


def complex_from_json(F: Field, obj, where: str) -> ChainComplex:
    if not isinstance(obj, dict) or "dims" not in obj:
        raise ParseError(f"{where}: expected an object with \"dims\"")
    unknown = set(obj) - {"dims", "d"}
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {sorted(unknown)}")
    dims = {}
    for key, k in obj["dims"].items():
        n = _degree(key, f"{where}.dims")
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise ParseError(f"{where}.dims.{key}: dimension must be a non-negative integer")
        dims[n] = k
    d = {}
    for key, data in (obj.get("d") or {}).items():
        n = _degree(key, f"{where}.d")
        d[n] = matrix_from_json(F, data, dims.get(n - 1, 0), dims.get(n, 0), f"{where}.d.{key}")
    c = ChainComplex(F, dims, d)
    bad = validate(c)
    if bad:
        raise ParseError(f"{where}: " + "; ".join(bad))
    return c


def map_to_json(f: ChainMap, source: str, target: str) -> dict:
    comps = {}
    for n, k in sorted(f.source.dims.items()):
        if f.target.dim(n):
            comps[str(n)] = matrix_to_json(f.comp(n))
    return {"from": source, "to": target, "components": comps}


def map_from_json(obj, source: ChainComplex, target: ChainComplex, where: str) -> ChainMap:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    F = source.field
    comps = {}
    for key, data in (obj.get("components") or {}).items():
        n = _degree(key, f"{where}.components")
        comps[n] = matrix_from_json(F, data, target.dim(n), source.dim(n), f"{where}.components.{key}")
    f = ChainMap(source, target, comps)
    bad = validate_map(f)
    if bad:
        raise ParseError(f"{where}: not a chain map: " + "; ".join(bad))
    return f


# -- problems ----------------------------------------------------------------------


def problem_to_json(p: LiftingProblem, metadata: dict | None = None) -> dict:
    out = {
        "field": p.field.descriptor(),
        "complexes": {name: complex_to_json(c) for name, c in zip(COMPLEX_NAMES, (p.A, p.B, p.X, p.Y))},
        "maps": {
            name: map_to_json(m, *MAP_ENDPOINTS[name])
            for name, m in (("i", p.i), ("alpha", p.alpha), ("f", p.f), ("h", p.h), ("H", p.H))
        },
    }
    if metadata:
        out["metadata"] = metadata
    return out


def problem_from_json(obj) -> tuple[LiftingProblem, dict]:
    """Parse and validate; raises :class:`ParseError` naming the bad field."""
    if not isinstance(obj, dict):
        raise ParseError("top level: expected an object")
    if "field" not in obj:
        raise ParseError("field: missing")
    try:
        F = Field.parse(obj["field"])
    except (ValueError, TypeError) as exc:
        raise ParseError(f"field: {exc}") from exc
    cx = obj.get("complexes")
    if not isinstance(cx, dict):
        raise ParseError("complexes: missing or not an object")
    complexes = {}
    for name in COMPLEX_NAMES:
        if name not in cx:
            raise ParseError(f"complexes.{name}: missing")
        complexes[name] = complex_from_json(F, cx[name], f"complexes.{name}")
    complexes["cyl(A)"] = cylinder(complexes["A"]).obj
    maps_obj = obj.get("maps")
    if not isinstance(maps_obj, dict):
        raise ParseError("maps: missing or not an object")
    unknown = set(maps_obj) - set(MAP_ENDPOINTS)
    if unknown:
        raise ParseError(f"maps: unknown map(s) {sorted(unknown)}")
    maps = {}
    for name, (src, tgt) in MAP_ENDPOINTS.items():
        if name not in maps_obj:
            if name == "H":
                continue
            raise ParseError(f"maps.{name}: missing")
        m = maps_obj[name]
        for side, want in (("from", src), ("to", tgt)):
            ref = m.get(side) if isinstance(m, dict) else None
            if ref is None:
                raise ParseError(f"maps.{name}.{side}: missing")
            if ref not in complexes:
                raise ParseError(f"maps.{name}.{side}: unknown complex {ref!r}")
            if ref != want:
                raise ParseError(f"maps.{name}.{side}: must be {want!r}, got {ref!r}")
        maps[name] = map_from_json(m, complexes[src], complexes[tgt], f"maps.{name}")
    if "H" in maps:
        p = LiftingProblem(maps["i"], maps["alpha"], maps["f"], maps["h"], maps["H"])
    else:
        if compose(maps["f"], maps["i"]) != compose(maps["alpha"], maps["h"]):
            raise ParseError("maps.H: missing, and the square does not commute (f∘i ≠ α∘h) so no degenerate default exists")
        p = LiftingProblem.degenerate(maps["i"], maps["alpha"], maps["f"], maps["h"])
    bad = p.violations()
    if bad:
        raise ParseError("problem: " + "; ".join(bad))
    meta = obj.get("metadata") or {}
    if not isinstance(meta, dict):
        raise ParseError("metadata: expected an object")
    return p, meta


def load_problem(path) -> tuple[LiftingProblem, dict]:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return problem_from_json(obj)


def problem_digest(p: LiftingProblem) -> str:
    """sha256 of the canonical mathematical content (metadata excluded)."""
    return _sha(problem_to_json(p))


def witness_digest(witness: dict) -> str:
    return _sha(witness)


# -- certificates ------------------------------------------------------------------


def _certificate(kind: str, p: LiftingProblem, witness: dict, **extra) -> dict:
    cert = {
        "kind": kind,
        "problem_sha256": problem_digest(p),
        "witness": witness,
        "witness_sha256": witness_digest(witness),
    }
    cert.update(extra)
    return cert


def help_certificate(p: LiftingProblem, sol: HelpSolution) -> dict:
    return _certificate("help_solution", p, {"K": map_to_json(sol.K, "cyl(B)", "Y"), "g": map_to_json(sol.g, "B", "X")})


def chi_certificate(p: LiftingProblem, chi, extension: ChainMap) -> dict:
    return _certificate(
        "chi_extension",
        p,
        {
            "J": map_to_json(chi.J, "cyl(B)", "Y"),
            "hhat": map_to_json(chi.hhat, "B", "F(alpha)"),
            "extension": map_to_json(extension, "cyl(B)", "M(alpha,alpha)"),
        },
    )


def strict_lift_certificate(p: LiftingProblem, theta: ChainMap) -> dict:
    return _certificate("strict_lift", p, {"theta": map_to_json(theta, "B", "X")})


def _dual_json(F: Field, y: dict) -> dict:
    return {str(k): F.to_json(v) for k, v in sorted(y.items())}


def help_nonexistence_certificate(p: LiftingProblem) -> dict | None:
    """Dual vector ``y`` for the HELP system, or ``None`` if the system is solvable."""
    S, _, _ = help_system(p)
    y = S.dual_certificate()
    if y is None:
        return None
    return _certificate("nonexistence", p, {"dual": _dual_json(p.field, y)}, target="help")


def chi_nonexistence_certificate(p: LiftingProblem, chi) -> dict | None:
    """Dual vector for the extension system of ``χ`` (with its ``(J, ĥ)`` recorded)."""
    S, _ = extension_system(chi.inclusion, chi.chi)
    y = S.dual_certificate()
    if y is None:
        return None
    witness = {
        "J": map_to_json(chi.J, "cyl(B)", "Y"),
        "hhat": map_to_json(chi.hhat, "B", "F(alpha)"),
        "dual": _dual_json(p.field, y),
    }
    return _certificate("nonexistence", p, witness, target="chi_extension")


def _chi_from_witness(p: LiftingProblem, w: dict):
    from .obstruction import TheoremViolation, _glue_chi

    fact = factor_cof_afib(p.alpha)
    hpo = homotopy_pushout(p.alpha, p.alpha, fact)
    N = double_mapping_cylinder(p.i)
    J = map_from_json(w["J"], cylinder(p.B).obj, p.Y, "witness.J")
    hhat = map_from_json(w["hhat"], p.B, fact.obj, "witness.hhat")
    try:
        return _glue_chi(p, fact, hpo, N, J, hhat)
    except TheoremViolation as exc:
        raise _Reject(str(exc)) from None


class _Reject(Exception):
    pass


def _check_dual(S, dual: dict, F: Field) -> list[str]:
    try:
        y = {int(k): F.scalar(v) for k, v in dual.items()}
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        return [f"dual vector: {exc}"]
    return [] if S.check_dual(y) else ["dual vector does not certify inconsistency (y·A ≠ 0 or y·b ≠ 1)"]


def verify_certificate(p: LiftingProblem, cert: dict) -> list[str]:
    """Every reason the certificate fails for ``p``; empty when it checks out.

    Checks are matrix identities on the recorded witness; no solver runs.
    """
    if not isinstance(cert, dict):
        return ["certificate is not an object"]
    kind = cert.get("kind")
    if kind not in CERTIFICATE_KINDS:
        return [f"unknown certificate kind {kind!r}"]
    out = []
    if cert.get("problem_sha256") != problem_digest(p):
        out.append("problem hash mismatch")
    w = cert.get("witness")
    if not isinstance(w, dict):
        return out + ["witness missing"]
    if cert.get("witness_sha256") != witness_digest(w):
        out.append("witness hash mismatch")
    try:
        out += _verify_witness(p, kind, cert, w)
    except ParseError as exc:
        out.append(str(exc))
    except _Reject as exc:
        out.append(str(exc))
    except ValueError as exc:  # non-commuting gluing data, shape errors
        out.append(f"witness rejected: {exc}")
    except (KeyError, TypeError, AttributeError) as exc:
        out.append(f"malformed witness: {exc!r}")
    return out


def _verify_witness(p, kind, cert, w) -> list[str]:
    F = p.field
    if kind == "help_solution":
        K = map_from_json(w["K"], cylinder(p.B).obj, p.Y, "witness.K")
        g = map_from_json(w["g"], p.B, p.X, "witness.g")
        return HelpSolution(K, g).violations(p)
    if kind == "strict_lift":
        theta = map_from_json(w["theta"], p.B, p.X, "witness.theta")
        out = []
        if compose(p.alpha, theta) != p.f:
            out.append("α∘θ ≠ f")
        if compose(theta, p.i) != p.h:
            out.append("θ∘i ≠ h")
        return out
    if kind == "chi_extension":
        chi = _chi_from_witness(p, w)
        ext = map_from_json(w["extension"], cylinder(p.B).obj, chi.M, "witness.extension")
        return [] if compose(ext, chi.inclusion) == chi.chi else ["extension does not restrict to χ"]
    target = cert.get("target")
    if target == "help":
        S, _, _ = help_system(p)
        return _check_dual(S, w["dual"], F)
    if target == "chi_extension":
        chi = _chi_from_witness(p, w)
        S, _ = extension_system(chi.inclusion, chi.chi)
        return _check_dual(S, w["dual"], F)
    return [f"unknown nonexistence target {target!r}"]
