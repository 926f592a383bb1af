"""Command-line front end: ``liftobs {validate,chi,decide,oracle,harness,verify}``.

Exit codes: 0 when a verdict was computed (whatever it is), 1 for invalid
input, 2 when a step the theory guarantees failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .chain import ChainComplex
from .exactlin import Field
from .obstruction import TheoremViolation, build_chi, is_chi_trivial, section_strict_lift
from .oracle import EnumerationCapExceeded, InstanceParams, enumerate_extension, enumerate_help, verify_theorem
from .serialize import (
    ParseError,
    chi_certificate,
    chi_nonexistence_certificate,
    dumps,
    help_certificate,
    help_nonexistence_certificate,
    load_problem,
    strict_lift_certificate,
    verify_certificate,
)
from .solver import HypothesisError, solve_help

EXIT_OK, EXIT_INVALID, EXIT_VIOLATION = 0, 1, 2


class InvalidInput(Exception):
    pass


def _dims(c: ChainComplex) -> str:
    if not c.dims:
        return "0"
    return "{" + ", ".join(f"{n}: {k}" for n, k in sorted(c.dims.items())) + "}"


def _load(path):
    try:
        return load_problem(path)
    except FileNotFoundError:
        raise InvalidInput(f"{path}: no such file") from None
    except ParseError as exc:
        raise InvalidInput(f"{path}: {exc}") from None


def _write(path, cert):
    if path:
        Path(path).write_text(dumps(cert))
        print(f"certificate written to {path}")


def cmd_validate(args) -> int:
    p, meta = _load(args.problem)
    print(f"valid problem over {p.field}")
    for name, c in (("A", p.A), ("B", p.B), ("X", p.X), ("Y", p.Y)):
        print(f"  {name}: dims {_dims(c)}")
    if meta.get("description"):
        print(f"  description: {meta['description']}")
    return EXIT_OK


def cmd_chi(args) -> int:
    p, _ = _load(args.problem)
    try:
        c = build_chi(p)
    except HypothesisError as exc:
        raise InvalidInput(f"{args.problem}: {exc}") from None
    print(f"N(i) dims: {_dims(c.N.obj)}")
    print(f"M(alpha,alpha) dims: {_dims(c.M)}")
    ext = is_chi_trivial(c)
    print("chi: TRIVIAL" if ext is not None else "chi: NONTRIVIAL")
    if args.out:
        cert = chi_certificate(p, c, ext) if ext is not None else chi_nonexistence_certificate(p, c)
        _write(args.out, cert)
    return EXIT_OK


def cmd_decide(args) -> int:
    p, _ = _load(args.problem)
    if args.strict:
        try:
            theta = section_strict_lift(p.i, p.h, p.alpha, p.f, gap_lift=args.gap_lift)
        except HypothesisError as exc:
            raise InvalidInput(f"{args.problem}: {exc}") from None
        if theta is None:
            print("NO STRICT LIFT FROM CHI (chi is nontrivial)")
            return EXIT_OK
        print("STRICT LIFT EXISTS")
        _write(args.out, strict_lift_certificate(p, theta))
        return EXIT_OK
    sol = solve_help(p)
    if sol is None:
        print("NO LIFT")
        if args.out:
            _write(args.out, help_nonexistence_certificate(p))
        return EXIT_OK
    print("LIFT EXISTS")
    if args.show:
        for name, m in (("K", sol.K), ("g", sol.g)):
            for n in sorted(m.source.dims):
                if m.target.dim(n):
                    print(f"  {name}_{n} = {m.comp(n).tolist()}")
    _write(args.out, help_certificate(p, sol))
    return EXIT_OK


def cmd_oracle(args) -> int:
    p, _ = _load(args.problem)
    if p.field.p != 2:
        raise InvalidInput("exhaustive enumeration needs a problem over F_2")
    try:
        census = enumerate_help(p, cap_bits=args.cap)
        print(f"{'LIFT EXISTS' if census.exists else 'NO LIFT'} ({census.count} of 2^{census.bits} candidates)")
        if args.chi:
            c = build_chi(p)
            ext = enumerate_extension(c.inclusion, c.chi, cap_bits=args.cap)
            verdict = "TRIVIAL" if ext.exists else "NONTRIVIAL"
            print(f"chi: {verdict} ({ext.count} of 2^{ext.bits} candidate extensions)")
    except EnumerationCapExceeded as exc:
        raise InvalidInput(str(exc)) from None
    except HypothesisError as exc:
        raise InvalidInput(str(exc)) from None
    return EXIT_OK


def cmd_harness(args) -> int:
    params = InstanceParams(
        field=Field.parse(args.field).characteristic,
        width=args.width,
        max_dim=args.dim,
        plant_lift=args.plant,
        force_cofibration_i=True,
        force_quasi_iso_alpha=args.quasi_iso,
        seed=args.seed,
    )
    rep = verify_theorem(params, args.count, gap_lift=args.gap_lift)
    print(rep.summary())
    print(
        f"  extraction valid on {rep.extracted_ok}/{rep.chi_trivial}; forward direction on "
        f"{rep.forward_ok}/{rep.help_solvable}; gap map quasi-iso on {rep.gap_quasi_iso}/{rep.count}; "
        f"cocylinder route on {rep.cocylinder_ok}/{rep.quasi_iso_alpha}"
    )
    if args.report:
        Path(args.report).write_text(dumps(rep.to_dict()))
    if args.bundles and rep.counterexamples:
        out = Path(args.bundles)
        out.mkdir(parents=True, exist_ok=True)
        for b in rep.counterexamples:
            prob = dict(b["problem"])
            prob["metadata"] = {"description": b["reason"], "seed": args.seed, "index": b["index"]}
            (out / f"counterexample_{b['index']:05d}.json").write_text(dumps(prob))
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_verify(args) -> int:
    p, _ = _load(args.problem)
    try:
        cert = json.loads(Path(args.certificate).read_text())
    except FileNotFoundError:
        raise InvalidInput(f"{args.certificate}: no such file") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{args.certificate}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    bad = verify_certificate(p, cert)
    if bad:
        print("REJECTED")
        for reason in bad:
            print(f"  {reason}")
        return EXIT_INVALID
    print(f"VERIFIED {cert['kind']}" + (f" ({cert['target']})" if cert.get("target") else ""))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="liftobs", description="Obstruction to homotopy extension and lifting for chain complexes over a field.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a problem file")
    s.add_argument("problem")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("chi", help="build chi and decide whether it is trivial")
    s.add_argument("problem")
    s.add_argument("--out", help="write a certificate here")
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("decide", help="solve the HELP lifting problem directly")
    s.add_argument("problem")
    s.add_argument("--out", help="write a certificate here")
    s.add_argument("--show", action="store_true", help="print the witness matrices")
    s.add_argument("--strict", action="store_true", help="read a strict diagonal off a trivial chi (alpha a fibration)")
    s.add_argument("--gap-lift", choices=("cocylinder", "direct"), default="cocylinder")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("oracle", help="decide by exhaustive enumeration (F_2 only)")
    s.add_argument("problem")
    s.add_argument("--cap", type=int, default=24, help="maximum number of unknown bits")
    s.add_argument("--chi", action="store_true", help="also enumerate extensions of chi")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("harness", help="check the lifting theorem on random instances")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--width", type=int, default=4)
    s.add_argument("--dim", type=int, default=3)
    s.add_argument("--field", default="2")
    s.add_argument("--plant", action="store_true", help="plant a lift in every instance")
    s.add_argument("--quasi-iso", action="store_true", help="force alpha to be a quasi-isomorphism")
    s.add_argument("--gap-lift", choices=("cocylinder", "direct"), default="cocylinder")
    s.add_argument("--report", help="write the JSON report here")
    s.add_argument("--bundles", help="directory for counterexample problem files")
    s.set_defaults(func=cmd_harness)

    s = sub.add_parser("verify", help="re-check a certificate against a problem")
    s.add_argument("problem")
    s.add_argument("certificate")
    s.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TheoremViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
