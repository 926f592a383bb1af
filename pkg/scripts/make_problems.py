"""Regenerate the problem files in ``problems/``."""

from pathlib import Path

from liftobs.chain import ChainMap, disk, identity, sphere, zero_complex
from liftobs.exactlin import GF2, QQ, Matrix
from liftobs.oracle import InstanceParams, help_unknown_bits, planted_section_instance, random_instance
from liftobs.serialize import dumps, problem_to_json
from liftobs.solver import LiftingProblem

OUT = Path(__file__).resolve().parent.parent / "problems"


def identity_problem(F):
    S0, D1 = sphere(F, 0), disk(F, 1)
    i = ChainMap(S0, D1, {0: Matrix(F, [[1]])})
    return LiftingProblem.degenerate(i, identity(D1), identity(D1), i)


def s0_into_empty():
    Z, S0 = zero_complex(GF2), sphere(GF2, 0)
    return LiftingProblem.degenerate(ChainMap(Z, S0), ChainMap(Z, S0), identity(S0), ChainMap(Z, Z))


def small_planted(field, seed, cap=20):
    for index in range(200):
        p = random_instance(InstanceParams(field=field, width=2, max_dim=2, plant_lift=True, seed=seed), index)
        if p.B.total_dim and p.X.total_dim and p.i.source.total_dim and help_unknown_bits(p) <= cap:
            return p, index
    raise RuntimeError("no small planted instance found")


def main():
    OUT.mkdir(exist_ok=True)
    files = {
        "identity.json": (identity_problem(GF2), {"description": "alpha = id on the disk D1; a lift exists"}),
        "identity_q.json": (identity_problem(QQ), {"description": "the identity example over Q"}),
        "s0_into_empty.json": (
            s0_into_empty(),
            {"description": "A = 0, X = 0, B = Y = S0, f = id; chi is nontrivial and there is no lift"},
        ),
    }
    p, index = small_planted(2, seed=11)
    files["planted.json"] = (p, {"description": "planted-lift instance over F_2", "seed": 11, "index": index})
    for seed in range(100):
        i, h, alpha, f, _ = planted_section_instance(InstanceParams(field=2, width=2, max_dim=2, seed=seed))
        if i.source.total_dim and i.source.total_dim < i.target.total_dim:
            break
    files["section.json"] = (
        LiftingProblem.degenerate(i, alpha, f, h),
        {"description": "commuting square with a planted strict diagonal; alpha is a fibration", "seed": seed},
    )
    for name, (prob, meta) in files.items():
        (OUT / name).write_text(dumps(problem_to_json(prob, meta)))
        print("wrote", name)


if __name__ == "__main__":
    main()
