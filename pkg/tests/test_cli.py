import copy
import json

import pytest
from hypothesis import given, strategies as st

from liftobs.cli import main
from liftobs.oracle import InstanceParams, random_instance
from liftobs.serialize import (
    ParseError,
    dumps,
    help_certificate,
    problem_digest,
    problem_from_json,
    problem_to_json,
    verify_certificate,
)
from liftobs.solver import solve_help

seeds = st.integers(0, 2**32 - 1)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@given(st.sampled_from([2, 3, 0]), seeds)
def test_roundtrip_is_canonical(field, seed):
    p = random_instance(InstanceParams(field=field, width=3, max_dim=2, seed=seed))
    text = dumps(problem_to_json(p, {"seed": seed}))
    q, meta = problem_from_json(json.loads(text))
    assert meta == {"seed": seed}
    assert dumps(problem_to_json(q, meta)) == text
    assert problem_digest(q) == problem_digest(p)


def test_validate_ok(capsys, problems_dir):
    code, out, _ = run(capsys, "validate", problems_dir / "identity.json")
    assert code == 0 and "valid problem" in out


def test_validate_bad_differential(capsys, problems_dir, tmp_path):
    obj = json.loads((problems_dir / "identity.json").read_text())
    obj["complexes"]["B"] = {"dims": {"0": 1, "1": 1, "2": 1}, "d": {"1": [[1]], "2": [[1]]}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    code, _, err = run(capsys, "validate", path)
    assert code == 1
    assert "complexes.B" in err and "degree 2" in err


def test_validate_missing_reference(capsys, problems_dir, tmp_path):
    obj = json.loads((problems_dir / "identity.json").read_text())
    obj["maps"]["f"]["from"] = "W"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    code, _, err = run(capsys, "validate", path)
    assert code == 1 and "maps.f.from" in err and "'W'" in err


def test_validate_syntax_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"field": 2,\n  "complexes": }')
    code, _, err = run(capsys, "validate", path)
    assert code == 1 and "line 2" in err


def test_parse_errors_name_fields():
    with pytest.raises(ParseError, match="field"):
        problem_from_json({"field": 4})
    with pytest.raises(ParseError, match="complexes.A"):
        problem_from_json({"field": 2, "complexes": {}})


def test_chi_and_decide_verdicts(capsys, problems_dir):
    code, out, _ = run(capsys, "chi", problems_dir / "identity.json")
    assert code == 0 and "chi: TRIVIAL" in out
    code, out, _ = run(capsys, "chi", problems_dir / "s0_into_empty.json")
    assert code == 0 and "chi: NONTRIVIAL" in out and "N(i) dims: {0: 2}" in out
    code, out, _ = run(capsys, "decide", problems_dir / "identity.json")
    assert code == 0 and "LIFT EXISTS" in out
    code, out, _ = run(capsys, "decide", problems_dir / "s0_into_empty.json")
    assert code == 0 and "NO LIFT" in out


@pytest.mark.parametrize("name", ["identity.json", "s0_into_empty.json", "planted.json"])
def test_oracle_matches_decide(capsys, problems_dir, name):
    _, decided, _ = run(capsys, "decide", problems_dir / name)
    code, enumerated, _ = run(capsys, "oracle", problems_dir / name)
    assert code == 0
    assert enumerated.split(" (")[0].strip() == decided.strip().splitlines()[0]


def test_oracle_rejects_rationals(capsys, problems_dir):
    code, _, _ = run(capsys, "oracle", problems_dir / "identity_q.json")
    assert code == 1


@pytest.mark.parametrize(
    "name,cmd",
    [
        ("identity.json", "decide"),
        ("identity_q.json", "decide"),
        ("s0_into_empty.json", "decide"),
        ("planted.json", "chi"),
        ("s0_into_empty.json", "chi"),
        ("section.json", "strict"),
    ],
)
def test_certificates_verify(capsys, problems_dir, tmp_path, name, cmd):
    cert = tmp_path / "cert.json"
    args = ["decide", problems_dir / name, "--strict"] if cmd == "strict" else [cmd, problems_dir / name]
    code, _, _ = run(capsys, *args, "--out", cert)
    assert code == 0
    code, out, _ = run(capsys, "verify", problems_dir / name, cert)
    assert code == 0 and "VERIFIED" in out


def test_verify_rejects_wrong_problem(capsys, problems_dir, tmp_path):
    cert = tmp_path / "cert.json"
    run(capsys, "decide", problems_dir / "identity.json", "--out", cert)
    code, out, _ = run(capsys, "verify", problems_dir / "planted.json", cert)
    assert code == 1 and "problem hash mismatch" in out


def test_verify_checks_math_not_only_hashes():
    p = random_instance(InstanceParams(field=2, width=2, max_dim=2, plant_lift=True, seed=1))
    cert = help_certificate(p, solve_help(p))
    bad = copy.deepcopy(cert)
    comps = bad["witness"]["K"]["components"]
    n = next(k for k, m in comps.items() if m and m[0])
    comps[n][0][0] ^= 1
    from liftobs.serialize import witness_digest

    bad["witness_sha256"] = witness_digest(bad["witness"])  # re-sign the tampered witness
    reasons = verify_certificate(p, bad)
    assert reasons and not any("hash" in r for r in reasons)


def test_harness_command(capsys):
    code, out, _ = run(capsys, "harness", "--seed", 3, "--count", 5, "--width", 3, "--dim", 2)
    assert code == 0 and "0 counterexamples" in out
