import json

import pytest

from freegamma.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_moments_json(capsys):
    code, out, err = _run(
        capsys, "moments", "--t", "1", "--theta", "1", "--lambda", "1", "--n", "4"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert [row[1] for row in doc["rows"]] == ["1", "2", "6", "22"]


def test_moments_rational_flags(capsys):
    code, out, _ = _run(
        capsys, "moments", "--t", "1/2", "--theta", "3/2", "--lambda", "2", "--n", "2"
    )
    assert code == 0
    doc = json.loads(out)
    # kappa_2 = t * theta * lam = 3/2
    assert doc["rows"][1][2] == "3/2"


def test_csv_metadata_block(capsys):
    code, out, _ = _run(
        capsys,
        "moments", "--t", "1", "--theta", "1", "--lambda", "1",
        "--n", "2", "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# schema: 1"
    assert any(line.startswith("# params:") for line in lines)
    assert any(line.startswith("# version:") for line in lines)
    header_idx = next(i for i, l in enumerate(lines) if not l.startswith("#"))
    assert lines[header_idx] == "n,moment,free_cumulant"


def test_invalid_lambda_exit_2(capsys):
    code, out, err = _run(
        capsys, "density", "--t", "1", "--theta", "1", "--lambda", "0.5"
    )
    assert code == 2
    assert out == ""
    doc = json.loads(err)
    assert doc["schema"] == 1
    assert doc["error"] == "InvalidParameterError"


def test_unknown_flag_exit_2(capsys):
    code, _, _ = _run(capsys, "moments", "--nope", "1")
    assert code == 2


def test_density_output_deterministic(capsys):
    args = ("density", "--t", "1", "--theta", "1", "--lambda", "2", "--grid", "7")
    _, out1, _ = _run(capsys, *args)
    _, out2, _ = _run(capsys, *args)
    assert out1 == out2


def test_verify_free_suite_passes(capsys):
    code, out, _ = _run(
        capsys,
        "verify", "--t", "1", "--theta", "1", "--lambda", "1.5", "--suite", "free",
    )
    assert code == 0
    doc = json.loads(out)
    statuses = {row[0]: row[1] for row in doc["rows"]}
    assert all(s == "PASS" for s in statuses.values())
    assert len(statuses) == 11


def test_rmt_subcommand_small(capsys):
    code, out, _ = _run(
        capsys,
        "rmt", "--identity", "ADD_SEMIGROUP", "--dim", "150", "--seeds", "1",
    )
    # a single N=150 run can be noisy, so only check shape and determinism
    doc = json.loads(out)
    assert doc["rows"][0][0] == 0
    assert doc["seed"] == 0xC0FFEE


def test_transform_s_values(capsys):
    code, out, _ = _run(
        capsys,
        "transform", "--t", "1", "--theta", "1", "--lambda", "1",
        "--which", "s", "--grid", "3",
    )
    assert code == 0
    doc = json.loads(out)
    z, s = doc["rows"][1]
    assert z == pytest.approx(-0.5)
    assert s == pytest.approx(1.5)
