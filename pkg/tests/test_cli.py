"""
Tests for the command-line entry point.
"""

import json

import pytest

from monopole.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_parser, main

PARITY_CONFIG = """
seed = 3

[params]
m = "2/3"
alpha1 = 0.4
beta1 = 0.8
alpha2 = 0.3
beta2 = -0.7
a = 0.12
b = 0.07
c = 0.05

[parity]
max_m1m2 = 3
consistency_points = 2
consistency_max_sum = 4
"""

VERIFY_CONFIG = """
[params]
m = "2/3"
alpha1 = 0.4
beta1 = 0.8
alpha2 = 0.3
beta2 = -0.7
a = 0.12
b = 0.07
c = 0.05

[verification]
n_points = 2
m_list = ["2/3"]
"""


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """Run inside tmp_path so that logs and default outputs land there."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _config(workdir, text, name="experiment.toml"):
    path = workdir / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_parser_commands():
    args = build_parser().parse_args(["map", "--seed", "4", "--quiet"])
    assert (args.command, args.seed, args.quiet) == ("map", 4, True)


def test_parity(workdir, capsys):
    out = workdir / "parity"
    assert main(["parity", "--config", _config(workdir, PARITY_CONFIG), "--out", str(out), "--quiet"]) == EXIT_OK
    assert "parity passed: 3 files" in capsys.readouterr().out
    summary = json.loads((out / "parity_summary.json").read_text(encoding="utf-8"))
    assert summary["all_integer_S_powers"] is True
    assert (workdir / "logs" / "monopole.jsonl").exists()


def test_outputs_are_deterministic(workdir):
    config = _config(workdir, PARITY_CONFIG)
    for name in ("first", "second"):
        assert main(["parity", "--config", config, "--out", str(workdir / name), "--quiet"]) == EXIT_OK
    for file in ("parity.csv", "parity_consistency.csv", "parity_summary.json"):
        assert (workdir / "first" / file).read_bytes() == (workdir / "second" / file).read_bytes()


def test_default_output_directory(workdir):
    assert main(["reduce2d", "--config", _config(workdir, "[params]\nell = 1.0\n"), "--quiet"]) == EXIT_OK
    data = json.loads((workdir / "results" / "reduce2d" / "reduce2d.json").read_text(encoding="utf-8"))
    assert data["reductions"][0]["beta_pw"] == "1/2"


def test_verify(workdir):
    out = workdir / "verify"
    assert main(["verify", "--config", _config(workdir, VERIFY_CONFIG), "--out", str(out), "--quiet"]) == EXIT_OK
    assert (out / "verification.csv").exists()
    assert json.loads((out / "verification_summary.json").read_text(encoding="utf-8"))["passed"] is True


def test_seed_changes_sampled_points(workdir):
    config = _config(workdir, VERIFY_CONFIG)
    for seed in ("1", "2"):
        main(["verify", "--config", config, "--out", str(workdir / seed), "--seed", seed, "--quiet"])
    first = (workdir / "1" / "verification.csv").read_text(encoding="utf-8")
    second = (workdir / "2" / "verification.csv").read_text(encoding="utf-8")
    assert first != second


def test_failed_verification_exit_code(workdir):
    config = _config(workdir, VERIFY_CONFIG + "bracket_tol = 1e-30\noffbranch_tol = 1e-300\n")
    assert main(["verify", "--config", config, "--out", str(workdir / "v"), "--quiet"]) == EXIT_FAILED


@pytest.mark.parametrize("argv", [
    ["reduce2d"],
    ["map", "--config", "CONFIG"],
    ["parity", "--config", "MALFORMED"],
    ["parity", "--config", "missing.toml"],
    ["unknown"],
    ["parity", "--seed", "not-a-number"],
])
def test_usage_errors(workdir, argv):
    configs = {
        "CONFIG": _config(workdir, '[params]\nm = "2/3"\n[map]\nstrict = true\n', "map.toml"),
        "MALFORMED": _config(workdir, "[params\n", "bad.toml"),
    }
    argv = [configs.get(arg, arg) for arg in argv]
    assert main(argv + ["--quiet"]) == EXIT_USAGE


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert "monopole" in capsys.readouterr().out


def test_verify_in_wrong_gauge_is_rejected(workdir):
    config = _config(workdir, VERIFY_CONFIG.replace("c = 0.05\n", "c = 0.05\nell = 1.0\n"))
    assert main(["verify", "--config", config, "--out", str(workdir / "v"), "--quiet"]) == EXIT_USAGE
