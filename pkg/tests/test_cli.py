import json
import math
import subprocess
import sys

import pytest

from nlyoung.cli import main
from nlyoung.experiments import ExperimentSpec, SpecValidationError, parse_quad_fragment


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_integrate_smooth_pass(capsys):
    code, out = run_cli(
        [
            "integrate", "--method", "both",
            "--field", "product:g=(sin),h=(identity)",
            "--path", "monomial:p=2",
            "--a", "0", "--b", "1",
            "--tau", "1", "--lambda", "1", "--gamma", "1",
            "--no-timestamp",
            "--tolerances",
            json.dumps({"expected_value": 2 * math.cos(1) - math.sin(1),
                        "rtol": 1e-4, "cross_err_factor": 5.0, "cross_rel": 0.02}),
        ],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert doc["reports"]["fractional"]["alpha"] == 0.5
    assert "runtime_ms" not in doc["reports"]["fractional"]
    assert all(c["passed"] for c in doc["checks"])


def test_integrate_tolerance_failure_exit_1(capsys):
    code, out = run_cli(
        [
            "integrate", "--method", "frac",
            "--field", "product:g=(identity),h=(identity)",
            "--path", "identity",
            "--a", "0", "--b", "1",
            "--tau", "1", "--lambda", "1", "--gamma", "1",
            "--no-timestamp",
            "--tolerances", json.dumps({"expected_value": 0.75, "rtol": 1e-6}),
        ],
        capsys,
    )
    assert code == 1


def test_inadmissible_exponents_exit_2(capsys):
    code, _ = run_cli(
        [
            "integrate", "--method", "frac",
            "--field", "product:g=(identity),h=(identity)",
            "--path", "identity",
            "--a", "0", "--b", "1",
            "--tau", "0.4", "--lambda", "1", "--gamma", "0.5",
        ],
        capsys,
    )
    err = capsys.readouterr().err if hasattr(capsys, "readouterr") else ""
    assert code == 2


def test_inadmissible_message_cites_condition(capsys):
    code = main(
        [
            "integrate", "--method", "frac",
            "--field", "product:g=(identity),h=(identity)",
            "--path", "identity",
            "--a", "0", "--b", "1",
            "--tau", "0.4", "--lambda", "1", "--gamma", "0.5",
        ]
    )
    captured = capsys.readouterr()
    assert code == 2
    assert "tau + lam*gamma" in captured.err


def test_unknown_suite_exit_2(capsys):
    code, _ = run_cli(["suite", "reduction"], capsys)
    assert code == 0
    with pytest.raises(SystemExit):
        main(["suite", "mystery"])  # argparse rejects unknown choices


def test_determinism_byte_identical(capsys):
    args = [
        "integrate", "--method", "both",
        "--field", "product:g=(identity),h=(identity)",
        "--path", "identity",
        "--a", "0", "--b", "1",
        "--tau", "1", "--lambda", "1", "--gamma", "1",
        "--no-timestamp",
    ]
    _, out1 = run_cli(args, capsys)
    _, out2 = run_cli(args, capsys)
    assert out1 == out2


def test_output_files_atomic(tmp_path, capsys):
    code, _ = run_cli(
        [
            "integrate", "--method", "frac",
            "--field", "product:g=(identity),h=(identity)",
            "--path", "identity",
            "--a", "0", "--b", "1",
            "--tau", "1", "--lambda", "1", "--gamma", "1",
            "--name", "atomic-test",
            "--out", str(tmp_path),
            "--no-timestamp",
        ],
        capsys,
    )
    assert code == 0
    assert (tmp_path / "atomic-test.json").exists()
    assert not list(tmp_path.glob("*.tmp"))
    doc = json.loads((tmp_path / "atomic-test.json").read_text())
    assert doc["reports"]["fractional"]["value"] == pytest.approx(0.5, abs=1e-5)


def test_young_subcommand(capsys):
    code, out = run_cli(
        ["young", "--f", "monomial:p=3", "--g", "monomial:p=2",
         "--a", "0", "--b", "1", "--no-timestamp"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == pytest.approx(0.4, abs=1e-5)


def test_young_csv_inputs(tmp_path, capsys):
    from nlyoung.paths import sample_function, write_path_csv

    write_path_csv(tmp_path / "f.csv", sample_function(lambda t: t, 0.0, 1.0, 512))
    write_path_csv(tmp_path / "g.csv", sample_function(lambda t: t, 0.0, 1.0, 512))
    code, out = run_cli(
        ["young", "--f", str(tmp_path / "f.csv"), "--g", str(tmp_path / "g.csv"),
         "--a", "0", "--b", "1", "--no-timestamp"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(0.5, abs=1e-4)


def test_frac_subcommand(capsys):
    code, out = run_cli(
        ["frac", "--op", "dleft", "--f", "identity", "--alpha", "0.5",
         "--a", "0", "--t", "1", "--mu", "1", "--no-timestamp"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-6)


def test_holder_subcommand(capsys):
    code, out = run_cli(
        ["holder", "--path", "weierstrass:H=0.7,scales=10", "--exponent", "0.7",
         "--a", "0", "--b", "1", "--no-timestamp"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["seminorm"] > 0
    assert doc["n_pairs_checked"] > 1000


def test_iterate_subcommand(capsys):
    code, out = run_cli(
        ["iterate", "--fields", "(product:g=(identity),h=(const:c=1))", "--n", "3",
         "--rho", "const:c=1", "--a", "0", "--b", "1",
         "--tau", "1", "--lambda", "1", "--points", "2049", "--no-timestamp"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == pytest.approx(1.0 / 6.0, rel=1e-5)
    assert len(doc["stage_stats"]) == 3


def test_bounds_centered_subcommand(tmp_path, capsys):
    code, out = run_cli(
        ["bounds", "--check", "centered",
         "--field", "product:g=(weierstrass:H=0.6,scales=10),h=(identity)",
         "--path", "weierstrass:H=0.7,scales=10",
         "--a", "0", "--b", "1",
         "--tau", "0.6", "--lambda", "1", "--gamma", "0.7",
         "--jmax", "3", "--quad", "n_outer=384",
         "--out", str(tmp_path), "--no-timestamp"],
        capsys,
    )
    assert code == 0
    csv_text = (tmp_path / "bounds-centered.csv").read_text()
    header = csv_text.splitlines()[0].split(",")
    assert header[:3] == ["j", "interval", "lhs"]
    assert "ratio" in header


def test_indefinite_subcommand_writes_csv(tmp_path, capsys):
    code, out = run_cli(
        ["indefinite", "--field", "product:g=(sin),h=(const:c=1)",
         "--path", "identity", "--a", "0", "--b", "1",
         "--tau", "1", "--lambda", "1", "--gamma", "1",
         "--points", "33", "--out", str(tmp_path / "sub"), "--no-timestamp"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["regression_slope"] == pytest.approx(1.0, abs=0.05)
    csv_lines = (tmp_path / "sub" / "indefinite.csv").read_text().splitlines()
    assert csv_lines[0] == "t,value"
    assert len(csv_lines) == 34


def test_suite_iterated_exit_0(capsys):
    code, out = run_cli(["suite", "iterated", "--no-timestamp"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True


def test_quad_fragment_parsing():
    out = parse_quad_fragment("n=2048,grading=auto,tol=1e-6,n_outer=256")
    assert out == {"n_nodes": 2048, "grading": "auto", "tol": 1e-6, "n_outer": 256}
    with pytest.raises(SpecValidationError):
        parse_quad_fragment("bogus=3")


def test_spec_round_trip_and_unknown_keys():
    spec = ExperimentSpec(
        name="x", field="product:g=(sin),h=(identity)", path="identity",
        tau=0.8, lam=1.0, gamma=0.9, a=0.0, b=1.0,
        alphas=(0.3, 0.5), quad={"n_outer": 256}, tolerances={"cross_rel": 0.02},
    )
    back = ExperimentSpec.from_json_dict(json.loads(json.dumps(spec.to_json_dict())))
    assert back == spec
    with pytest.raises(SpecValidationError):
        ExperimentSpec.from_json_dict({**spec.to_json_dict(), "surprise": 1})
    with pytest.raises(SpecValidationError):
        ExperimentSpec.from_json_dict({"name": "y"})


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nlyoung.cli", "frac", "--op", "ileft",
         "--f", "const:c=1", "--alpha", "0.5", "--a", "0", "--t", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-7)
