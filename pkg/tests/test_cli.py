import json
import math
import subprocess
import sys

import pytest

from corpus import SQRT2, axes_law, diagonal_pair, lattice_model, mixed_model
from stable_spectra import HarmonisableModel, make_axes_measure
from stable_spectra.cli import DEFAULT_SEED, main
from stable_spectra.io import measure_to_dict, model_to_dict


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    diag_law = HarmonisableModel.from_increments(axes_law([0.5, 0.5], [0.0, 2.0], 1.5))
    return {
        "axes": write("axes.json", measure_to_dict(make_axes_measure([0.5, 0.5]))),
        "pair": write("pair.json", measure_to_dict(diagonal_pair())),
        "lattice": write("lattice.json", model_to_dict(lattice_model())),
        "mixed": write("mixed.json", model_to_dict(mixed_model())),
        "law": write("law.json", model_to_dict(diag_law)),
        "empty": write("empty.json", model_to_dict(
            HarmonisableModel.from_matrix([0.0, 1.0], [[0, 0], [0, 0]], 1.5))),
        "broken": str(tmp_path / "broken.json"),
        "dir": tmp_path,
    }


@pytest.fixture(autouse=True)
def _no_seed_env(monkeypatch):
    monkeypatch.delenv("STABLE_SPECTRA_SEED", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_additivity_pass(files, capsys):
    code, out, _ = run(capsys, "check-additivity", files["axes"])
    assert code == 0
    assert "max_abs: 0\n" in out


def test_check_additivity_fail(files, capsys):
    code, out, _ = run(capsys, "check-additivity", files["pair"])
    assert code == 1
    assert "max_abs: 0.353553390593274" in out


def test_check_additivity_pairwise_mode(files, capsys):
    code, out, _ = run(capsys, "check-additivity", files["pair"], "--mode", "pairwise")
    assert code == 0 and "mode: pairwise" in out


def test_missing_and_malformed_files(files, capsys):
    assert run(capsys, "check-additivity", str(files["dir"] / "nope.json"))[0] == 2
    with open(files["broken"], "w") as fh:
        fh.write("{not json")
    code, _, err = run(capsys, "check-additivity", files["broken"])
    assert code == 2 and "cannot read" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check-additivity"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_covariation_values(files, capsys):
    code, out, _ = run(capsys, "covariation", files["axes"], "--alpha", "1.5",
                       "--a", "1,0", "--b", "0,1")
    assert code == 0 and out == "exact: 0\n"
    code, out, _ = run(capsys, "covariation", files["pair"], "--alpha", "1.5",
                       "--a", "1,0", "--b", "0,1")
    assert code == 0 and out.startswith("exact: 0.594603557501361")


def test_covariation_dimension_mismatch(files, capsys):
    code, _, err = run(capsys, "covariation", files["axes"], "--alpha", "1.5",
                       "--a", "1,0,0", "--b", "0,1")
    assert code == 2 and "2 entries" in err


def test_covariation_estimate_output(files, capsys):
    code, out, _ = run(capsys, "covariation", files["pair"], "--alpha", "1.5",
                       "--a", "1,0", "--b", "0,1", "--estimate", "--n", "20000", "--seed", "3")
    assert code == 0
    assert "estimate: " in out and "+/-" in out and "seed = 3" in out


def test_seed_environment_fallback(files, capsys, monkeypatch):
    args = ("covariation", files["pair"], "--alpha", "1.5", "--a", "1,0", "--b", "0,1",
            "--estimate", "--n", "2000")
    _, out_default, _ = run(capsys, *args)
    assert f"seed = {DEFAULT_SEED}" in out_default
    monkeypatch.setenv("STABLE_SPECTRA_SEED", "11")
    _, out_env, _ = run(capsys, *args)
    assert "seed = 11" in out_env
    monkeypatch.setenv("STABLE_SPECTRA_SEED", "x")
    assert run(capsys, *args)[0] == 2


def test_classify_lattice(files, capsys):
    code, out, _ = run(capsys, "classify", files["lattice"])
    assert code == 0
    assert "verdict: periodic, T = 3.14159265358979" in out


def test_classify_two_line_model_reports_lines(files, capsys):
    code, out, _ = run(capsys, "classify", files["mixed"])
    assert code == 0
    assert f"  {SQRT2:.15g},0.5" in out and "  0,3" in out


def test_classify_stationary(files, capsys):
    code, out, _ = run(capsys, "classify", files["law"])
    assert code == 0 and "verdict: stationary" in out


def test_classify_flags_invalid_bimeasure(files, capsys):
    code, out, _ = run(capsys, "classify", files["mixed"], "--pd-field", "complex")
    assert code == 1 and "invalid bimeasure" in out


def test_spectrum_csv(files, capsys):
    code, out, _ = run(capsys, "spectrum", files["lattice"], "--T", str(math.pi),
                       "--k-min", "-2", "--k-max", "2")
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()[1:]]
    nonzero = [int(r[0]) for r in rows if abs(complex(float(r[3]), float(r[4]))) > 0]
    assert nonzero == [-1, 0, 1]


def test_spectrum_empty_model(files, capsys):
    code, out, _ = run(capsys, "spectrum", files["empty"], "--T", "1")
    assert code == 0
    assert all(set(r.split(",")[1:]) == {"0"} for r in out.splitlines()[1:])


def test_spectrum_mismatch_and_bad_period(files, capsys):
    # 2 pi is not a period of the two-line model, so the legs disagree
    assert run(capsys, "spectrum", files["mixed"], "--T", str(2 * math.pi))[0] == 1
    assert run(capsys, "spectrum", files["lattice"], "--T", "0")[0] == 2
    assert run(capsys, "spectrum", files["lattice"], "--T=-1")[0] == 2


def test_synthesize_csv_is_deterministic(files, capsys):
    out1 = files["dir"] / "a.csv"
    out2 = files["dir"] / "b.csv"
    for out in (out1, out2):
        assert run(capsys, "synthesize", files["law"], "--times", "0,1,2", "--n", "5",
                   "--seed", "4", "--out", str(out))[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0] == "path,t,re,im" and len(lines) == 16


def test_synthesize_edge_cases(files, capsys):
    code, out, _ = run(capsys, "synthesize", files["law"], "--times", "0,1", "--n", "0")
    assert code == 0 and out == "path,t,re,im\n"
    code, _, err = run(capsys, "synthesize", files["mixed"], "--times", "0", "--n", "1")
    assert code == 2 and "no increment law" in err


def test_verify_identities_small_grid(capsys):
    code, out, _ = run(capsys, "verify-identities", "--p", "1.5", "--s", "0,1",
                       "--p2", "1.5", "--z", "1", "--alpha", "1.5")
    assert code == 0
    assert "sine,1.5,1,2.506628274631" in out
    assert "sine,1.5,0,0,0,0," in out


def test_verify_identities_near_upper_order(capsys):
    code, _, _ = run(capsys, "verify-identities", "--p", "1.99", "--s=-1,2",
                     "--p2", "1.95", "--z", "1+1j")
    assert code == 0


def test_verify_identities_out_of_range(capsys):
    assert run(capsys, "verify-identities", "--p", "2.0")[0] == 2
    assert run(capsys, "verify-identities", "--p2", "0")[0] == 2
    assert run(capsys, "verify-identities", "--alpha", "2.5")[0] == 2
    assert run(capsys, "verify-identities", "--z", "0")[0] == 2


def test_stdout_is_byte_identical_across_processes(files):
    cmd = [sys.executable, "-m", "stable_spectra", "classify", files["lattice"]]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"verdict: periodic")


def test_help_documents_defaults(capsys):
    with pytest.raises(SystemExit):
        main(["check-additivity", "--help"])
    out = capsys.readouterr().out
    assert "1e-10" in out and "literal" in out
