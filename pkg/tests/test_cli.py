import json

import pytest

from egen.cli import main
from conftest import CORPUS

L8 = str(CORPUS / "valid" / "single_policy.egen")
THREE_BAND = str(CORPUS / "valid" / "three_band.egen")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_valid_silent(capsys):
    assert run(capsys, "check", L8) == (0, "", "")


def test_check_errors(capsys):
    code, out, err = run(capsys, "check", str(CORPUS / "invalid" / "V003_inverted_thresholds.egen"))
    assert code == 1 and out == ""
    assert "error[V003]" in err and ":6:9:" in err


def test_check_warning_exit_zero(capsys):
    code, _, err = run(capsys, "check", str(CORPUS / "invalid" / "V006_overlapping_policies.egen"))
    assert code == 0 and "warning[V006]" in err


def test_check_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "missing.egen"))
    assert code == 2 and "missing.egen" in err


def test_check_multiple_worst_wins(capsys, tmp_path):
    bad = str(CORPUS / "invalid" / "E010_missing_context_binding.egen")
    assert run(capsys, "check", L8, bad)[0] == 1
    assert run(capsys, "check", bad, str(tmp_path / "nope.egen"))[0] == 2


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", THREE_BAND)
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "percent,interval_ms"
    assert len(lines[1:]) == 101 and lines[1] == "100,3000" and lines[-1] == "0,6470"


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", THREE_BAND, "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data) == 101 and data[21] == {"percent": 79, "interval_ms": 4000}


def test_table_empty_model_fallback(capsys, tmp_path):
    empty = tmp_path / "empty.egen"
    empty.write_text("// nothing\n")
    _, out, _ = run(capsys, "table", str(empty), "--fallback", "5000")
    assert {l.split(",")[1] for l in out.splitlines()[1:]} == {"5000"}


def test_table_flags(capsys):
    _, out, _ = run(capsys, "table", THREE_BAND, "--charging", "--fallback", "7000")
    assert out.splitlines()[1] == "100,7000"
    _, out, _ = run(capsys, "table", THREE_BAND, "--background", "--fallback", "9000", "--cap", "8000")
    assert out.splitlines()[1] == "100,8000"


def test_table_invalid_model(capsys):
    assert run(capsys, "table", str(CORPUS / "invalid" / "V005_zero_interval.egen"))[0] == 1


def test_generate(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", L8, "--out", str(tmp_path), "--package", "com.example.app")
    assert code == 0
    written = out.splitlines()
    assert len(written) == 4
    util = tmp_path / "com" / "example" / "app" / "AdaptationUtility.java"
    assert str(util) in written and "3000" in util.read_text()
    assert run(capsys, "generate", L8, "--out", str(tmp_path))[0] == 3
    assert run(capsys, "generate", L8, "--out", str(tmp_path), "--force")[0] == 0


def test_generate_policy_table(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", THREE_BAND, "--out", str(tmp_path), "--policy-table")
    assert code == 0 and (tmp_path / "policy_table.csv").exists()
    assert len(out.splitlines()) == 5


def test_generate_bad_package(capsys, tmp_path):
    code, _, err = run(capsys, "generate", L8, "--out", str(tmp_path), "--package", "Bad.Name")
    assert code == 1 and "EGEN-G01" in err


def test_generate_empty_model(capsys, tmp_path):
    empty = tmp_path / "empty.egen"
    empty.write_text("")
    code, _, err = run(capsys, "generate", str(empty), "--out", str(tmp_path / "o"))
    assert code == 1 and "EGEN-G02" in err


def test_compare_three_band(capsys):
    code, out, _ = run(capsys, "compare", THREE_BAND, "--fixed", "3000", "--synth", "arc:3060:5",
                       "--start", "60", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["reduction_gps_s_per_hour"] > 0 and rep["energy_savings_ma"] > 0
    assert set(rep["adaptive"]) >= {"gps_active_s_per_hour", "battery_consumed_ma",
                                    "measured_distance_m", "accuracy_error_m"}


def test_compare_table_layout(capsys):
    code, out, _ = run(capsys, "compare", THREE_BAND, "--fixed", "3000", "--synth", "arc:3060:5",
                       "--start", "60")
    assert code == 0
    for header in ("GPS active time per hour", "Battery consumption in mA",
                   "Distance covered in km", "Degrade"):
        assert header in out


def test_compare_trials_identical(capsys):
    args = ["compare", THREE_BAND, "--fixed", "3000", "--synth", "arc:3060:5", "--start", "60", "--json"]
    _, one, _ = run(capsys, *args)
    _, three, _ = run(capsys, *args, "--trials", "3")
    one, three = json.loads(one), json.loads(three)
    assert len(three["trials"]) == 3
    assert all(t == three["trials"][0] for t in three["trials"])
    for key in ("reduction_gps_s_per_hour", "energy_savings_ma", "degrade_accuracy_m"):
        assert three[key] == one[key]
    assert three["adaptive"] == one["adaptive"]


def test_simulate_fixed_and_policy(capsys):
    code, out, _ = run(capsys, "simulate", "--fixed", "3000", "--synth", "line:3060:5", "--json")
    r = json.loads(out)
    assert code == 0 and r["fixes_taken"] == 204
    code, out, _ = run(capsys, "simulate", THREE_BAND, "--synth", "line:3060:5")
    assert code == 0 and "Fixes taken" in out


def test_simulate_needs_one_source(capsys):
    assert run(capsys, "simulate", "--synth", "line:100:5")[0] == 1
    assert run(capsys, "simulate", THREE_BAND, "--fixed", "5", "--synth", "line:100:5")[0] == 1


def test_simulate_track_and_profile(capsys, tmp_path):
    track = tmp_path / "t.csv"
    track.write_text("lat,lon,t_s\n0,0,0\n0,0.01,200\n")
    profile = tmp_path / "p.profile"
    profile.write_text("battery_capacity_mah = 0.01\n")
    code, out, err = run(capsys, "simulate", "--fixed", "1000", "--track", str(track),
                         "--profile", str(profile), "--start", "50", "--json")
    assert code == 4 and "EGEN-S01" in err
    assert json.loads(out)["battery_exhausted"] is True


def test_simulate_bad_inputs(capsys, tmp_path):
    assert run(capsys, "simulate", "--fixed", "0", "--synth", "line:100:5")[0] == 1
    assert run(capsys, "simulate", "--fixed", "10", "--synth", "spiral:100:5")[0] == 1
    assert run(capsys, "simulate", "--fixed", "10", "--synth", "line:100")[0] == 1
    assert run(capsys, "simulate", "--fixed", "10", "--track", str(tmp_path / "x.csv"))[0] == 2


def test_reproducible_stdout(capsys):
    args = ["compare", THREE_BAND, "--fixed", "3000", "--synth", "sinusoid:2000:4", "--start", "85"]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


@pytest.mark.parametrize("sub", ["check", "table", "generate", "simulate", "compare"])
def test_version_on_every_subcommand(capsys, sub):
    with pytest.raises(SystemExit) as exc:
        main([sub, "--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("egen ")
