import json
import random
import shutil
import subprocess
from fractions import Fraction as F

import pytest

from tmpsolve import AtomicMeasure, moments_of
from tmpsolve.cli import (FormatError, format_value, main, measure_from_json, measure_to_json, parse_value,
                          problem_from_json, problem_to_json)
from tmpsolve.datasets import nine_point_family


def write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def problem_file(tmp_path, beta, name="problem.json"):
    return write(tmp_path / name, problem_to_json(beta))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_value_round_trip():
    for v in (F(0), F(-7), F(1, 320), F(-41, 2880), F(10**30 + 1, 3)):
        assert parse_value(format_value(v)) == v
    assert format_value(F(4, 225)) == "4/225"
    assert isinstance(parse_value("0.25"), float)
    assert parse_value("0.25", "exact") == F(1, 4)
    with pytest.raises(FormatError):
        parse_value("abc")


def test_problem_round_trip_is_exact(nine_point_43):
    back = problem_from_json(json.loads(json.dumps(problem_to_json(nine_point_43))))
    assert back.exact and back.beta == nine_point_43.beta


def test_problem_file_errors(nine_point_43):
    data = problem_to_json(nine_point_43)
    with pytest.raises(FormatError):
        problem_from_json({**data, "moments": data["moments"][:-1]})
    with pytest.raises(FormatError):
        problem_from_json({**data, "degree": 5})
    with pytest.raises(FormatError):
        problem_from_json({"moments": []})


def test_measure_round_trip():
    mu = AtomicMeasure([(F(4), F(3), F(1, 320)), (F(-1, 2), F(0), F(7))])
    assert measure_from_json(json.loads(json.dumps(measure_to_json(mu)))) == mu
    with pytest.raises(FormatError):
        measure_from_json({"atoms": [{"x": "0", "y": "0", "density": "-1"}]})


def test_analyze_nine_point(tmp_path, capsys):
    path = problem_file(tmp_path, nine_point_family(0, 20))
    code, out = run(capsys, "analyze", path)
    assert code == 0
    assert out.out.strip() == "r=8, v=9, consistent, route rank8_v9"


def test_analyze_line_plus_three(tmp_path, capsys, line_plus_three):
    code, out = run(capsys, "analyze", problem_file(tmp_path, line_plus_three))
    assert code == 0
    assert out.out.strip() == "r=7, v=∞ (component y - 1 + 3 points), consistent, route rank7"


def test_analyze_point_mass(tmp_path, capsys):
    beta = moments_of(AtomicMeasure([(F(1), F(2), F(1))]), 6)
    code, out = run(capsys, "analyze", problem_file(tmp_path, beta))
    assert code == 0 and out.out.startswith("r=1,") and out.out.strip().endswith("flat")


def test_analyze_json(tmp_path, capsys):
    code, out = run(capsys, "analyze", problem_file(tmp_path, nine_point_family(0, 20)), "--output", "json")
    report = json.loads(out.out)
    assert code == 0 and report["rank"] == 8 and report["variety"]["cardinality"] == "9"
    assert report["case"]["route"] == "rank8_v9"


def test_solve_exit_codes(tmp_path, capsys):
    code, out = run(capsys, "solve", problem_file(tmp_path, nine_point_family(F(4, 5), 20)))
    assert code == 0 and "8 atoms" in out.out
    code, out = run(capsys, "solve", problem_file(tmp_path, nine_point_family(F(9, 10), 20)))
    assert code == 2 and "residual-not-psd" in out.out
    rng = random.Random(0)
    ten = moments_of(AtomicMeasure([(F(rng.randint(-9, 9), 2), F(rng.randint(-9, 9), 3), F(1))
                                    for _ in range(10)]), 6)
    code, out = run(capsys, "solve", problem_file(tmp_path, ten))
    assert code == 3 and "out-of-scope" in out.out


def test_solve_json_certificate(tmp_path, capsys):
    code, out = run(capsys, "solve", problem_file(tmp_path, nine_point_family(F(4, 5), 20)), "--output", "json")
    payload = json.loads(out.out)
    assert payload["status"] == "Measure"
    assert payload["certificate"]["m1"] == "1/320" and payload["certificate"]["m2"] == "4/225"
    assert len(payload["measure"]["atoms"]) == 8


def test_solve_verify_pipeline(tmp_path, capsys):
    prob = problem_file(tmp_path, nine_point_family(F(4, 5), 20))
    meas = str(tmp_path / "measure.json")
    assert run(capsys, "solve", prob, "--measure-out", meas)[0] == 0
    code, out = run(capsys, "verify", prob, meas)
    assert code == 0 and out.out.startswith("PASS")
    data = json.loads(open(meas).read())
    data["atoms"][0]["density"] = "1/7"
    code, out = run(capsys, "verify", prob, write(tmp_path / "bad.json", data))
    assert code == 2 and out.out.startswith("FAIL")


def test_generate_then_solve(tmp_path, capsys):
    prob, truth = tmp_path / "gen.json", tmp_path / "truth.json"
    for template, k in (("generic", 1), ("nine-point", 9), ("xy0", 7)):
        code, _ = run(capsys, "generate", "--template", template, "--atoms", k, "--seed", 3,
                      "--out", prob, "--measure-out", truth)
        assert code == 0
        assert run(capsys, "verify", prob, truth)[0] == 0
        assert run(capsys, "solve", prob)[0] == 0


def test_generate_is_seeded(capsys):
    a = run(capsys, "generate", "--template", "on-conic", "--atoms", 5, "--seed", 9)[1].out
    b = run(capsys, "generate", "--template", "on-conic", "--atoms", 5, "--seed", 9)[1].out
    assert a == b


def test_generate_infeasible(capsys):
    code, out = run(capsys, "generate", "--template", "nine-point", "--atoms", 10)
    assert code == 1 and "at most 9" in out.err


def test_parse_errors(tmp_path, capsys):
    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    assert run(capsys, "solve", bad)[0] == 1
    assert run(capsys, "analyze", tmp_path / "missing.json")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1


def test_float_mode_flag(tmp_path, capsys, nine_point_43):
    code, out = run(capsys, "solve", problem_file(tmp_path, nine_point_43), "--mode", "float")
    assert code == 0 and "8 atoms" in out.out


@pytest.mark.skipif(shutil.which("tmpsolve") is None, reason="console script not installed")
def test_console_script_exit_code(tmp_path):
    prob = problem_file(tmp_path, nine_point_family(F(-9, 10), 20))
    proc = subprocess.run(["tmpsolve", "solve", prob], capture_output=True, text=True)
    assert proc.returncode == 2 and "step5-infeasible" in proc.stdout
