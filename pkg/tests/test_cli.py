import json
import math

import pytest

import wavedet
from wavedet import cli

PT = {"problem": {"name": "poschl_teller"}}


def write_config(tmp_path, extra, name="config.json", domain=None):
    cfg = dict(PT)
    cfg.update(extra)
    if domain is not None:
        cfg["domain"] = domain
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(text):
    lines = text.strip().split("\n")
    assert lines[0].startswith("# wavedet ")
    assert lines[1].startswith("# config ")
    header = lines[2].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[3:]]
    return header, rows


# ---------------------------------------------------------------------------
# happy paths


def test_compare_reports_matching_pipelines(tmp_path, capsys):
    path = write_config(tmp_path, {"lambdas": [4.0]})
    code, out, err = run_cli(capsys, "compare", "--config", path)
    assert code == 0 and err == ""
    header, rows = csv_rows(out)
    assert header[:2] == ["re_lambda", "im_lambda"]
    row = rows[0]
    for col in ("re_det1", "re_det_transmission", "re_evans_ratio",
                "re_det2_product"):
        assert abs(float(row[col]) - 1.0 / 3.0) < 1e-5
    assert float(row["max_gap"]) < 1e-5


def test_det_json_document(tmp_path, capsys):
    path = write_config(tmp_path, {"lambdas": [4.0, 9.0]})
    code, out, err = run_cli(capsys, "det", "--config", path,
                             "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["version"] == wavedet.__version__
    assert doc["config"]["output"]["format"] == "json"
    assert doc["config"]["domain"]["quad_points"] == 400
    rows = doc["rows"]
    assert [r["lambda"]["re"] for r in rows] == [4.0, 9.0]
    assert abs(rows[0]["det1"]["re"] - 1.0 / 3.0) < 1e-6
    assert abs(rows[1]["det1"]["re"] - 0.5) < 1e-6
    assert abs(rows[0]["det2"]["re"] - math.exp(1.0) / 3.0) < 1e-6
    assert "det3" in rows[0]


def test_det_empty_lambda_list(tmp_path, capsys):
    path = write_config(tmp_path, {"lambdas": []})
    code, out, err = run_cli(capsys, "det", "--config", path)
    assert code == 0
    assert len(out.strip().split("\n")) == 3  # two comments + header


def test_roots_row_layout(tmp_path, capsys):
    path = write_config(tmp_path, {"lambdas": [4.0]})
    code, out, err = run_cli(capsys, "roots", "--config", path)
    assert code == 0
    header, rows = csv_rows(out)
    row = rows[0]
    assert row["k"] == "1"
    assert float(row["re_root_1"]) == pytest.approx(2.0)
    assert float(row["re_root_2"]) == pytest.approx(-2.0)
    assert float(row["re_alpha_1"]) == pytest.approx(-0.25)
    assert float(row["re_alpha_2"]) == pytest.approx(-0.25)
    assert float(row["jump_residual"]) < 1e-12
    assert float(row["moment_residual"]) < 1e-12


def test_locate_finds_the_bound_state(tmp_path, capsys):
    path = write_config(
        tmp_path,
        {"rectangle": {"corner_low": {"re": 0.5, "im": -0.5},
                       "corner_high": {"re": 1.5, "im": 0.5}},
         "samples_per_edge": 8},
        domain={"quad_points": 200})
    code, out, err = run_cli(capsys, "locate", "--config", path,
                             "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["winding"] == 1
    assert doc["report"]["function_used"] == "det1"
    root = doc["report"]["roots"][0]
    assert abs(complex(root["re"], root["im"]) - 1.0) < 1e-6
    assert doc["rows"][0]["winding"] == 1


def test_scan_walks_the_grid(tmp_path, capsys):
    path = write_config(
        tmp_path,
        {"rectangle": {"corner_low": {"re": 2.0, "im": -0.5},
                       "corner_high": {"re": 3.0, "im": 0.5}},
         "nx": 3, "ny": 2},
        domain={"quad_points": 200})
    code, out, err = run_cli(capsys, "scan", "--config", path)
    assert code == 0
    header, rows = csv_rows(out)
    assert header == ["re_lambda", "im_lambda", "re_det1", "im_det1"]
    assert len(rows) == 6
    assert float(rows[0]["re_lambda"]) == 2.0
    assert float(rows[0]["im_lambda"]) == -0.5


def test_converge_sweeps(tmp_path, capsys):
    path = write_config(tmp_path, {"lambda": 4.0,
                                   "n_list": [100, 200], "x_list": [15.0]})
    code, out, err = run_cli(capsys, "converge", "--config", path,
                             "--format", "json")
    assert code == 0
    doc = json.loads(out)
    rows = doc["rows"]
    assert [r["sweep"] for r in rows] == ["N", "N", "X"]
    assert rows[0]["gap"] > rows[1]["gap"]
    assert rows[2]["gap"] < 1e-8


def test_front_determinant_via_cli(tmp_path, capsys):
    cfg = {"problem": {"order": 2, "coeffs": [0.0, 0.0],
                       "profile": {"kind": "tanh_front",
                                   "params": {"amplitude": 1.5,
                                              "offset": -2.5,
                                              "well": 8.0}},
                       "asymptotics": {"v_minus": -4.0, "v_plus": -1.0}},
           "lambdas": [2.0]}
    path = tmp_path / "front.json"
    path.write_text(json.dumps(cfg))
    code, out, err = run_cli(capsys, "det", "--config", str(path))
    assert code == 0
    header, rows = csv_rows(out)
    assert header == ["re_lambda", "im_lambda", "re_det2", "im_det2"]
    assert abs(float(rows[0]["re_det2"]) - (-0.5187858769)) < 1e-8


def test_output_file_and_overrides(tmp_path, capsys):
    path = write_config(tmp_path, {"lambdas": [4.0]})
    dest = tmp_path / "out.csv"
    code, out, err = run_cli(capsys, "det", "--config", path,
                             "--output", str(dest),
                             "--override", "lambdas=[9.0]",
                             "--override", "domain.quad_points=200")
    assert code == 0 and out == ""
    header, rows = csv_rows(dest.read_text())
    assert len(rows) == 1
    assert float(rows[0]["re_lambda"]) == 9.0
    assert abs(float(rows[0]["re_det1"]) - 0.5) < 1e-6
    config_line = dest.read_text().split("\n")[1]
    echoed = json.loads(config_line[len("# config "):])
    assert echoed["domain"]["quad_points"] == 200


def test_identical_runs_are_byte_identical(tmp_path, capsys):
    path = write_config(tmp_path, {"lambdas": [4.0, 9.0, {"re": 2.0,
                                                          "im": 1.0}]})
    _, first, _ = run_cli(capsys, "det", "--config", path, "--threads", "1")
    _, second, _ = run_cli(capsys, "det", "--config", path, "--threads", "4")
    assert first == second


# ---------------------------------------------------------------------------
# failure modes


def err_object(err):
    payload = json.loads(err.strip().split("\n")[-1])
    return payload["error"]


def test_unknown_config_key_is_exit_2(tmp_path, capsys):
    path = write_config(tmp_path, {"lambdas": [4.0], "rectangles": {}})
    code, out, err = run_cli(capsys, "det", "--config", path)
    assert code == 2 and out == ""
    obj = err_object(err)
    assert obj["kind"] == "config"
    assert "rectangles" in obj["message"]


def test_wrong_asymptotics_is_exit_2(tmp_path, capsys):
    cfg = {"problem": {"order": 2, "coeffs": [0.0, 0.0],
                       "profile": {"kind": "tanh_front",
                                   "params": {"amplitude": 1.5,
                                              "offset": -2.5,
                                              "well": 8.0}},
                       "asymptotics": {"v_minus": -7.0, "v_plus": -1.0}},
           "lambdas": [2.0]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cfg))
    code, out, err = run_cli(capsys, "det", "--config", str(path))
    assert code == 2
    assert "v_minus" in err_object(err)["message"]


def test_compare_on_front_is_exit_2(tmp_path, capsys):
    cfg = {"problem": {"name": "tanh_front",
                       "params": {"amplitude": 1.5, "offset": -2.5,
                                  "well": 8.0}},
           "lambdas": [2.0]}
    path = tmp_path / "front.json"
    path.write_text(json.dumps(cfg))
    code, out, err = run_cli(capsys, "compare", "--config", str(path))
    assert code == 2
    assert err_object(err)["kind"] == "config"


def test_essential_spectrum_is_exit_3(tmp_path, capsys):
    path = write_config(tmp_path, {"lambdas": [-1.0]})
    code, out, err = run_cli(capsys, "det", "--config", path)
    assert code == 3
    obj = err_object(err)
    assert obj["kind"] == "numeric"
    assert obj["type"] == "EssentialSpectrum"


def test_missing_config_file_is_exit_2(tmp_path, capsys):
    code, out, err = run_cli(capsys, "det", "--config",
                             str(tmp_path / "nope.json"))
    assert code == 2
    assert err_object(err)["kind"] == "config"
