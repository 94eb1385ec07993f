import json

import pytest

from p6tau.cli import main
from p6tau.grassmann import TauTable
from p6tau.lattice import LatticePoint
from p6tau.suites import perturb_table
from p6tau import cli


@pytest.fixture(scope="module")
def table_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("tables") / "ball2.json"
    assert main(["gen", "--radius", "2", "--out", str(path)]) == 0
    return path


def test_gen_radius_zero(tmp_path):
    out = tmp_path / "t0.json"
    assert main(["gen", "--radius", "0", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["entries"] == [
        {"point": [0, 0, 0, 0, 0, 0], "weight": 0,
         "T": {"min_degree": 0, "coeffs": ["1"]}}
    ]


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["gen", "--radius", "1", "--out", str(a)])
    main(["gen", "--radius", "1", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_gen_radius_limit(tmp_path, capsys):
    assert main(["gen", "--radius", "9", "--out", str(tmp_path / "x.json")]) == 2
    assert "radius" in capsys.readouterr().err


def test_gen_rejects_singular_frame(tmp_path, capsys):
    frame = tmp_path / "frame.json"
    frame.write_text(json.dumps([["1", "1", "1"], ["1", "1", "1"], ["0", "1", "2"]]))
    code = main(["gen", "--frame", str(frame), "--radius", "1",
                 "--out", str(tmp_path / "x.json")])
    assert code == 2
    assert "dependent" in capsys.readouterr().err


def test_round_trip_reload(table_file):
    table = cli.load_table(str(table_file))
    rebuilt = TauTable.build(table.frame, 2)
    assert table.entries == rebuilt.entries


def test_csv_export(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["gen", "--radius", "1", "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("a1,a2,a3,a4,a5,a6,weight")
    assert len(lines) == 32


def test_verify_passes_and_exit_zero(table_file, tmp_path, capsys):
    report = tmp_path / "report.json"
    code = main(["verify", "--table", str(table_file), "--suites", "toda,jmo",
                 "--out", str(report)])
    assert code == 0
    payload = json.loads(report.read_text())
    assert payload["passed"] is True
    names = {s["suite"] for s in payload["suites"]}
    assert names == {"toda", "jmo"}


def test_verify_names_failing_configuration(table_file, tmp_path, capsys):
    table = cli.load_table(str(table_file))
    point = LatticePoint((-1, 0, 0, 1, 0, 0))
    broken = perturb_table(table, point)
    bad_file = tmp_path / "bad.json"
    bad_file.write_text(json.dumps({
        "frame": broken.frame.to_json(),
        "radius": broken.radius,
        "entries": broken.to_json(),
    }))
    report = tmp_path / "bad_report.json"
    code = main(["verify", "--table", str(bad_file), "--suites", "miwa,bilinear",
                 "--out", str(report)])
    assert code == 1
    payload = json.loads(report.read_text())
    failing = [s for s in payload["suites"] if not s["passed"]]
    assert failing
    named = [f for s in failing for f in s["failures"]]
    assert any("base" in f or "error" in f or "point" in f for f in named)


def test_verify_empty_suites_warns(table_file, capsys):
    code = main(["verify", "--table", str(table_file), "--suites", ""])
    assert code == 0
    assert "nothing checked" in capsys.readouterr().out


def test_sigma_command(table_file, capsys):
    code = main(["sigma", "--point=-1,0,0,1,0,0", "--table", str(table_file)])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["v"] == ["1/2", "-1/2", "-1/2", "-1/2"]
    # constant tau: sigma is the linear part c5*(t-1) - c6/2 = -t/4
    assert payload["sigma"]["num"] == {"1": "-1/4"}


def test_sigma_unknown_point(table_file, capsys):
    code = main(["sigma", "--point", "5,-5,0,0,0,0", "--table", str(table_file)])
    assert code == 2


def test_sigma_zero_tau(table_file, capsys):
    code = main(["sigma", "--point", "1,-1,0,0,0,0", "--table", str(table_file)])
    assert code == 2


def test_map_f4_command(capsys):
    code = main(["map-f4", "--point", "0,0,0,0,1,-1"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["image"] == [0, "0", "1", "-1", "0"]


def test_map_f4_report(capsys):
    code = main(["map-f4", "--point", "0,0,0,0,0,0", "--report"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert all(r["match"] for r in payload["simple_roots"])
    assert len(payload["short_sets"]) == 3
    assert len(payload["toda_gamma_pairs"]) == 6


def test_calibrate_eps_command(table_file, tmp_path):
    out = tmp_path / "eps.json"
    assert main(["calibrate-eps", "--table", str(table_file), "--out", str(out)]) == 0
    eps = json.loads(out.read_text())
    assert len(eps) == 60
    assert eps["1,2,3"] == 1 and eps["1,3,2"] == -1
