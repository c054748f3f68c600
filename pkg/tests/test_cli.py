import json
import subprocess
import sys
from pathlib import Path

import pytest

from motivol import __version__
from motivol.cli import main
from motivol.motivic_ring import MotivicClass
from motivol.tropical import PuiseuxPoly, motivic_volume_curve
from motivol.vf_classes import StratifiedSpecialFiber, semistable_volume
from motivol.zeta import MotivicSeries, refined_from_hilb

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("volume", "honeycomb_cubic", []),
    ("volume", "binomial_xy", []),
    ("semistable", "ss_example", []),
    ("zeta-extract", "p1_series", []),
    ("zeta-roundtrip", "elliptic_pencil", []),
    ("chi", "chi_blowup", []),
    ("vfvol", "vf_relation", []),
    ("bg", "conic_mult2", []),
    ("trop", "line", []),
    ("trop", "honeycomb_cubic", []),
]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("command, name, extra", CASES)
def test_golden_output(capsys, command, name, extra):
    code, out, _ = run(capsys, command, "--input", str(DATA / f"{name}.json"), *extra)
    assert code == 0
    assert out == (GOLDEN / f"{command}__{name}.json").read_text()


@pytest.mark.parametrize("threads", ["1", "2", "8"])
def test_byte_identical_across_threads(capsys, threads):
    args = ["volume", "--input", str(DATA / "trivial_cubic.json"), "--assume-schoen", "--threads", threads]
    code, out, _ = run(capsys, *args)
    assert code == 0
    assert out == (GOLDEN / "volume__trivial_cubic_assumed.json").read_text()


def test_output_file_and_repeat_runs(tmp_path, capsys):
    target = tmp_path / "out.json"
    args = ["semistable", "--input", str(DATA / "ss_example.json"), "--output", str(target)]
    assert main(args) == 0
    first = target.read_bytes()
    assert main(args) == 0
    assert target.read_bytes() == first
    assert capsys.readouterr().out == ""


def test_document_contents_reproduce_library_calls(capsys):
    _, out, _ = run(capsys, "volume", "--input", str(DATA / "honeycomb_cubic.json"))
    doc = json.loads(out)
    assert doc["artifact"] == {"name": "motivol", "version": __version__}
    assert doc["parameters"] == {"assume_schoen": False}
    f = PuiseuxPoly.from_json(json.loads((DATA / "honeycomb_cubic.json").read_text()))
    V = motivic_volume_curve(f)
    assert MotivicClass.from_records(doc["result"]["volume"]["records"]) == V
    assert doc["result"]["volume"]["chi_y"]["text"] == "-9"
    assert doc["result"]["volume"]["euler"] == "-9"

    _, out, _ = run(capsys, "semistable", "--input", str(DATA / "ss_example.json"))
    doc = json.loads(out)
    F = StratifiedSpecialFiber.from_json(json.loads((DATA / "ss_example.json").read_text()))
    assert doc["result"]["volume"]["text"] == str(semistable_volume(F)) == "u*v - 1"
    assert doc["result"]["volume"]["chi_y"]["text"] == "y - 1"

    _, out, _ = run(capsys, "zeta-extract", "--input", str(DATA / "p1_series.json"))
    doc = json.loads(out)
    series, g = MotivicSeries.from_json(json.loads((DATA / "p1_series.json").read_text()))
    assert doc["result"]["N_mot_str"] == [str(x) for x in refined_from_hilb(series, g).N]
    assert doc["result"]["N_mot_str"] == ["1"] + ["0"] * 6


def test_genus_and_truncation_flags(capsys):
    code, out, _ = run(
        capsys, "zeta-extract", "--input", str(DATA / "p1_series.json"), "--genus", "0", "--truncation", "3"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["parameters"] == {"g": 0, "M": 3}
    assert len(doc["result"]["N_mot"]) == 4


def test_human_format(capsys):
    code, out, _ = run(capsys, "chi", "--input", str(DATA / "chi_blowup.json"), "--format", "human")
    assert code == 0
    assert "chi_y: y^2 + 10*y + 1" in out
    assert "euler: 12" in out


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return str(p)


def error_of(err):
    return json.loads(err.strip().splitlines()[-1])["error"]


def test_exit_one_on_schema_errors(tmp_path, capsys):
    code, out, err = run(capsys, "trop", "--input", write(tmp_path, "bad.json", "{not json"))
    assert code == 1 and out == ""
    assert error_of(err)["kind"] == "schema"
    code, _, err = run(
        capsys, "volume", "--input", write(tmp_path, "w.json", {"terms": [{"m": [0, 0], "w": "a/b"}]})
    )
    assert code == 1
    assert error_of(err)["field"] == "terms[0].w"
    code, _, err = run(capsys, "zeta-extract", "--input", write(tmp_path, "z.json", {"coeffs": [[]]}))
    assert code == 1
    assert error_of(err)["field"] == "g"
    code, _, err = run(capsys, "chi", "--input", str(tmp_path / "missing.json"))
    assert code == 1


def test_exit_two_on_precondition_failures(tmp_path, capsys):
    code, _, err = run(capsys, "volume", "--input", str(DATA / "trivial_cubic.json"))
    assert code == 2
    e = error_of(err)
    assert e["field"] == "SchoenError"
    assert "cell [[0, 0], [3, 0], [0, 3]]" in e["message"]
    code, _, _ = run(
        capsys, "zeta-extract", "--input", str(DATA / "p1_series.json"), "--truncation", "20"
    )
    assert code == 2
    code, _, _ = run(capsys, "bg", "--input", str(DATA / "binomial_xy.json"))
    assert code == 2


def test_exit_three_on_invariant_violation(monkeypatch, capsys):
    import motivol.cli as cli

    monkeypatch.setattr(cli, "semistable_volume", lambda F: MotivicClass.coerce(42))
    code, _, err = run(capsys, "semistable", "--input", str(DATA / "ss_example.json"))
    assert code == 3
    assert error_of(err)["kind"] == "invariant"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "motivol", "chi", "--input", str(DATA / "chi_blowup.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "chi__chi_blowup.json").read_text()
