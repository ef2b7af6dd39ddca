import json

import pytest

from gtorsion.cli import main, parse_slope
from gtorsion.presentation import figure_eight_diagram, torus_presentation


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


BUILDS = [
    ("torus", "--p", 2, "--q", 3),
    ("torus", "--p", 3, "--q", 4, "--slope", "5/2"),
    ("genus1", "--p", 1, "--q", 1, "--slope", "3/2"),
    ("genus1", "--p", 1, "--q", -1, "--slope", "1", "--case", "3"),
    ("diagram", "--knot", "trefoil", "--slope", "7/2"),
    ("disk", "--family", "torus", "--p", 2, "--q", 3, "--p-count", 2, "--slope", "5/2"),
]


@pytest.mark.parametrize("build", BUILDS)
def test_build_then_verify(build, tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, doc = run(capsys, "build", *build, "-o", path)
    assert code == 0 and doc["type"] == "torsion"
    code, rep = run(capsys, "verify", path)
    assert code == 0 and rep["verdict"] == "accepted" and rep["k"] == len(doc["conjugators"])


def test_tampered_certificate_exits_1(tmp_path, capsys):
    path = tmp_path / "cert.json"
    run(capsys, "build", "genus1", "--p", 1, "--q", 1, "--slope", "2", "-o", path)
    doc = json.loads(path.read_text())
    doc["proof"]["moves"][1]["exp"] *= -1
    path.write_text(json.dumps(doc))
    code, rep = run(capsys, "verify", path)
    assert code == 1 and rep["verdict"] == "rejected"


def test_overflow_exits_3(tmp_path, capsys):
    path = tmp_path / "cert.json"
    run(capsys, "build", "genus1", "--p", 1, "--q", 1, "--slope", "5/3", "-o", path)
    code, rep = run(capsys, "verify", path, "--max-length", 5)
    assert code == 3 and rep["verdict"] == "overflow"


def test_verify_with_oracles_and_figure(tmp_path, capsys):
    path, fig = tmp_path / "cert.json", tmp_path / "trace.png"
    run(capsys, "build", "torus", "--p", 2, "--q", 3, "--slope", "1", "-o", path)
    code, rep = run(capsys, "verify", path, "--oracles", "--figure", fig)
    assert code == 0
    assert rep["oracles"]["coset"]["index"] == 120
    assert rep["oracles"]["coset"]["base_nontrivial"] is True
    assert fig.stat().st_size > 1000 and fig.read_bytes()[:4] == b"\x89PNG"


@pytest.mark.parametrize("argv,code", [
    (("build", "genus1", "--p", 1, "--q", 1, "--slope", "0"), 1),
    (("build", "diagram", "--knot", "trefoil", "--slope", "2"), 1),
    (("build", "genus1", "--p", 1, "--q", 1, "--slope", "4/2"), 2),
    (("build", "genus1", "--p", 1, "--q", 1, "--slope", "inf"), 2),
    (("build", "genus1", "--slope", "1"), 2),
    (("build", "nonsense"), 2),
    (("classify", "--family", "montesinos", "--slope", "1", "--tangles", "[[2"), 2),
])
def test_exit_codes(argv, code, capsys):
    got, _ = run(capsys, *argv)
    assert got == code


def test_verify_missing_file(tmp_path, capsys):
    code, doc = run(capsys, "verify", tmp_path / "absent.json")
    assert code == 2 and "error" in doc


def test_classify_outputs(capsys):
    code, doc = run(capsys, "classify", "--family", "cable", "--p", 2, "--q", 3, "--slope", "13")
    assert code == 0 and doc["results"][0]["evidence"] == "external_citation"
    code, doc = run(capsys, "classify", "--family", "cable", "--p", 2, "--q", 3, "--slope", "7")
    assert code == 1 and not doc["applies"]
    code, doc = run(capsys, "classify", "--family", "montesinos", "--slope", "4",
                    "--tangles", "[[2,-2,2],[2,1]]")
    assert code == 0 and doc["applies"]


def test_abelianize_and_alexander(capsys):
    code, doc = run(capsys, "abelianize", "--family", "genus1", "--p", 1, "--q", 1, "--slope", "5")
    assert code == 0 and doc["h1"]["factors"] == [5] and doc["meridian_order"] == 5
    code, doc = run(capsys, "alexander", "--family", "genus1", "--p", 2, "--q", 3)
    assert doc["coefficients"] == [-6, 11, -6] and doc["fox_coefficients"] == [-6, 13, -6]
    code, doc = run(capsys, "alexander", "--knot", "figure-eight")
    assert doc["coefficients"] == [-1, 3, -1]


def test_enumerate(capsys):
    code, doc = run(capsys, "enumerate", "--family", "torus", "--p", 2, "--q", 3, "--slope", "1")
    assert code == 0 and doc["coset"]["index"] == 120
    code, doc = run(capsys, "enumerate", "--knot", "figure-eight", "--slope", "1", "--cap", 500)
    assert code == 3 and doc["coset"]["status"] == "overflow"


def test_presentation_and_diagram_files(tmp_path, capsys):
    pres = tmp_path / "p.json"
    pres.write_text(json.dumps(torus_presentation(2, 5).to_json()))
    code, doc = run(capsys, "abelianize", "--presentation", pres, "--slope", "3")
    assert code == 0 and doc["h1"]["factors"] == [3]
    diag = tmp_path / "d.json"
    diag.write_text(json.dumps(figure_eight_diagram().to_json()))
    code, doc = run(capsys, "classify", "--family", "diagram", "--diagram", diag, "--slope", "9")
    assert code == 1


def test_batch_parallel_matches_serial(tmp_path, capsys):
    manifest = tmp_path / "m.json"
    manifest.write_text(json.dumps([
        {"family": "genus1", "p": 1, "q": 1, "slope": "3/2"},
        {"family": "torus", "p": 2, "q": 5},
        {"family": "diagram", "knot": "trefoil", "slope": "2"},
        {"family": "genus1", "p": 1, "q": 1, "slope": "7/0"},
    ]))
    code1, serial = run(capsys, "batch", manifest)
    code2, parallel = run(capsys, "batch", manifest, "--jobs", 3)
    assert serial == parallel
    assert code1 == code2 == 2
    assert [r["exit"] for r in serial["results"]] == [0, 0, 1, 2]


def test_output_is_deterministic(capsys):
    argv = ("build", "genus1", "--p", 2, "--q", 3, "--slope", "7/2")
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert a == b


@pytest.mark.parametrize("text,pair", [("3", (3, 1)), ("-7/2", (-7, 2))])
def test_parse_slope(text, pair):
    s = parse_slope(text)
    assert (s.m, s.n) == pair
