import json

import pytest

from aztec.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_count(capsys):
    code, out = run(capsys, "count", "--N", "5")
    assert code == 0 and out.out.strip() == "32768"
    code, out = run(capsys, "half", "count", "--M", "2")
    assert code == 0 and out.out.strip() == "64"


def test_pdf_outputs_exact_rationals(capsys):
    code, out = run(capsys, "pdf", "--N", "2", "--lines", "[[1],[2,0]]")
    rec = json.loads(out.out)
    assert code == 0 and rec["probability"]["exact"] == "1/4" and rec["schema_version"] == 1
    code, out = run(capsys, "pdf", "--N", "2", "--n", "1", "--positions", "[1]")
    assert json.loads(out.out)["probability"]["exact"] == "1/2"
    code, out = run(capsys, "half", "pdf", "--M", "1", "--kind", "joint", "--lines", "[[1],[2]]")
    assert json.loads(out.out)["probability"]["exact"] == "1/2"


def test_verify(capsys):
    code, out = run(capsys, "verify", "prop1", "--N", "4")
    assert code == 0 and out.out.startswith("PASS")
    code, out = run(capsys, "half", "verify", "--M", "2")
    assert code == 0 and "FAIL" not in out.out


def test_render_all(tmp_path, capsys):
    code, _ = run(capsys, "render", "--N", "2", "--all", "--out", str(tmp_path))
    files = sorted(tmp_path.glob("*.svg"))
    assert code == 0 and len(files) == 8
    assert all(f.read_text().startswith("<?xml") for f in files)


def test_sample_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for path in (a, b):
        assert main(["sample", "--N", "6", "--count", "3", "--seed", "9", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    header = json.loads(lines[0])
    assert header["config"]["seed"] == 9 and header["schema_version"] == 1
    assert all("lines" in json.loads(l) for l in lines[1:]) and len(lines) == 4


def test_sample_half_and_tilings(tmp_path):
    out = tmp_path / "h.jsonl"
    assert main(["sample-half", "--M", "3", "--count", "2", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 3
    out = tmp_path / "t.jsonl"
    assert main(["sample", "--N", "3", "--tiling", "--out", str(out)]) == 0
    assert "dominoes" in json.loads(out.read_text().splitlines()[1])["tiling"]


def test_limit_check(tmp_path):
    out = tmp_path / "lim.csv"
    assert main(["limit-check", "--n", "2", "--N-list", "100,400,1600", "--csv", str(out), "--tol", "0.1"]) == 0
    rows = [l.split(",") for l in out.read_text().splitlines()[2:]]
    errs = [float(r[2]) for r in rows]
    assert errs == sorted(errs, reverse=True)
    assert main(["limit-check", "--half", "--n", "3", "--N-list", "100,400", "--tol", "1e-9"]) == 2


def test_arctic_small(tmp_path):
    csv_path, svg_path = tmp_path / "a.csv", tmp_path / "a.svg"
    argv = ["arctic", "--N", "12", "--count", "30", "--seed", "1", "--csv", str(csv_path), "--out", str(svg_path)]
    assert main(argv) == 0
    first = csv_path.read_bytes()
    assert main(argv) == 0
    assert csv_path.read_bytes() == first
    text = first.decode().splitlines()
    assert text[0].startswith("# ") and text[1].startswith("schema_version,line,s,a_theory")
    assert "<circle" in svg_path.read_text()
    assert main(["arctic", "--M", "6", "--count", "30", "--csv", str(csv_path)]) == 0


def exit_code(argv):
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


@pytest.mark.parametrize("argv,code", [
    (["count", "--N", "0"], 4),
    (["count", "--N", "x"], 4),
    (["pdf", "--N", "2", "--lines", "not json"], 4),
    (["sample", "--N", "65", "--mode", "exact"], 3),
    (["render", "--N", "5", "--all"], 3),
    (["nonsense"], 4),
])
def test_exit_codes(argv, code, capsys):
    assert exit_code(argv) == code
