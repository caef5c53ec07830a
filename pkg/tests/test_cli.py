import json
import xml.etree.ElementTree as ET

import pytest

from hermwron import svg
from hermwron.cli import _ls_scale, main


def run(tmp_path, *args):
    return main([*args, "-o", str(tmp_path)])


def test_wronskian_command(tmp_path, capsys):
    assert run(tmp_path, "wronskian", "-p", "1,1") == 0
    doc = json.loads((tmp_path / "wronskian_1_1.json").read_text())
    assert doc["coeffs"] == ["-4", "0", "-8"]
    assert doc["degree"] == 2 and doc["parity"] == "even"
    assert "degree 2" in capsys.readouterr().out


def test_wronskian_monomial(tmp_path):
    assert run(tmp_path, "wronskian", "-p", "2,1") == 0
    doc = json.loads((tmp_path / "wronskian_2_1.json").read_text())
    assert doc["coeffs"] == ["0", "0", "0", "-32"] and doc["origin_multiplicity"] == 3


@pytest.mark.parametrize("text", ["0,1", "1/3", "x"])
def test_wronskian_parse_error(tmp_path, text, capsys):
    assert run(tmp_path, "wronskian", "-p", text) == 1
    assert "error" in capsys.readouterr().err


def test_roots_command(tmp_path):
    assert run(tmp_path, "roots", "-p", "1,1", "-d", "20") == 0
    doc = json.loads((tmp_path / "roots_1_1.json").read_text())
    assert doc["classification"] == {"real": 0, "imaginary_upper": 1, "generic_upper": 0}
    ET.parse(tmp_path / "roots_1_1.svg")


def test_roots_staircase(tmp_path, capsys):
    assert run(tmp_path, "roots", "-p", "3,2,1") == 0
    doc = json.loads((tmp_path / "roots_3_2_1.json").read_text())
    assert doc["origin_multiplicity"] == 6 and doc["roots"] == []


def test_roots_digits_floor(tmp_path):
    assert run(tmp_path, "roots", "-p", "1,1", "-d", "5") == 1


def test_digits_env(tmp_path, monkeypatch):
    monkeypatch.setenv("HERMWRON_DIGITS", "40")
    assert run(tmp_path, "roots", "-p", "1,1") == 0
    doc = json.loads((tmp_path / "roots_1_1.json").read_text())
    assert len(doc["roots"][0]["im"].split("e")[0].replace("-", "").replace(".", "")) == 45
    monkeypatch.setenv("HERMWRON_DIGITS", "lots")
    assert run(tmp_path, "roots", "-p", "1,1") == 1


def test_overlay_side_by_side(tmp_path):
    assert run(tmp_path, "overlay", "-p", "5,3,2", "--doubled") == 0
    root = ET.parse(tmp_path / "overlay_5_3_2_doubled.svg").getroot()
    assert len([g for g in root.iter("{http://www.w3.org/2000/svg}g") if g.get("class") == "panel"]) == 2
    info = json.loads((tmp_path / "overlay_5_3_2_doubled.json").read_text())
    assert info["bullets"] == info["zeros"] == 40


def test_overlay_half_integer_superimposed(tmp_path, capsys):
    assert run(tmp_path, "overlay", "-p", "11/2,5/2,1", "--doubled", "--superimpose") == 0
    info = json.loads((tmp_path / "overlay_11_2_5_2_1_doubled.json").read_text())
    assert info["wronskian_partition"] == "(11^2,5^2,2^2)" and info["scale"] > 0
    assert "least-squares scale" in capsys.readouterr().out


def test_overlay_needs_doubled_for_half_integers(tmp_path):
    assert run(tmp_path, "overlay", "-p", "3/2") == 1


def test_ls_scale():
    pts = [(1.0, 0.0), (0.0, 2.0)]
    assert _ls_scale(pts, [(3.0, 0.0), (0.0, 6.0)]) == pytest.approx(3.0)


def test_curves_command(tmp_path):
    assert run(tmp_path, "curves", "--four-doubled", "-n", "20", "-l", "3", "--num", "41") == 0
    stem = tmp_path / "curves_four-term-doubled_n20_l3"
    fit = json.loads(stem.with_name(stem.name + "_fit.json").read_text())
    assert fit["wronskian"] == "W(H_20,H_21,H_24,H_25)"
    rows = stem.with_suffix(".csv").read_text().splitlines()
    assert rows[0] == "x,branch,y" and len(rows) == 1 + 2 * 41


def test_curves_invalid(tmp_path):
    assert run(tmp_path, "curves", "--four-doubled", "-n", "10", "-l", "10") == 1
    assert run(tmp_path, "curves", "--two-term", "-n", "10", "-k", "0") == 1
    with pytest.raises(SystemExit):
        main(["curves", "-n", "10"])


def test_scan_commands(tmp_path, capsys):
    assert run(tmp_path, "scan", "--conjecture1", "--max-weight", "6") == 0
    lines = (tmp_path / "scan_conjecture1_w6.jsonl").read_text().splitlines()
    assert len(lines) == 29 and "all pass" in capsys.readouterr().out
    assert run(tmp_path, "scan", "--conjecture2", "--max-part", "3", "--max-len", "2") == 0
    assert run(tmp_path, "scan", "--conjecture1", "--max-weight", "0") == 0
    assert (tmp_path / "scan_conjecture1_w0.jsonl").read_text() == ""


def test_scan_hard_failure_exit(tmp_path, monkeypatch):
    import hermwron.conjecture as cj

    monkeypatch.setattr(cj, "origin_multiplicity", lambda p: -1)
    assert run(tmp_path, "scan", "--conjecture1", "--max-weight", "2") == 2


def test_semicircle_command(tmp_path):
    assert run(tmp_path, "semicircle", "-n", "20", "-k", "1", "--bins", "10") == 0
    doc = json.loads((tmp_path / "semicircle_n20_k1.json").read_text())
    assert doc["samples"] == 20 and 0 < doc["ks"] < 0.2
    assert len((tmp_path / "semicircle_n20_k1.csv").read_text().splitlines()) == 11


def test_semicircle_validation(tmp_path):
    assert run(tmp_path, "semicircle", "-n", "0", "-k", "1") == 1


def test_outputs_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert main(["roots", "-p", "4,2", "-o", str(d)]) == 0
        assert main(["semicircle", "-n", "12", "-o", str(d)]) == 0
    for name in ("roots_4_2.json", "roots_4_2.svg", "semicircle_n12_k1.csv", "semicircle_n12_k1.svg"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    assert not list(a.glob(".*.tmp"))


def test_svg_viewbox_from_extents():
    doc = svg.render([svg.Panel(series=[svg.Series([(-2.0, 1.0), (2.0, -1.0)])], symmetric=True)])
    root = ET.fromstring(doc.split("\n", 1)[1])
    assert root.get("viewBox") == f"0 0 {svg.PANEL} {svg.PANEL}"
    assert doc.count("<circle") == 2
    with pytest.raises(ValueError):
        svg.render([svg.Panel(series=[svg.Series([(0.0, 0.0)], kind="bar")])])
