import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given

from belyi.chain import BelyiStep, MapChain, MobiusStep, PolyStep
from belyi.cli import main
from belyi.errors import InputError
from belyi.exact import INF, MobiusMap, RatPoly
from belyi.textio import chain_to_document, document_to_chain, dumps_chain, loads_chain, parse_points, parse_poly
from helpers import polys

z = RatPoly.z()

GOLDEN = [
    MapChain([PolyStep(z**2 - 2), MobiusStep(MobiusMap(1, 2, 0, 2))]),
    MapChain([PolyStep(RatPoly([0, Fraction(27, 4), Fraction(-27, 2), Fraction(27, 4)]))]),
    MapChain([MobiusStep(MobiusMap(1, -1, 1, 0)), PolyStep(4 * z * (1 - z))]),
    MapChain([PolyStep(z**3 - 6 * z + 1), BelyiStep(10**40 + 1, 3**70), MobiusStep(MobiusMap(0, 1, 1, 0))]),
    MapChain.identity(),
]


# -- parsing ----------------------------------------------------------------


def test_parse_poly_forms():
    assert parse_poly("z^2 - 2") == z**2 - 2
    assert parse_poly("27/4*z^3 - 3z + 1/2") == Fraction(27, 4) * z**3 - 3 * z + Fraction(1, 2)
    assert parse_poly("-z**2 + z") == z - z**2
    assert parse_poly("  5 ") == RatPoly.const(5)
    assert parse_poly("z + z") == 2 * z


@pytest.mark.parametrize(
    "text,pos",
    [("z^2 +", 5), ("z^2 2", 4), ("", 0), ("3/0*z", 2), ("z^", 2), ("x + 1", 0)],
)
def test_parse_poly_errors_carry_position(text, pos):
    with pytest.raises(InputError) as info:
        parse_poly(text)
    assert info.value.position == pos
    assert f"position {pos}" in str(info.value)


def test_parse_points():
    assert parse_points("0, 1,oo, -3/6") == [0, 1, INF, Fraction(-1, 2)]
    with pytest.raises(InputError) as info:
        parse_points("0,,1")
    assert info.value.position == 2
    with pytest.raises(InputError):
        parse_points("1/x")


@given(polys(max_degree=6))
def test_poly_text_round_trip(p):
    assert parse_poly(str(p)) == p


# -- documents --------------------------------------------------------------


@pytest.mark.parametrize("chain", GOLDEN, ids=range(len(GOLDEN)))
def test_golden_round_trip(chain):
    text = dumps_chain(chain, {"note": "golden"})
    back = loads_chain(text)
    assert back == chain
    assert dumps_chain(back, {"note": "golden"}) == text


def test_document_shape():
    doc = chain_to_document(GOLDEN[0])
    assert doc["steps"][0] == {"kind": "poly", "coeffs": ["-2", "0", "1"]}
    assert doc["steps"][1] == {"kind": "mobius", "matrix": [["1", "2"], ["0", "2"]]}
    assert doc["total_degree"] == 2


@pytest.mark.parametrize(
    "doc,fragment",
    [
        ({"steps": [{"kind": "poly", "coeffs": ["1", "x"]}]}, "step 0"),
        ({"steps": [{"kind": "poly", "coeffs": ["1", "2"]}, {"kind": "mobius", "matrix": [["1", "2"], ["2", "4"]]}]}, "step 1"),
        ({"steps": [{"kind": "spline"}]}, "unknown step kind"),
        ({"steps": []}, "non-empty"),
        ({"steps": [{"kind": "poly", "coeffs": ["0", "1"]}], "total_degree": 5}, "total_degree"),
        ({"format": "other", "steps": []}, "format"),
    ],
)
def test_malformed_documents(doc, fragment):
    with pytest.raises(InputError, match=fragment):
        document_to_chain(doc)


def test_truncated_json():
    with pytest.raises(InputError, match="line 1"):
        loads_chain('{"steps": [')


# -- command line -----------------------------------------------------------


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_belyi_sqrt2(tmp_path, capsys):
    out_file = tmp_path / "c.json"
    code, out, _ = run(["belyi", "--poly", "z^2 - 2", "--out", str(out_file)], capsys)
    assert code == 0
    assert "total degree: 2" in out and "verified: Belyi" in out
    assert "step\tkind\tdegree\tmap" in out
    chain = loads_chain(out_file.read_text())
    assert chain.total_degree == 2

    code, out, _ = run(["verify", str(out_file)], capsys)
    assert code == 0 and "verdict: Belyi" in out


def test_cli_points(capsys):
    code, out, _ = run(["belyi", "--points", "0,1,oo", "--json"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["chain"]["steps"] == [{"kind": "mobius", "matrix": [["1", "0"], ["0", "1"]]}]
    code, out, _ = run(["belyi", "--points", "0,1,oo,1/3", "--json"], capsys)
    doc = json.loads(out)
    assert doc["chain"]["steps"] == [{"kind": "poly", "coeffs": ["0", "27/4", "-27/2", "27/4"]}]
    assert doc["report"]["verified"] is True


def test_cli_non_squarefree_warns(capsys):
    code, out, err = run(["belyi", "--poly", "z^4 - 4z^2 + 4"], capsys)
    assert code == 0 and "not squarefree" in err and "z^2 - 2" in err


def test_cli_verify_negative(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(dumps_chain(MapChain([PolyStep(z**2 - 2)])))
    code, out, _ = run(["verify", str(path)], capsys)
    assert code == 1
    assert "verdict: not Belyi" in out and "-2" in out


def test_cli_verify_accepts_wrapped_output(tmp_path, capsys):
    _, out, _ = run(["belyi", "--points", "0,1,2,oo", "--json"], capsys)
    path = tmp_path / "wrapped.json"
    path.write_text(out)
    code, out, _ = run(["verify", str(path), "--json"], capsys)
    assert code == 0 and json.loads(out)["belyi"] is True


def test_cli_input_errors(tmp_path, capsys):
    code, _, err = run(["belyi", "--poly", "z^2 +"], capsys)
    assert code == 2 and "position 5" in err
    path = tmp_path / "trunc.json"
    path.write_text('{"steps": [')
    code, _, err = run(["verify", str(path)], capsys)
    assert code == 2 and "line 1" in err
    code, _, err = run(["verify", str(tmp_path / "missing.json")], capsys)
    assert code == 2
    code, _, err = run(["census", "bound", "4", "3"], capsys)
    assert code == 2


def test_cli_resource_refusals(tmp_path, capsys):
    code, _, err = run(["census", "enumerate", "8"], capsys)
    assert code == 3 and "limit 7" in err
    path = tmp_path / "big.json"
    path.write_text(dumps_chain(MapChain([PolyStep(z**1000), PolyStep(z**1000)])))
    code, _, err = run(["expand", str(path)], capsys)
    assert code == 3 and "1000000" in err


def test_cli_expand(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(dumps_chain(MapChain([PolyStep(z**2), MobiusStep(MobiusMap(0, 1, 1, 0))])))
    code, out, _ = run(["expand", str(path), "--json"], capsys)
    assert code == 0
    assert json.loads(out) == {"numerator": ["1"], "denominator": ["0", "0", "1"], "degree": 2}


def test_cli_census(capsys):
    assert run(["census", "count", "4"], capsys)[1].strip() == "71"
    assert run(["census", "bound", "2", "2"], capsys)[1].strip() == "3"
    assert run(["census", "passport", "3", "3/3/3"], capsys)[1].strip() == "1"
    code, out, _ = run(["census", "enumerate", "2"], capsys)
    rows = [line.split("\t") for line in out.splitlines() if line and line[0].isdigit()]
    assert code == 0 and len(rows) == 3
    assert all(r[2] == "0" and r[3] == "2" for r in rows)
    assert "ok" in out


def test_cli_census_json(capsys):
    code, out, _ = run(["census", "enumerate", "3", "--json"], capsys)
    doc = json.loads(out)
    assert doc["d"] == 3 and doc["m_d"] == 13 and doc["identities"] == {"class_mass_ok": True}
    assert len(doc["classes"]) == 7
    first = doc["classes"][0]
    assert set(first) == {"passport", "genus", "aut_order", "representative"}
    assert set(first["representative"]) == {"sigma0", "sigma1"}


@pytest.mark.parametrize(
    "argv",
    [
        ["belyi", "--poly", "z^3 - 2", "--points", "5,1/7", "--json"],
        ["census", "enumerate", "4", "--json"],
        ["belyi", "--points", "0,1,2,3,oo", "--json"],
    ],
)
def test_json_is_byte_stable(argv, capsys):
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second and first.endswith("\n")


def test_cli_figures(tmp_path, capsys):
    for argv in (
        ["census", "enumerate", "4", "--figure", str(tmp_path / "census.png")],
        ["census", "count", "6", "--figure", str(tmp_path / "hall.png")],
        ["belyi", "--points", "0,1,2,3,oo", "--figure", str(tmp_path / "degrees.png")],
    ):
        assert run(argv, capsys)[0] == 0
    for name in ("census.png", "hall.png", "degrees.png"):
        data = (tmp_path / name).read_bytes()
        assert data[:8] == b"\x89PNG\r\n\x1a\n"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "belyi", "census", "count", "5"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "461"
