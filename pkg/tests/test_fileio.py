import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import square_system
from tilebundle.errors import ParseError
from tilebundle.fileio import (
    dumps,
    load_patch,
    load_system,
    patch_to_json,
    save_patch,
    save_system,
    system_from_json,
    system_to_json,
)
from tilebundle.tilemodel import Patch, system_from_words


def test_unit_square_round_trip(tmp_path, unit_square):
    save_system(unit_square, tmp_path / "s.json")
    assert load_system(tmp_path / "s.json") == unit_square


def test_penrose_integral_round_trip(tmp_path, penrose_int):
    f = tmp_path / "p.json"
    save_system(penrose_int, f)
    back = load_system(f)
    assert back == penrose_int and len(back.edge_types) == 40
    save_system(back, tmp_path / "q.json")
    assert (tmp_path / "q.json").read_text() == f.read_text()


def test_real_literals_verbatim(tmp_path, penrose_real):
    f = tmp_path / "r.json"
    save_system(penrose_real, f)
    back = load_system(f)
    assert [e.vector[0].text for e in back.edge_types] == [e.vector[0].text for e in penrose_real.edge_types]
    save_system(back, tmp_path / "r2.json")
    assert (tmp_path / "r2.json").read_text() == f.read_text()


def test_number_formats():
    s = system_from_words("rational", {"u": ("1/2", 3), "v": (0, "-7/3")}, {})
    doc = system_to_json(s)
    assert doc["edge_types"][0]["vector"] == ["1/2", 3]
    assert doc["edge_types"][1]["vector"] == [0, "-7/3"]
    assert system_from_json(doc) == s


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.fractions(), st.fractions()), min_size=1, max_size=6))
def test_rational_string_round_trip(vecs):
    s = system_from_words("rational", {f"e{i}": v for i, v in enumerate(vecs)}, {})
    text = dumps(system_to_json(s))
    back = system_from_json(json.loads(text))
    assert back == s and dumps(system_to_json(back)) == text


def doc_with(**changes):
    doc = system_to_json(square_system())
    for path, value in changes.items():
        target = doc
        keys = path.split("__")
        for k in keys[:-1]:
            target = target[int(k)] if k.isdigit() else target[k]
        last = keys[-1]
        target[int(last) if last.isdigit() else last] = value
    return doc


@pytest.mark.parametrize(
    "changes, fragment",
    [
        ({"prototiles__0__boundary__0__sign": 2}, "sign"),
        ({"prototiles__0__boundary__0__edge": "zz"}, "unknown edge"),
        ({"stage": "imaginary"}, "stage"),
        ({"edge_types__0__vector": [0.5, 0]}, "edge_types[0].vector[0]"),
        ({"edge_types__0__vector": ["1/2", 0]}, "integral"),
        ({"edge_types__0__vector": [1]}, "2 components"),
    ],
)
def test_parse_errors(changes, fragment):
    with pytest.raises(ParseError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        system_from_json(doc_with(**changes))


def test_float_at_rational_stage():
    doc = system_to_json(square_system("rational"))
    doc["edge_types"][0]["vector"] = [0.25, 0]
    with pytest.raises(ParseError, match="float"):
        system_from_json(doc)


def test_malformed_json_reports_line(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{\n  "stage": "integral",\n  "edge_types": [\n}')
    with pytest.raises(ParseError, match="line 4"):
        load_system(f)
    with pytest.raises(ParseError):
        load_system(tmp_path / "missing.json")


def test_patch_inline_and_reference(tmp_path, unit_square):
    p = Patch([("S", (0, 0)), ("S", (1, 0))], seed=1, origin_offset=(Fraction(1, 3), 0))
    save_patch(p, unit_square, tmp_path / "inline.json")
    assert load_patch(tmp_path / "inline.json") == (p, unit_square)
    save_system(unit_square, tmp_path / "sq.json")
    save_patch(p, "sq.json", tmp_path / "ref.json")
    assert load_patch(tmp_path / "ref.json") == (p, unit_square)
    doc = json.loads((tmp_path / "ref.json").read_text())
    assert doc["origin_offset"] == ["1/3", 0] and doc["system"] == "sq.json"


def test_patch_errors(tmp_path, unit_square):
    doc = patch_to_json(Patch([("S", (0, 0))]), unit_square)
    doc["placed"][0]["tile"] = "Q"
    with pytest.raises(ParseError, match="unknown prototile"):
        from tilebundle.fileio import patch_from_json
        patch_from_json(doc)
    doc["placed"][0]["tile"] = "S"
    doc["seed"] = 4
    with pytest.raises(ParseError, match="seed"):
        from tilebundle.fileio import patch_from_json
        patch_from_json(doc)
