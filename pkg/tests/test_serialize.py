import json

import pytest

from twoham import INFINITE, TAS, Glue, Supertile, TileSet, TileType
from twoham import ladders, weak
from twoham.errors import DanglingTileId, NegativeStrength, SchemaError
from twoham.serialize import (
    compiled_document,
    parse_compiled,
    parse_tas,
    serialize_compiled,
    serialize_tas,
)


def one_tile_tas():
    ts = TileSet([TileType("a", east=Glue("g", 2), west=Glue("g", 2))])
    return TAS(ts, 2)


def duple_tas():
    ts = TileSet([
        TileType("a", east=Glue("g", 2)),
        TileType("b", west=Glue("g", 2)),
    ])
    duple = Supertile({(0, 0): "a", (1, 0): "b"})
    return TAS(ts, 2, [(duple, 3), (Supertile({(0, 0): "a"}), INFINITE)])


def test_minimal_document_is_byte_stable():
    tas = one_tile_tas()
    first = serialize_tas(tas)
    assert serialize_tas(tas) == first
    assert serialize_tas(parse_tas(first)) == first
    doc = json.loads(first)
    assert doc["temperature"] == 2
    assert "initial_state" not in doc
    assert doc["tiles"][0]["north"] == {"label": "", "strength": 0}


def test_ladder_system_round_trips():
    tas = ladders.build_ladder_system(2).tas
    text = serialize_tas(tas)
    back = parse_tas(text)
    assert back.tau == tas.tau
    assert [t.id for t in back.tile_set] == [t.id for t in tas.tile_set]
    assert back.tile_set.tiles == tas.tile_set.tiles
    assert back.supertile_counts() == tas.supertile_counts()
    assert serialize_tas(back) == text


def test_explicit_state_round_trips_counts():
    tas = duple_tas()
    doc = json.loads(serialize_tas(tas))
    counts = sorted(entry["count"] for entry in doc["initial_state"]
                    if isinstance(entry["count"], int))
    assert counts == [3]
    assert "inf" in {entry["count"] for entry in doc["initial_state"]}
    back = parse_tas(serialize_tas(tas))
    assert back.supertile_counts() == tas.supertile_counts()
    assert serialize_tas(back) == serialize_tas(tas)


def test_placement_coordinates_are_normalized_on_parse():
    text = serialize_tas(duple_tas())
    doc = json.loads(text)
    for cell in doc["initial_state"][0]["placement"]:
        cell["x"] += 7
        cell["y"] -= 2
    shifted = parse_tas(json.dumps(doc))
    assert serialize_tas(shifted) == text


def test_negative_strength_is_its_own_error():
    doc = json.loads(serialize_tas(one_tile_tas()))
    doc["tiles"][0]["east"]["strength"] = -1
    with pytest.raises(NegativeStrength, match=r"tiles\[0\]\.east"):
        parse_tas(json.dumps(doc))


def test_malformed_json_reports_position():
    with pytest.raises(SchemaError, match="line 1 column"):
        parse_tas("{nope}")


@pytest.mark.parametrize("mangle,message", [
    (lambda d: d.pop("temperature"), "missing field 'temperature'"),
    (lambda d: d.__setitem__("extra", 1), "unknown field 'extra'"),
    (lambda d: d.__setitem__("temperature", "hot"), "expected an integer"),
    (lambda d: d.__setitem__("temperature", 0), "temperature must be"),
    (lambda d: d.__setitem__("tiles", []), "non-empty list"),
    (lambda d: d["tiles"][0].pop("id"), "missing field 'id'"),
    (lambda d: d["tiles"][0].__setitem__("up", {}), "unknown field 'up'"),
    (lambda d: d["tiles"][0]["east"].__setitem__("strength", "2"),
     r"tiles\[0\]\.east\.strength"),
])
def test_document_shape_errors_name_the_field(mangle, message):
    doc = json.loads(serialize_tas(one_tile_tas()))
    mangle(doc)
    with pytest.raises(SchemaError, match=message):
        parse_tas(json.dumps(doc))


def state_doc():
    doc = json.loads(serialize_tas(one_tile_tas()))
    doc["initial_state"] = [
        {"count": 2, "placement": [{"x": 0, "y": 0, "tile": "a"}]}]
    return doc


def test_placement_errors_carry_paths():
    doc = state_doc()
    doc["initial_state"][0]["placement"][0]["tile"] = "ghost"
    with pytest.raises(DanglingTileId, match=r"placement\[0\]\.tile.*'ghost'"):
        parse_tas(json.dumps(doc))

    doc = state_doc()
    doc["initial_state"][0]["placement"].append({"x": 0, "y": 0, "tile": "a"})
    with pytest.raises(SchemaError, match="duplicate cell"):
        parse_tas(json.dumps(doc))

    doc = state_doc()
    doc["initial_state"][0]["count"] = 0
    with pytest.raises(SchemaError, match="positive count"):
        parse_tas(json.dumps(doc))

    doc = state_doc()
    doc["initial_state"][0]["placement"] = [
        {"x": 0, "y": 0, "tile": "a"}, {"x": 5, "y": 5, "tile": "a"}]
    with pytest.raises(SchemaError, match="stable"):
        parse_tas(json.dumps(doc))


def test_duplicate_tile_ids_rejected():
    doc = json.loads(serialize_tas(one_tile_tas()))
    doc["tiles"].append(dict(doc["tiles"][0]))
    with pytest.raises(SchemaError, match="duplicate tile id"):
        parse_tas(json.dumps(doc))


def test_compiled_document_round_trips():
    comp = weak.compile_weak(duple_tas(), weak.WEAK1)
    text = serialize_compiled(comp)
    assert serialize_compiled(comp) == text
    doc = parse_compiled(text)
    assert doc == compiled_document(comp)
    assert doc["method"] == weak.WEAK1
    assert doc["scale"] == comp.m
    assert dict(doc["decoder"]["anchors"]) == comp.meta.anchor_tiles


def test_compiled_document_rejects_other_formats():
    comp = weak.compile_weak(duple_tas(), weak.WEAK1)
    doc = json.loads(serialize_compiled(comp))
    doc["format"] = "something-else"
    with pytest.raises(SchemaError, match="not a compiled-simulator"):
        parse_compiled(json.dumps(doc))
    with pytest.raises(SchemaError, match="missing field 'method'"):
        parse_compiled(json.dumps({"format": "twoham-compiled"}))
