"""JSON documents for tile systems and compiled simulators.

Both document kinds serialize canonically: keys sorted, two-space
indent, integers only, one trailing newline.  Serializing the same
object twice yields identical bytes, so documents and reports diff
cleanly.  Validation errors name the offending field by path.
"""

from __future__ import annotations

import json

from .errors import DanglingTileId, EmptyAssembly, NegativeStrength, SchemaError
from .model import INFINITE, TAS, Glue, Supertile, TileSet, TileType

SIDES = ("north", "east", "south", "west")


def _dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _fail(path, message):
    raise SchemaError(f"{path}: {message}")


def _require(obj, path, keys, optional=()):
    if not isinstance(obj, dict):
        _fail(path, f"expected an object, got {type(obj).__name__}")
    for key in keys:
        if key not in obj:
            _fail(path, f"missing field {key!r}")
    for key in obj:
        if key not in keys and key not in optional:
            _fail(path, f"unknown field {key!r}")


def _int(value, path):
    if not isinstance(value, int) or isinstance(value, bool):
        _fail(path, f"expected an integer, got {value!r}")
    return value


def _glue_obj(g: Glue) -> dict:
    return {"label": g.label, "strength": g.strength}


def _parse_glue(obj, path) -> Glue:
    _require(obj, path, ("label", "strength"))
    label = obj["label"]
    if not isinstance(label, str):
        _fail(f"{path}.label", f"expected a string, got {label!r}")
    strength = _int(obj["strength"], f"{path}.strength")
    if strength < 0:
        raise NegativeStrength(
            f"{path}.strength: strength {strength} < 0 on glue {label!r}")
    try:
        return Glue(label, strength)
    except ValueError as e:
        _fail(path, str(e))


def tas_document(tas: TAS) -> dict:
    """The document form of a system; default states are left implicit."""
    doc = {
        "temperature": tas.tau,
        "tiles": [
            {"id": t.id, "north": _glue_obj(t.north), "east": _glue_obj(t.east),
             "south": _glue_obj(t.south), "west": _glue_obj(t.west)}
            for t in tas.tile_set
        ],
    }
    default = TAS(tas.tile_set, tas.tau)
    if tas.supertile_counts() != default.supertile_counts():
        doc["initial_state"] = [_state_obj(st, count)
                                for st, count in tas.initial_state]
    return doc


def _state_obj(st: Supertile, count) -> dict:
    return {
        "count": "inf" if count == INFINITE else count,
        "placement": [{"x": x, "y": y, "tile": tid}
                      for (x, y), tid in sorted(st.cells.items())],
    }


def serialize_tas(tas: TAS) -> str:
    return _dumps(tas_document(tas))


def _parse_placement(entries, path, ts) -> Supertile:
    if not isinstance(entries, list):
        _fail(path, "expected a list of cells")
    cells = {}
    for j, cell in enumerate(entries):
        where = f"{path}[{j}]"
        _require(cell, where, ("x", "y", "tile"))
        x = _int(cell["x"], f"{where}.x")
        y = _int(cell["y"], f"{where}.y")
        tid = cell["tile"]
        if not isinstance(tid, str):
            _fail(f"{where}.tile", f"expected a tile id, got {tid!r}")
        if tid not in ts:
            raise DanglingTileId(
                f"{where}.tile: {tid!r} is not a declared tile id")
        if (x, y) in cells:
            _fail(where, f"duplicate cell ({x}, {y})")
        cells[(x, y)] = tid
    try:
        return Supertile(cells)
    except EmptyAssembly:
        _fail(path, "placement needs at least one tile")


def parse_tas(text: str) -> TAS:
    """Parse a system document; errors carry line or field context."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(
            f"line {e.lineno} column {e.colno}: {e.msg}") from None
    _require(doc, "document", ("temperature", "tiles"),
             optional=("initial_state",))
    tau = _int(doc["temperature"], "temperature")
    if not isinstance(doc["tiles"], list) or not doc["tiles"]:
        _fail("tiles", "expected a non-empty list")
    tiles = []
    for i, obj in enumerate(doc["tiles"]):
        path = f"tiles[{i}]"
        _require(obj, path, ("id",), optional=SIDES)
        tid = obj["id"]
        if not isinstance(tid, str) or not tid:
            _fail(f"{path}.id", f"expected a non-empty string, got {tid!r}")
        glues = {side: _parse_glue(obj[side], f"{path}.{side}")
                 for side in SIDES if side in obj}
        tiles.append(TileType(tid, **glues))
    try:
        ts = TileSet(tiles)
    except ValueError as e:
        _fail("tiles", str(e))
    state = None
    if "initial_state" in doc:
        entries = doc["initial_state"]
        if not isinstance(entries, list):
            _fail("initial_state", "expected a list")
        state = []
        for i, obj in enumerate(entries):
            path = f"initial_state[{i}]"
            _require(obj, path, ("placement",), optional=("count",))
            raw = obj.get("count", "inf")
            if raw == "inf":
                count = INFINITE
            else:
                count = _int(raw, f"{path}.count")
                if count < 1:
                    _fail(f"{path}.count", f"expected a positive count, got {count}")
            st = _parse_placement(obj["placement"], f"{path}.placement", ts)
            state.append((st, count))
    try:
        return TAS(ts, tau, state)
    except ValueError as e:
        _fail("document", str(e))


def compiled_document(comp) -> dict:
    """The document form of a compiler output.

    Together with the source system document this is everything verify
    needs: the method tag lets verify rerun the deterministic compiler
    and cross-check this document against the fresh result, then reuse
    the fresh decoder.  The anchor table is included so the mapping
    from block anchors to source tiles is inspectable on its own.
    """
    return {
        "format": "twoham-compiled",
        "method": comp.variant,
        "temperature": comp.tau,
        "scale": comp.m,
        "universal_tiles": [
            {"id": t.id, "north": _glue_obj(t.north), "east": _glue_obj(t.east),
             "south": _glue_obj(t.south), "west": _glue_obj(t.west)}
            for t in comp.universal_tiles
        ],
        "input_supertiles": [_state_obj(st, count)
                             for st, count in comp.input_supertiles],
        "decoder": {
            "kind": "block-anchor",
            "anchors": [[uid, tid] for uid, tid
                        in sorted(comp.meta.anchor_tiles.items())],
        },
    }


def serialize_compiled(comp) -> str:
    return _dumps(compiled_document(comp))


def parse_compiled(text: str) -> dict:
    """Shape-check a compiled document; verify recompiles to trust it."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(
            f"line {e.lineno} column {e.colno}: {e.msg}") from None
    _require(doc, "document",
             ("format", "method", "temperature", "scale",
              "universal_tiles", "input_supertiles", "decoder"))
    if doc["format"] != "twoham-compiled":
        _fail("format", f"not a compiled-simulator document: {doc['format']!r}")
    _int(doc["temperature"], "temperature")
    _int(doc["scale"], "scale")
    if not isinstance(doc["method"], str):
        _fail("method", f"expected a string, got {doc['method']!r}")
    return doc
