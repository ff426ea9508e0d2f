"""Core objects of two-handed tile assembly.

A tile type is a unit square carrying one glue per side.  Two glues on
abutting faces interact only when their labels are equal, their strengths
are equal, and that strength is positive; everything else contributes
nothing and never blocks placement.  A supertile is the translation class
of a finite placement of tiles, and it is stable at temperature tau when
its binding graph is connected and no cut of the graph severs less than
tau worth of glue.  Two supertiles combine by translating one against the
other so that they touch without overlap and the union is stable.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from . import mincut
from .errors import EmptyAssembly, NegativeStrength, UnknownTileId

NORTH, EAST, SOUTH, WEST = "N", "E", "S", "W"
DIRECTIONS = (NORTH, EAST, SOUTH, WEST)
OFFSET = {NORTH: (0, 1), EAST: (1, 0), SOUTH: (0, -1), WEST: (-1, 0)}
OPPOSITE = {NORTH: SOUTH, SOUTH: NORTH, EAST: WEST, WEST: EAST}

NULL_LABEL = ""
INFINITE = math.inf


@dataclass(frozen=True)
class Glue:
    """A side marking: label plus non-negative integer strength."""

    label: str
    strength: int

    def __post_init__(self):
        if not isinstance(self.strength, int) or isinstance(self.strength, bool):
            raise NegativeStrength(f"strength must be an integer, got {self.strength!r}")
        if self.strength < 0:
            raise NegativeStrength(f"strength {self.strength} < 0 on glue {self.label!r}")
        if self.label == NULL_LABEL and self.strength != 0:
            raise ValueError("the null label is reserved for strength-0 sides")


NULL_GLUE = Glue(NULL_LABEL, 0)


def interaction(a: Glue, b: Glue) -> int:
    """Strength with which two abutting glues bind (0 for any mismatch)."""
    if a.strength > 0 and a.label == b.label and a.strength == b.strength:
        return a.strength
    return 0


@dataclass(frozen=True)
class TileType:
    id: str
    north: Glue = NULL_GLUE
    east: Glue = NULL_GLUE
    south: Glue = NULL_GLUE
    west: Glue = NULL_GLUE

    def glue(self, direction: str) -> Glue:
        if direction == NORTH:
            return self.north
        if direction == EAST:
            return self.east
        if direction == SOUTH:
            return self.south
        if direction == WEST:
            return self.west
        raise KeyError(direction)


class TileSet:
    """An ordered collection of tile types with unique ids.

    ``glues`` lists every distinct positive-strength glue in declaration
    order (tiles in order, sides north, east, south, west), which fixes a
    deterministic index for each glue.
    """

    __slots__ = ("tiles", "_by_id", "glues")

    def __init__(self, tiles):
        self.tiles = tuple(tiles)
        self._by_id = {}
        for t in self.tiles:
            if t.id in self._by_id:
                raise ValueError(f"duplicate tile id {t.id!r}")
            self._by_id[t.id] = t
        seen = {}
        for t in self.tiles:
            for d in DIRECTIONS:
                g = t.glue(d)
                if g.strength > 0 and g not in seen:
                    seen[g] = None
        self.glues = tuple(seen)

    def tile(self, tile_id: str) -> TileType:
        try:
            return self._by_id[tile_id]
        except KeyError:
            raise UnknownTileId(f"no tile type with id {tile_id!r}") from None

    def __len__(self):
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    def __contains__(self, tile_id):
        return tile_id in self._by_id


class Assembly:
    """A finite placement of tile ids on the integer lattice."""

    __slots__ = ("cells",)

    def __init__(self, cells):
        cells = dict(cells)
        if not cells:
            raise EmptyAssembly("an assembly needs at least one tile")
        self.cells = cells

    def translate(self, dx: int, dy: int) -> "Assembly":
        return Assembly({(x + dx, y + dy): t for (x, y), t in self.cells.items()})

    def __len__(self):
        return len(self.cells)


def _cells_of(a) -> dict:
    if isinstance(a, (Supertile, Assembly)):
        return a.cells
    return a


class Supertile:
    """Canonical representative of a translation class of placements.

    The placement is shifted so both coordinate minima are 0; equality and
    hashing go through a content fingerprint of that shifted form.  Cells
    must be treated as read-only.
    """

    __slots__ = ("cells", "size", "width", "height", "fingerprint",
                 "_faces_ts", "_faces", "_cols")

    def __init__(self, cells):
        cells = _cells_of(cells)
        if not cells:
            raise EmptyAssembly("a supertile needs at least one tile")
        minx = min(x for x, _ in cells)
        miny = min(y for _, y in cells)
        if minx or miny:
            cells = {(x - minx, y - miny): t for (x, y), t in cells.items()}
        else:
            cells = dict(cells)
        self.cells = cells
        self.size = len(cells)
        self.width = 1 + max(x for x, _ in cells)
        self.height = 1 + max(y for _, y in cells)
        enc = repr(sorted(cells.items())).encode()
        self.fingerprint = hashlib.sha1(enc).hexdigest()
        self._faces_ts = None
        self._faces = None
        self._cols = None

    @property
    def sort_key(self):
        return (self.size, self.fingerprint)

    def __eq__(self, other):
        return isinstance(other, Supertile) and self.fingerprint == other.fingerprint

    def __hash__(self):
        return int(self.fingerprint[:16], 16)

    def __repr__(self):
        return f"<Supertile {self.size} tiles {self.fingerprint[:10]}>"

    def translated(self, dx: int, dy: int) -> dict:
        return {(x + dx, y + dy): t for (x, y), t in self.cells.items()}

    def columns(self) -> dict:
        if self._cols is None:
            cols = {}
            for (x, y) in self.cells:
                cols.setdefault(x, []).append(y)
            self._cols = {x: tuple(sorted(ys)) for x, ys in cols.items()}
        return self._cols

    def faces(self, ts: TileSet) -> dict:
        """Positive glues on open faces, per direction: glue -> coordinates."""
        if self._faces_ts is ts:
            return self._faces
        cells = self.cells
        faces = {d: {} for d in DIRECTIONS}
        for (x, y), tid in cells.items():
            t = ts.tile(tid)
            for d in DIRECTIONS:
                g = t.glue(d)
                if g.strength <= 0:
                    continue
                dx, dy = OFFSET[d]
                if (x + dx, y + dy) in cells:
                    continue
                faces[d].setdefault(g, []).append((x, y))
        self._faces = {d: {g: tuple(sorted(cs)) for g, cs in by.items()}
                       for d, by in faces.items()}
        self._faces_ts = ts
        return self._faces


def canonicalize(a) -> Supertile:
    """Canonical translate of a placement; equal iff inputs are translates."""
    return Supertile(a)


def binding_graph(a, ts: TileSet) -> dict:
    """Weighted adjacency over occupied coordinates.

    An edge appears exactly where abutting glues interact; mismatched or
    zero-strength abutments yield no edge and never block anything.
    """
    cells = _cells_of(a)
    adj = {v: {} for v in cells}
    for (x, y), tid in cells.items():
        t = ts.tile(tid)
        e = cells.get((x + 1, y))
        if e is not None:
            w = interaction(t.east, ts.tile(e).west)
            if w:
                adj[(x, y)][(x + 1, y)] = w
                adj[(x + 1, y)][(x, y)] = w
        n = cells.get((x, y + 1))
        if n is not None:
            w = interaction(t.north, ts.tile(n).south)
            if w:
                adj[(x, y)][(x, y + 1)] = w
                adj[(x, y + 1)][(x, y)] = w
    return adj


def is_tau_stable(a, ts: TileSet, tau: int) -> bool:
    """Connected binding graph whose every cut weighs at least tau.

    Singletons are stable for every tau.
    """
    cells = _cells_of(a)
    if not cells:
        raise EmptyAssembly("stability of an empty assembly is undefined")
    if len(cells) == 1:
        return True
    return mincut.stability_cut_ok(binding_graph(cells, ts), tau)


def interface_strength(a: Supertile, b: Supertile, ts: TileSet, offset) -> int:
    """Total interaction strength across the seam when b sits at offset.

    Interactions need a positive glue on b's side, so the sum runs over
    b's positive open faces only; that keeps the cost proportional to
    the seam rather than to b's area.
    """
    ox, oy = offset
    acells = a.cells
    total = 0
    for d, by_glue in b.faces(ts).items():
        dx, dy = OFFSET[d]
        opp = OPPOSITE[d]
        for g, coords in by_glue.items():
            for (bx, by) in coords:
                atid = acells.get((bx + ox + dx, by + oy + dy))
                if atid is not None:
                    total += interaction(g, ts.tile(atid).glue(opp))
    return total


def _disjoint_at(a: Supertile, b: Supertile, ox: int, oy: int) -> bool:
    x0 = max(0, ox)
    x1 = min(a.width - 1, ox + b.width - 1)
    if x0 > x1:
        return True
    y0 = max(0, oy)
    y1 = min(a.height - 1, oy + b.height - 1)
    if y0 > y1:
        return True
    acells = a.cells
    for bx, ys in b.columns().items():
        x = bx + ox
        if x < x0 or x > x1:
            continue
        for by in ys:
            y = by + oy
            if y < y0:
                continue
            if y > y1:
                break
            if (x, y) in acells:
                return False
    return True


def combination_offsets(a: Supertile, b: Supertile, ts: TileSet, tau: int):
    """Every placement of b against a that yields a stable union.

    Returns (offset, child) pairs in deterministic offset order.  Candidate
    offsets are exactly those aligning a positive glue of a with a matching
    open face of b; any other offset leaves the union disconnected.  The
    seam test below is a sound filter only because both inputs are stable;
    the union is still verified by a full cut check.
    """
    afaces = a.faces(ts)
    bfaces = b.faces(ts)
    offsets = set()
    for d in DIRECTIONS:
        dx, dy = OFFSET[d]
        opp = OPPOSITE[d]
        for g, acoords in afaces[d].items():
            bcoords = bfaces[opp].get(g)
            if not bcoords:
                continue
            for ax, ay in acoords:
                for bx, by in bcoords:
                    offsets.add((ax + dx - bx, ay + dy - by))
    out = []
    for ox, oy in sorted(offsets):
        if not _disjoint_at(a, b, ox, oy):
            continue
        if interface_strength(a, b, ts, (ox, oy)) < tau:
            continue
        union = dict(a.cells)
        union.update(b.translated(ox, oy))
        if not is_tau_stable(union, ts, tau):
            continue
        out.append(((ox, oy), Supertile(union)))
    return out


def combine(a: Supertile, b: Supertile, ts: TileSet, tau: int) -> list:
    """The combination set of a and b: deduplicated, fingerprint-sorted."""
    seen = {}
    for _, child in combination_offsets(a, b, ts, tau):
        seen.setdefault(child.fingerprint, child)
    return [seen[fp] for fp in sorted(seen)]


def _valid_count(c) -> bool:
    if c == INFINITE:
        return True
    return isinstance(c, int) and not isinstance(c, bool) and c > 0


class TAS:
    """A tile assembly system: tile set, initial state, temperature.

    The initial state is a multiset of stable supertiles with positive
    (possibly infinite) counts; by default it holds infinitely many copies
    of each singleton tile.  Construction validates stability and tile ids
    of every initial supertile.
    """

    __slots__ = ("tile_set", "tau", "initial_state")

    def __init__(self, tile_set: TileSet, tau: int, initial_state=None):
        if not isinstance(tau, int) or isinstance(tau, bool) or tau < 1:
            raise ValueError(f"temperature must be a positive integer, got {tau!r}")
        self.tile_set = tile_set
        self.tau = tau
        if initial_state is None:
            initial_state = [(Supertile({(0, 0): t.id}), INFINITE) for t in tile_set]
        merged = {}
        for st, count in initial_state:
            if not isinstance(st, Supertile):
                st = Supertile(st)
            if not _valid_count(count):
                raise ValueError(f"count must be a positive integer or INFINITE, got {count!r}")
            if st.fingerprint in merged:
                prev, c = merged[st.fingerprint]
                merged[st.fingerprint] = (prev, INFINITE if INFINITE in (c, count) else c + count)
            else:
                merged[st.fingerprint] = (st, count)
        state = sorted(merged.values(), key=lambda pair: pair[0].sort_key)
        for st, _ in state:
            for tid in st.cells.values():
                tile_set.tile(tid)
            if not is_tau_stable(st, tile_set, tau):
                raise ValueError(
                    f"initial supertile {st.fingerprint[:10]} is not {tau}-stable")
        self.initial_state = tuple(state)

    def supertile_counts(self) -> dict:
        return {st.fingerprint: count for st, count in self.initial_state}
