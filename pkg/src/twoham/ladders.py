"""Half-ladder systems: the mirror-matching counterexample family.

A half-ladder is a one-tile-wide vertical column of odd height with rungs
(two-tile horizontal pegs) on exactly tau of its alternating column tiles.
Left half-ladders grow rungs east, right half-ladders west, and the only
glue the two sides share is a strength-1 glue at the rung tips.  Two
half-ladders therefore need tau aligned rung tips to bind, which is what
makes the family a sharp probe for simulators running below temperature.
"""

from __future__ import annotations

import itertools

from .errors import HeightTooSmall
from .model import TAS, Glue, Supertile, TileSet, TileType, interface_strength

LEFT = "LEFT"
RIGHT = "RIGHT"

# x offset that puts a right half-ladder's rung tips against a left one's,
# with rows aligned
ALIGNED_OFFSET = (3, 0)


class LadderSystem:
    """The eight ladder tile types at a given temperature."""

    __slots__ = ("tau", "tile_set", "_tas")

    def __init__(self, tau, tile_set):
        self.tau = tau
        self.tile_set = tile_set
        self._tas = None

    @property
    def tas(self):
        if self._tas is None:
            self._tas = TAS(self.tile_set, self.tau)
        return self._tas


class HalfLadder:
    __slots__ = ("side", "height", "rung_positions", "supertile")

    def __init__(self, side, height, rung_positions, supertile):
        self.side = side
        self.height = height
        self.rung_positions = tuple(sorted(rung_positions))
        self.supertile = supertile

    def __repr__(self):
        return f"<HalfLadder {self.side} h={self.height} rungs={self.rung_positions}>"


def build_ladder_system(tau: int) -> LadderSystem:
    """Eight tile types; every glue has strength tau except the rung tip."""
    if tau < 2:
        raise ValueError("the ladder construction needs temperature at least 2")

    def g(label, strength=None):
        return Glue(label, tau if strength is None else strength)

    mid = g("mid", 1)
    tiles = [
        TileType("A2", north=g("cA"), south=g("cB"), east=g("rA")),
        TileType("A3", north=g("cB"), south=g("cA")),
        TileType("A1", west=g("rA"), east=g("rB")),
        TileType("A0", west=g("rB"), east=mid),
        TileType("B2", north=g("dA"), south=g("dB"), west=g("sA")),
        TileType("B3", north=g("dB"), south=g("dA")),
        TileType("B1", east=g("sA"), west=g("sB")),
        TileType("B0", east=g("sB"), west=mid),
    ]
    return LadderSystem(tau, TileSet(tiles))


def _column_tile(side, row):
    if side == LEFT:
        return "A2" if row % 2 == 0 else "A3"
    return "B2" if row % 2 == 0 else "B3"


def half_ladder_cells(side, height, rung_positions) -> dict:
    col_x = 0 if side == LEFT else 2
    cells = {(col_x, row): _column_tile(side, row) for row in range(2 * height - 1)}
    for p in rung_positions:
        if side == LEFT:
            cells[(1, 2 * p)] = "A1"
            cells[(2, 2 * p)] = "A0"
        else:
            cells[(1, 2 * p)] = "B1"
            cells[(0, 2 * p)] = "B0"
    return cells


def make_half_ladder(sys: LadderSystem, side, height, rung_positions) -> HalfLadder:
    rungs = tuple(sorted(set(rung_positions)))
    if len(rungs) != sys.tau:
        raise ValueError(f"a half-ladder carries exactly {sys.tau} rungs, got {rungs}")
    if any(p < 0 or p >= height for p in rungs):
        raise ValueError(f"rung positions {rungs} outside 0..{height - 1}")
    st = Supertile(half_ladder_cells(side, height, rungs))
    return HalfLadder(side, height, rungs, st)


def enumerate_half_ladders(sys: LadderSystem, height: int, side) -> list:
    """All C(height, tau) half-ladders of one side, rung sets in lex order."""
    if height < sys.tau:
        raise HeightTooSmall(
            f"height {height} cannot carry {sys.tau} rungs on distinct column tiles")
    return [make_half_ladder(sys, side, height, rungs)
            for rungs in itertools.combinations(range(height), sys.tau)]


def mirror(ladder: HalfLadder) -> HalfLadder:
    """The right half-ladder with the same rung positions."""
    if ladder.side != LEFT:
        raise ValueError("mirror is defined on left half-ladders")
    st = Supertile(half_ladder_cells(RIGHT, ladder.height, ladder.rung_positions))
    return HalfLadder(RIGHT, ladder.height, ladder.rung_positions, st)


def witness_sequence(sys: LadderSystem, ladder: HalfLadder) -> list:
    """Single-tile growth order: column bottom-up, then each rung outward.

    Returns the list of successive supertiles; every consecutive pair
    differs by one tile whose attachment has strength tau, so replaying it
    through combine certifies producibility.
    """
    order = []
    col_x = 0 if ladder.side == LEFT else 2
    for row in range(2 * ladder.height - 1):
        order.append(((col_x, row), _column_tile(ladder.side, row)))
    for p in ladder.rung_positions:
        if ladder.side == LEFT:
            order.append(((1, 2 * p), "A1"))
            order.append(((2, 2 * p), "A0"))
        else:
            order.append(((1, 2 * p), "B1"))
            order.append(((0, 2 * p), "B0"))
    stages = []
    cells = {}
    for coord, tid in order:
        cells[coord] = tid
        stages.append(Supertile(cells))
    return stages


def binding_strength_matrix(height: int, tau: int) -> list:
    """Aligned-offset interface strengths over LEFT x RIGHT, lex order.

    Entry [i][j] counts the shared rung positions of the i-th left and
    j-th right half-ladder, which equals the glue strength across the
    seam when their columns are row-aligned.
    """
    sys = build_ladder_system(tau)
    lefts = enumerate_half_ladders(sys, height, LEFT)
    rights = enumerate_half_ladders(sys, height, RIGHT)
    matrix = []
    for l in lefts:
        row = []
        for r in rights:
            shared = len(set(l.rung_positions) & set(r.rung_positions))
            row.append(shared)
        matrix.append(row)
    return matrix
