"""Strength-preserving macrotile compiler.

The hand-checkable case used throughout is the one-glue two-tile system
(block side 18, scale 36): its arm cells were worked out by hand, so
the meshing, decoding and corruption tests pin real coordinates.  The
six-block rig at the end exercises two simulated mismatches inside one
assembled rectangle.
"""

import pytest

from twoham import (
    INFINITE,
    TAS,
    BlockRepresentation,
    Glue,
    Supertile,
    TileSet,
    TileType,
    check_equivalent_productions,
    check_follows,
    check_strongly_models,
    check_weakly_models,
    combine,
    decode_supertile,
    explore,
)
from twoham.compiled import solid_square_offsets
from twoham.errors import CorruptMacrotile
from twoham.strong import (
    STRONG1,
    STRONG2,
    compile_strong,
    glue_coordinates,
    layout_macrotile,
    rescale_temperature,
    scale_for,
)


def two_tile(strength=2, tau=2):
    ts = TileSet((
        TileType("A", east=Glue("g", strength)),
        TileType("B", west=Glue("g", strength)),
    ))
    return TAS(ts, tau)


def macro(comp, tile_id):
    return Supertile(comp.meta.layouts[tile_id].cells)


def image_cells(img):
    return img.supertile.cells


def test_glue_coordinates_row_major():
    order = [Glue(f"g{n}", 2) for n in range(5)]
    first = glue_coordinates(order[0], order)
    assert (first.i, first.j, first.pair_index) == (0, 0, 0)
    fifth = glue_coordinates(order[4], order)
    assert (fifth.i, fifth.j) == (1, 1)
    pairs = {(glue_coordinates(g, order).i, glue_coordinates(g, order).j)
             for g in order}
    assert len(pairs) == 5
    with pytest.raises(ValueError):
        glue_coordinates(Glue("zz", 2), order)


def test_scale_grid_and_documented_constant():
    # the one-glue geometry used in the hand checks below
    assert scale_for(1, 2) == 36
    assert scale_for(4, 2) == 84
    bound = 28
    for n in (2, 4, 8, 16):
        for tau in (2, 4):
            target = bound * (n * (tau + n.bit_length() - 1 + 1)) ** 0.5
            assert scale_for(n, tau) <= target


def test_all_null_tile_is_body_only():
    ts = TileSet((TileType("T"),))
    lay = layout_macrotile(ts.tile("T"), ts, 2)
    assert lay.k == 8 and lay.m == 16
    assert len(lay.cells) == 64
    assert all(4 <= x < 12 and 4 <= y < 12 for (x, y) in lay.cells)
    assert all(a is None for a in lay.arms.values())
    comp = compile_strong(TAS(ts, 2))
    assert len(comp.input_supertiles) == 1
    img = decode_supertile(comp.input_supertiles[0][0], comp.rep)
    assert image_cells(img) == {(0, 0): "T"} and img.clean


@pytest.mark.parametrize("axis", ["horizontal", "vertical"])
def test_single_macrotile_round_trip(axis):
    if axis == "horizontal":
        ts = TileSet((TileType("A", east=Glue("g", 2)),
                      TileType("B", west=Glue("g", 2))))
    else:
        ts = TileSet((TileType("A", north=Glue("g", 2)),
                      TileType("B", south=Glue("g", 2))))
    comp = compile_strong(TAS(ts, 2))
    for tid in ("A", "B"):
        img = decode_supertile(macro(comp, tid), comp.rep)
        assert image_cells(img) == {(0, 0): tid}
        assert img.clean


@pytest.mark.parametrize("variant", [STRONG2, STRONG1])
def test_matching_arms_mesh_at_exactly_one_offset(variant):
    comp = compile_strong(two_tile(), variant)
    a, b = macro(comp, "A"), macro(comp, "B")
    children = combine(a, b, comp.universal_tiles, 2)
    assert len(children) == 1
    img = decode_supertile(children[0], comp.rep)
    assert image_cells(img) == {(0, 0): "A", (1, 0): "B"}
    assert img.clean


def test_vertical_arms_mesh_too():
    ts = TileSet((TileType("A", north=Glue("g", 2)),
                  TileType("B", south=Glue("g", 2))))
    comp = compile_strong(TAS(ts, 2))
    children = combine(macro(comp, "A"), macro(comp, "B"),
                       comp.universal_tiles, 2)
    assert len(children) == 1
    img = decode_supertile(children[0], comp.rep)
    assert image_cells(img) == {(0, 0): "A", (0, 1): "B"}


def test_mismatched_arms_neither_bind_nor_collide():
    ts = TileSet((TileType("A", east=Glue("g", 2)),
                  TileType("B", west=Glue("p", 2))))
    comp = compile_strong(TAS(ts, 2))
    assert combine(macro(comp, "A"), macro(comp, "B"),
                   comp.universal_tiles, 2) == []


def test_strength_region_splits_inert_and_binding():
    # strength 4 at temperature 6: two inert spacers then four binding cells
    ts = TileSet((TileType("A", east=Glue("g", 4)),
                  TileType("B", west=Glue("g", 4))))
    lay = layout_macrotile(ts.tile("B"), ts, 6)
    assert len(lay.external) == 4
    assert all(g.strength == 1 and g.label == "bindH"
               for _, g in lay.external.values())
    k, h = lay.k, lay.k // 2
    # west pad of glue 0: strength cells start 14 cells into the gap
    spacers = [(h - k + 14 + q, h + 3) for q in range(2)]
    for xy in spacers:
        assert xy in lay.cells and xy not in lay.external


def test_strong2_exposes_only_unit_strength_glues():
    comp = compile_strong(two_tile())
    for t in comp.universal_tiles:
        for side in (t.north, t.east, t.south, t.west):
            if side.strength == 0:
                continue
            if side.label.startswith("i:"):
                assert side.strength == 2
            else:
                assert side.label in ("bindH", "bindV")
                assert side.strength == 1


def test_strong1_single_cell_carries_full_strength():
    comp = compile_strong(two_tile(), STRONG1)
    reds = [side for t in comp.universal_tiles
            for side in (t.north, t.east, t.south, t.west)
            if side.strength > 0 and not side.label.startswith("i:")]
    assert len(reds) == 2
    assert all(g == Glue("bind:2", 2) for g in reds)


@pytest.mark.parametrize("variant", [STRONG2, STRONG1])
def test_two_tile_system_passes_all_four_checks(variant):
    tas = two_tile()
    target = explore(tas, 6)
    comp = compile_strong(tas, variant)
    bound = sum(st.size for st, _ in comp.input_supertiles)
    sim = explore(comp.simulator_tas(), bound)
    assert {img.supertile.fingerprint
            for img in (decode_supertile(s, comp.rep) for s in sim.members())
            if img is not None} == {t.fingerprint for t in target.members()}
    for check in (check_equivalent_productions, check_follows,
                  check_weakly_models, check_strongly_models):
        report = check(sim, target, comp.rep)
        assert report.passed, (check.__name__, report.violations)
        assert not report.violations


def test_non_singleton_seed_becomes_rigid_union():
    ts = TileSet((
        TileType("P", north=Glue("h", 2)),
        TileType("Q", south=Glue("h", 2), east=Glue("e", 2)),
        TileType("R", west=Glue("e", 2)),
    ))
    duple = Supertile({(0, 0): "P", (0, 1): "Q"})
    singles = [(Supertile({(0, 0): t}), INFINITE) for t in ("P", "Q", "R")]
    tas = TAS(ts, 2, singles + [(duple, INFINITE)])
    comp = compile_strong(tas)
    assert len(comp.input_supertiles) == 4
    sizes = {st.size for st, _ in comp.input_supertiles}
    singles = {macro(comp, t).size for t in ("P", "Q", "R")}
    union_size = macro(comp, "P").size + macro(comp, "Q").size
    assert sizes == singles | {union_size}
    assert all(c == INFINITE for _, c in comp.input_supertiles)
    big = next(st for st, _ in comp.input_supertiles
               if st.size == union_size)
    img = decode_supertile(big, comp.rep)
    assert image_cells(img) == {(0, 0): "P", (0, 1): "Q"}
    # the TAS constructor re-validates stability of every input
    comp.simulator_tas()


def test_duplicate_glue_signatures_decode_by_body():
    ts = TileSet((TileType("X"), TileType("Y")))
    comp = compile_strong(TAS(ts, 2))
    decoded = {decode_supertile(st, comp.rep).supertile.cells[(0, 0)]
               for st, _ in comp.input_supertiles}
    assert decoded == {"X", "Y"}


def test_corrupt_macrotile_reports():
    comp = compile_strong(two_tile())
    lay = comp.meta.layouts["A"]
    k = lay.k
    h = k // 2
    body_only = {xy: uid for xy, uid in lay.cells.items()
                 if h <= xy[0] < h + k and h <= xy[1] < h + k}
    with pytest.raises(CorruptMacrotile):
        decode_supertile(Supertile(body_only), comp.rep)
    # east arm of A: lane row h+3, base tag at (h+k+1, h)
    missing_tag = dict(lay.cells)
    del missing_tag[(h + k + 1, h)]
    with pytest.raises(CorruptMacrotile):
        decode_supertile(Supertile(missing_tag), comp.rep)


def test_partial_body_decodes_to_nothing():
    comp = compile_strong(two_tile())
    lay = comp.meta.layouts["A"]
    h = lay.k // 2
    holed = dict(lay.cells)
    del holed[(h + 3, h + 3)]
    assert decode_supertile(Supertile(holed), comp.rep) is None
    arms_only = {xy: uid for xy, uid in lay.cells.items()
                 if xy[0] >= h + lay.k}
    assert decode_supertile(Supertile(arms_only), comp.rep) is None


def test_offset_hint_matches_full_scan():
    comp = compile_strong(two_tile())
    full = BlockRepresentation(comp.m, comp.rep.decode_block)
    a, b = macro(comp, "A"), macro(comp, "B")
    child = combine(a, b, comp.universal_tiles, 2)[0]
    for st in (a, b, child):
        hinted = decode_supertile(st, comp.rep)
        scanned = decode_supertile(st, full)
        assert hinted.offset == scanned.offset
        assert hinted.image == scanned.image


def test_six_blocks_with_two_mismatches_assemble_on_grid():
    # 3 x 2 rectangle; both interior column seams mismatch (p against q)
    # while the rows and the left column hold it together.
    g = lambda lab: Glue(lab, 2)
    ts = TileSet((
        TileType("T00", east=g("a"), north=Glue("e", 2)),
        TileType("T10", west=g("a"), east=g("b"), north=Glue("p", 1)),
        TileType("T20", west=g("b"), north=Glue("p", 1)),
        TileType("T01", east=g("c"), south=Glue("e", 2)),
        TileType("T11", west=g("c"), east=g("d"), south=Glue("q", 1)),
        TileType("T21", west=g("d"), south=Glue("q", 1)),
    ))
    comp = compile_strong(TAS(ts, 2))
    u = comp.universal_tiles

    def only(children):
        assert len(children) == 1
        return children[0]

    bottom = only(combine(macro(comp, "T00"), macro(comp, "T10"), u, 2))
    bottom = only(combine(bottom, macro(comp, "T20"), u, 2))
    top = only(combine(macro(comp, "T01"), macro(comp, "T11"), u, 2))
    top = only(combine(top, macro(comp, "T21"), u, 2))
    whole = only(combine(bottom, top, u, 2))
    img = decode_supertile(whole, comp.rep)
    assert image_cells(img) == {
        (0, 0): "T00", (1, 0): "T10", (2, 0): "T20",
        (0, 1): "T01", (1, 1): "T11", (2, 1): "T21",
    }
    assert img.clean
    k = comp.meta.geo.k
    anchors = solid_square_offsets(k, k // 2, k // 2, comp.m)(whole)
    assert len(anchors) == 1


def test_lowering_the_simulator_temperature_breaks_follows():
    # a strength-1 seam does nothing at temperature 2, but the compiled
    # system rerun at temperature 1 glues the two macrotiles together
    tas = two_tile(strength=1)
    target = explore(tas, 6)
    assert len(target.supertiles) == 2
    comp = compile_strong(tas)
    bound = sum(st.size for st, _ in comp.input_supertiles)
    weakened = explore(comp.simulator_tas(tau=1), bound)
    assert len(weakened.supertiles) == 3
    report = check_follows(weakened, target, comp.rep)
    assert not report.passed
    assert report.violations


def test_compile_rejects_bad_arguments():
    with pytest.raises(ValueError):
        compile_strong(two_tile(tau=1))
    with pytest.raises(ValueError):
        compile_strong(two_tile(), "strong3")


def test_rescale_multiplies_strengths_and_temperature():
    tas = two_tile()
    tripled = rescale_temperature(tas, 3)
    assert tripled.tau == 6
    assert tripled.tile_set.tile("A").east == Glue("g", 6)
    assert rescale_temperature(tas, 1).tau == 2
    for bad in (0, -2, 2.5, True):
        with pytest.raises(ValueError):
            rescale_temperature(tas, bad)


def test_rescale_preserves_the_producible_set_exactly():
    ts = TileSet((
        TileType("A", east=Glue("t", 2), north=Glue("p", 1)),
        TileType("B", west=Glue("t", 2), north=Glue("s", 2)),
        TileType("C", south=Glue("s", 2), west=Glue("s", 2)),
        TileType("D", east=Glue("s", 2), south=Glue("q", 1)),
    ))
    tas = TAS(ts, 2)
    before = {s.fingerprint for s in explore(tas, 5).members()}
    after = {s.fingerprint
             for s in explore(rescale_temperature(tas, 3), 5).members()}
    assert before == after
