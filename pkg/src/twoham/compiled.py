"""Shared container for compiler output.

A compiled simulator packages the universal tile set, the preformed input
supertiles with their counts, the block scale, the representation used to
read simulator assemblies back, and whatever per-compilation metadata the
decoder needs.  Compilers differ only in how they fill these fields.
"""

from __future__ import annotations

from .model import TAS


class CompiledSimulator:
    __slots__ = ("variant", "tau", "universal_tiles", "input_supertiles",
                 "m", "rep", "meta")

    def __init__(self, variant, tau, universal_tiles, input_supertiles,
                 m, rep, meta):
        self.variant = variant
        self.tau = tau
        self.universal_tiles = universal_tiles
        self.input_supertiles = tuple(input_supertiles)
        self.m = m
        self.rep = rep
        self.meta = meta

    def simulator_tas(self, tau=None) -> TAS:
        """The compiled system as a runnable TAS.

        tau overrides the simulator temperature, which exists so probes can
        rerun a compilation under a deliberately wrong threshold.
        """
        return TAS(self.universal_tiles, self.tau if tau is None else tau,
                   list(self.input_supertiles))

    def __repr__(self):
        return (f"<CompiledSimulator {self.variant} m={self.m} "
                f"tiles={len(self.universal_tiles)} "
                f"inputs={len(self.input_supertiles)}>")


def per_block_budget(comp: CompiledSimulator) -> int:
    """Simulator tiles one source tile can cost, attached pieces included.

    Multiplying a target-side size bound by this gives a simulator-side
    bound that covers every assembly whose image fits the target bound,
    with room for auxiliary pieces hanging off any of the four sides.
    """
    meta = comp.meta
    if hasattr(meta, "gadgets"):
        mega = max(len(lay.cells) for lay in meta.megas.values())
        gad = max((len(lay.cells) for lay in meta.gadgets.values()), default=0)
        fill = max((len(lay.cells) for lay in meta.completions.values()),
                   default=0)
        return mega + 4 * (2 * gad + fill)
    return max(len(lay.cells) for lay in meta.layouts.values())


def solid_square_offsets(side, anchor_x, anchor_y, m):
    """Alignment hint: grid offsets that put a solid square at the anchor.

    Any side x side solid square has a cell whose largest-solid-square
    value reaches side under the standard corner dynamic program, so
    collecting the implied anchors covers every alignment that could
    decode a body.  Supertiles without such a square get no candidates.
    """
    def offsets(s):
        dp = {}
        out = set()
        for xy in sorted(s.cells):
            x, y = xy
            d = min(dp.get((x - 1, y), 0),
                    dp.get((x, y - 1), 0),
                    dp.get((x - 1, y - 1), 0)) + 1
            dp[xy] = d
            if d >= side:
                out.add(((x - side + 1 - anchor_x) % m,
                         (y - side + 1 - anchor_y) % m))
        return sorted(out)
    return offsets
