"""Block representation functions: reading scaled assemblies as tile images.

A representation carries a scale m and a decoder from m x m blocks of
simulator tiles to simulated tile ids.  Decoding a supertile tries block
grids at every offset (or at the offsets a registered hint function
proposes), and succeeds when exactly one grid alignment produces a
non-empty image.  Distinct non-empty images at two alignments mean the
supertile cannot be read at all, which is reported loudly rather than
resolved by preference.
"""

from __future__ import annotations

from .errors import AmbiguousAlignment
from .model import Supertile

__all__ = [
    "BlockRepresentation",
    "DecodedImage",
    "blocks_at",
    "decode_supertile",
    "fits_single_block",
    "is_clean",
]


def blocks_at(s: Supertile, m: int, ox: int, oy: int) -> dict:
    """Partition cells into m-blocks for the grid anchored at (ox, oy).

    Keys are block coordinates; values map in-block (i, j) to tile ids.
    """
    blocks = {}
    for (x, y), tid in s.cells.items():
        key = ((x - ox) // m, (y - oy) // m)
        blocks.setdefault(key, {})[((x - ox) % m, (y - oy) % m)] = tid
    return blocks


class BlockRepresentation:
    """Scale plus block decoder, with an optional alignment hint.

    decode_block takes one non-empty block (dict of in-block coordinate to
    simulator tile id) and returns a simulated tile id or None.  The empty
    block always decodes to None and is never passed in.

    candidate_offsets, when given, maps a supertile to the grid offsets
    worth trying; it must cover every offset that could decode to a
    non-empty image, and exists so geometric decoders can skip the full
    m * m scan.
    """

    __slots__ = ("m", "decode_block", "candidate_offsets")

    def __init__(self, m, decode_block, candidate_offsets=None):
        if m < 1:
            raise ValueError(f"scale must be positive, got {m}")
        self.m = m
        self.decode_block = decode_block
        self.candidate_offsets = candidate_offsets

    @classmethod
    def from_table(cls, m, table):
        """Lookup-table decoder; keys are sorted (i, j, tile id) tuples."""
        frozen = {}
        for key, out in table.items():
            frozen[tuple(sorted(key))] = out

        def decode(block):
            key = tuple(sorted((i, j, t) for (i, j), t in block.items()))
            return frozen.get(key)

        return cls(m, decode)

    def offsets_for(self, s: Supertile):
        if self.candidate_offsets is not None:
            return list(self.candidate_offsets(s))
        return [(ox, oy) for ox in range(self.m) for oy in range(self.m)]


class DecodedImage:
    """One successful reading of a simulator supertile.

    image maps block coordinates to simulated tile ids and is non-empty;
    supertile is its canonical translation class.  clean records the fuzz
    rule: every non-empty source block sits on or orthogonally next to
    the image domain, or the source occupies a single block.
    """

    __slots__ = ("source", "m", "offset", "image", "supertile", "clean")

    def __init__(self, source, m, offset, image):
        self.source = source
        self.m = m
        self.offset = offset
        self.image = image
        self.supertile = Supertile(image)
        self.clean = is_clean(self)

    def __repr__(self):
        return (f"<DecodedImage {self.supertile.size} tiles at offset "
                f"{self.offset} clean={self.clean}>")


def is_clean(img: DecodedImage) -> bool:
    """The fuzz rule at the image's alignment: orthogonal overhang only."""
    ox, oy = img.offset
    m = img.m
    occupied = set()
    for (x, y) in img.source.cells:
        occupied.add(((x - ox) // m, (y - oy) // m))
    if len(occupied) <= 1:
        return True
    for b in occupied:
        if b in img.image:
            continue
        bx, by = b
        if ((bx + 1, by) in img.image or (bx - 1, by) in img.image
                or (bx, by + 1) in img.image or (bx, by - 1) in img.image):
            continue
        return False
    return True


def fits_single_block(s: Supertile, m: int) -> bool:
    """Whether some alignment puts the whole supertile in one m-block."""
    return s.width <= m and s.height <= m


def decode_supertile(s: Supertile, rep: BlockRepresentation):
    """Read a supertile through the block grid; None when nothing decodes.

    Exactly one alignment class may produce a non-empty image.  Multiple
    alignments producing the same image are harmless (the lowest offset
    is reported); different images raise AmbiguousAlignment.
    """
    m = rep.m
    found = None
    for ox, oy in sorted(rep.offsets_for(s)):
        blocks = blocks_at(s, m, ox, oy)
        image = {}
        for key, block in blocks.items():
            tid = rep.decode_block(block)
            if tid is not None:
                image[key] = tid
        if not image:
            continue
        img = DecodedImage(s, m, (ox, oy), image)
        if found is None:
            found = (img.supertile.fingerprint, img)
        elif found[0] != img.supertile.fingerprint:
            raise AmbiguousAlignment(
                f"supertile {s.fingerprint[:10]} decodes to distinct images "
                f"at offsets {found[1].offset} and {(ox, oy)}")
    return found[1] if found else None
