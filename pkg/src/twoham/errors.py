"""Exception types shared across the package."""


class TwohamError(Exception):
    """Base class for all package-specific errors."""


class UnknownTileId(TwohamError):
    """A placement references a tile id that is not in the tile set."""


class DanglingTileId(TwohamError):
    """A serialized placement names a tile id the document never declares."""


class EmptyAssembly(TwohamError):
    """An operation requiring at least one tile got an empty placement."""


class NegativeStrength(TwohamError):
    """A glue was declared with strength below zero."""


class BoundTooSmall(TwohamError):
    """A size bound is smaller than something it must accommodate."""


class NotProducible(TwohamError):
    """A supertile was expected inside an explored producible set."""


class AmbiguousAlignment(TwohamError):
    """Two block-grid alignments of one supertile decode to distinct images."""


class CorruptMacrotile(TwohamError):
    """A block contains a macrotile body whose markings match no tile type."""


class BodyTooSmall(TwohamError):
    """A computed block geometry cannot fit the features it must carry."""


class HeightTooSmall(TwohamError):
    """A requested ladder height is below the rung count."""


class FeasibilityCapExceeded(TwohamError):
    """An enumeration index needs a power set larger than the budget."""


class CapExceeded(TwohamError):
    """An input exceeds a configured search cap."""


class SchemaError(TwohamError):
    """A document fails structural validation; message carries the path."""
