"""Two-handed tile self-assembly: dynamics, simulation checks, compilers."""

from .errors import (
    AmbiguousAlignment,
    BoundTooSmall,
    BodyTooSmall,
    CapExceeded,
    CorruptMacrotile,
    DanglingTileId,
    EmptyAssembly,
    FeasibilityCapExceeded,
    HeightTooSmall,
    NegativeStrength,
    NotProducible,
    SchemaError,
    TwohamError,
    UnknownTileId,
)
from .model import (
    DIRECTIONS,
    EAST,
    INFINITE,
    NORTH,
    NULL_GLUE,
    SOUTH,
    TAS,
    WEST,
    Assembly,
    Glue,
    Supertile,
    TileSet,
    TileType,
    binding_graph,
    canonicalize,
    combination_offsets,
    combine,
    interaction,
    interface_strength,
    is_tau_stable,
)
from .dynamics import (
    ProducibleSet,
    StateMultiset,
    explore,
    is_terminal,
    single_step_reachable,
)
from .relations import (
    CHECKS,
    Report,
    check_equivalent_productions,
    check_follows,
    check_strongly_models,
    check_weakly_models,
    decode_producibles,
)
from .representation import (
    BlockRepresentation,
    DecodedImage,
    blocks_at,
    decode_supertile,
    fits_single_block,
    is_clean,
)

__all__ = [
    "AmbiguousAlignment",
    "Assembly",
    "BlockRepresentation",
    "BodyTooSmall",
    "BoundTooSmall",
    "CHECKS",
    "CapExceeded",
    "CorruptMacrotile",
    "DIRECTIONS",
    "DanglingTileId",
    "DecodedImage",
    "EAST",
    "EmptyAssembly",
    "FeasibilityCapExceeded",
    "Glue",
    "HeightTooSmall",
    "INFINITE",
    "NORTH",
    "NULL_GLUE",
    "NegativeStrength",
    "NotProducible",
    "ProducibleSet",
    "Report",
    "SOUTH",
    "SchemaError",
    "StateMultiset",
    "Supertile",
    "TAS",
    "TileSet",
    "TileType",
    "TwohamError",
    "UnknownTileId",
    "WEST",
    "binding_graph",
    "blocks_at",
    "canonicalize",
    "check_equivalent_productions",
    "check_follows",
    "check_strongly_models",
    "check_weakly_models",
    "combination_offsets",
    "combine",
    "decode_producibles",
    "decode_supertile",
    "explore",
    "fits_single_block",
    "interaction",
    "interface_strength",
    "is_clean",
    "is_tau_stable",
    "is_terminal",
    "single_step_reachable",
]
