"""Tiling systems carried through rational, integral, zig-zag and marked-square stages."""
from .errors import (
    AmalgamationError,
    ParseError,
    PathIndependenceError,
    PipelineError,
    RationalizationError,
    TilingError,
    ValidationError,
    ZigzagFailure,
)
from .exactmath import RatMatrix, RealScalar, best_rational_approx, nullspace_basis, rank, rref
from .fileio import load_patch, load_system, save_patch, save_system
from .rationalizer import (
    ConstraintSystem,
    RescaleRecord,
    assemble_constraints,
    prescale_for_inradius,
    rationalize,
    rescale_integral,
    torus_project,
)
from .squaresys import (
    SquareConfiguration,
    SquareSymbol,
    SquareSystem,
    amalgamate,
    build_square_system,
    explode,
    matching_rules,
)
from .svg import SvgScene, render_svg
from .tilemodel import (
    EdgeType,
    Patch,
    Placement,
    Prototile,
    TileSystem,
    TorusPoint,
    grow_patch,
    validate_patch,
    validate_system,
)
from .transport import (
    PipelineRecord,
    SystemCorrespondence,
    ZigzagPatch,
    compose_pipeline,
    transport_patch,
    unzigzag_patch,
    zigzag_patch,
)
from .zigzag import ZigzagPath, ZigzagSystem, ZigzagTile, build_zigzag_system, zigzag_edge

__all__ = [name for name in dir() if not name.startswith("_")]
