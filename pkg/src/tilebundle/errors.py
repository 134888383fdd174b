"""Exception hierarchy shared by the pipeline stages."""


class TilingError(Exception):
    """Base class for every error raised by tilebundle."""


class ValidationError(TilingError):
    """A system or patch failed validation; ``issues`` holds the report."""

    def __init__(self, message, issues=()):
        super().__init__(message)
        self.issues = list(issues)


class RationalizationError(TilingError):
    pass


class PathIndependenceError(TilingError):
    """Two adjacency paths placed the same tile at different positions."""

    def __init__(self, message, tile_index=None, positions=()):
        super().__init__(message)
        self.tile_index = tile_index
        self.positions = tuple(positions)


class ZigzagFailure(TilingError):
    """Zig-zag region extraction failed; retry after prescaling by ``suggested_factor``."""

    suggested_factor = 2

    def __init__(self, message, prototile=None):
        super().__init__(message)
        self.prototile = prototile


class AmalgamationError(TilingError):
    def __init__(self, message, cell=None, placement=None, missing=None):
        super().__init__(message)
        self.cell = cell
        self.placement = placement
        self.missing = missing


class PipelineError(TilingError):
    def __init__(self, stage, cause):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


class ParseError(TilingError):
    pass
