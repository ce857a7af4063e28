"""
Exception hierarchy shared by the library, the CLI and the HTTP routers.

The surfaces map these onto exit codes / status codes:
  - ChainValidationError and ArgumentError subclasses -> exit 2, HTTP 422
  - RouteError subclasses -> exit 3, HTTP 409
"""


class OccupancyError(ValueError):
    """Base class for every error raised by this package."""


class ChainValidationError(OccupancyError):
    """The transition matrix, subset or chain file is invalid."""


class NonSquareError(ChainValidationError):
    def __init__(self, shape) -> None:
        self.shape = tuple(shape)
        super().__init__(f"Transition matrix must be square and non-empty, got shape {self.shape}")


class NegativeEntryError(ChainValidationError):
    def __init__(self, i: int, j: int, value: float) -> None:
        self.i, self.j, self.value = i, j, value
        super().__init__(f"Entry ({i}, {j}) = {value!r} is not a probability in [0, 1]")


class RowSumOutOfToleranceError(ChainValidationError):
    def __init__(self, i: int, row_sum: float, tolerance: float) -> None:
        self.i, self.row_sum, self.tolerance = i, row_sum, tolerance
        super().__init__(f"Row {i} sums to {row_sum!r}, outside tolerance {tolerance!r} of 1")


class MaskLengthMismatchError(ChainValidationError):
    def __init__(self, mask_length: int, size: int) -> None:
        self.mask_length, self.size = mask_length, size
        super().__init__(f"Subset mask has length {mask_length} but the chain has {size} states")


class ChainFileError(ChainValidationError):
    """A chain file could not be parsed; `field` names the offending entry."""

    def __init__(self, message: str, field: str = None) -> None:
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class ArgumentError(OccupancyError):
    """An operation was called with arguments outside its domain."""


class DimensionMismatchError(ArgumentError):
    def __init__(self, left, right) -> None:
        self.left, self.right = tuple(left), tuple(right)
        super().__init__(f"Incompatible series dimensions {self.left} and {self.right}")


class EmptyBlockError(ArgumentError):
    def __init__(self, block: str) -> None:
        self.block = block
        super().__init__(f"Block {block} is empty; use gf_coefficients for degenerate subsets")


class IndexOutOfRangeError(ArgumentError):
    def __init__(self, n: int, k: int) -> None:
        self.n, self.k = n, k
        super().__init__(f"Occupancy count k={k} outside [0, {n}]")


class InvalidParametersError(ArgumentError):
    """Two-state parameters, horizons or simulation settings are out of range."""


class RouteError(OccupancyError):
    """A compute route cannot serve the requested chain or size."""


class RouteMismatchError(RouteError):
    def __init__(self, route: str, reason: str) -> None:
        self.route, self.reason = route, reason
        super().__init__(f"Route '{route}' is not applicable: {reason}")


class TooManyPathsError(RouteError):
    def __init__(self, paths: int, limit: int) -> None:
        self.paths, self.limit = paths, limit
        super().__init__(f"Path enumeration over {paths} trajectories exceeds the limit of {limit}")
