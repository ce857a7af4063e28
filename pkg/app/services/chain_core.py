import logging
from typing import Optional, Sequence

import numpy as np

from app.config import settings
from app.exceptions import (
    ChainValidationError,
    NegativeEntryError,
    NonSquareError,
    RowSumOutOfToleranceError,
)
from app.models.chain import BlockDecomposition, LiftedPair, StochasticMatrix, SubsetMask

logger = logging.getLogger(__name__)


def validate_matrix(entries, tolerance: Optional[float] = None,
                    labels: Optional[Sequence[str]] = None) -> StochasticMatrix:
    """
    Validate a transition matrix and renormalize rows that are within tolerance.

    :param entries: Square array-like of transition probabilities.
    :param tolerance: Largest accepted |row sum - 1|; defaults to settings.ROW_SUM_TOLERANCE.
    :param labels: Optional state names, "0", "1", ... when omitted.
    :return: The validated StochasticMatrix.
    :raises NonSquareError: If the array is not a non-empty square matrix.
    :raises NegativeEntryError: If an entry lies outside [0, 1] or is not finite.
    :raises RowSumOutOfToleranceError: If a row sum misses 1 by more than the tolerance.
    """
    tolerance = settings.ROW_SUM_TOLERANCE if tolerance is None else tolerance
    try:
        array = np.array(entries, dtype=float)
    except (TypeError, ValueError) as e:
        raise ChainValidationError(f"Transition matrix is not a numeric array: {e}")
    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
        raise NonSquareError(array.shape)

    bad = ~np.isfinite(array) | (array < 0.0) | (array > 1.0)
    if bad.any():
        i, j = (int(x) for x in np.argwhere(bad)[0])
        raise NegativeEntryError(i, j, float(array[i, j]))

    row_sums = array.sum(axis=1)
    for i, row_sum in enumerate(row_sums):
        if abs(row_sum - 1.0) > tolerance:
            raise RowSumOutOfToleranceError(i, float(row_sum), tolerance)
    drifted = row_sums != 1.0
    if drifted.any():
        logger.debug(f"Renormalizing rows {np.flatnonzero(drifted).tolist()}")
        array[drifted] /= row_sums[drifted, None]

    if labels is not None:
        labels = [str(label) for label in labels]
        if len(labels) != array.shape[0]:
            raise ChainValidationError(f"Got {len(labels)} state labels for {array.shape[0]} states")
        if len(set(labels)) != len(labels):
            raise ChainValidationError("State labels must be unique")
    return StochasticMatrix(array, tuple(labels or ()))


def subset_mask(P: StochasticMatrix, indices: Sequence[int]) -> SubsetMask:
    """Build the mask of U from state indices, checking they exist in P."""
    for index in indices:
        if not 0 <= int(index) < P.size:
            raise ChainValidationError(f"State index {index} outside 0..{P.size - 1}")
    return SubsetMask.from_indices([int(i) for i in indices], P.size)


def decompose(P: StochasticMatrix, U: SubsetMask) -> BlockDecomposition:
    """
    Split P into P_UU, P_UU^c, P_U^cU, P_U^cU^c under the U-first ordering.

    Empty U or U^c gives zero-sized blocks.

    :raises MaskLengthMismatchError: If the mask length differs from P.size.
    """
    U.check_length(P.size)
    inside, outside = U.indices, U.complement
    entries = P.entries
    return BlockDecomposition(
        puu=entries[np.ix_(inside, inside)],
        puuc=entries[np.ix_(inside, outside)],
        pucu=entries[np.ix_(outside, inside)],
        pucuc=entries[np.ix_(outside, outside)],
        order=np.concatenate([inside, outside]),
    )


def lift(blocks: BlockDecomposition) -> LiftedPair:
    """Build A = [[P_UU, 0], [P_U^cU, 0]] and B = [[0, P_UU^c], [0, P_U^cU^c]]."""
    n_u = blocks.n_u
    size = n_u + blocks.n_uc
    a = np.zeros((size, size))
    b = np.zeros((size, size))
    a[:n_u, :n_u] = blocks.puu
    a[n_u:, :n_u] = blocks.pucu
    b[:n_u, n_u:] = blocks.puuc
    b[n_u:, n_u:] = blocks.pucuc
    return LiftedPair(a=a, b=b, order=blocks.order, n_u=n_u)


def lifted_pair(P: StochasticMatrix, U: SubsetMask) -> LiftedPair:
    return lift(decompose(P, U))


def permute(P: StochasticMatrix, order: np.ndarray) -> np.ndarray:
    """P's entries with rows and columns in the given order."""
    return P.entries[np.ix_(order, order)]


def restore_order(values, order: np.ndarray, axis: int = 0) -> np.ndarray:
    """Move `axis` of `values` from the U-first ordering back to the original state order."""
    values = np.moveaxis(np.asarray(values), axis, 0)
    restored = np.empty_like(values)
    restored[order] = values
    return np.moveaxis(restored, 0, axis)
