"""
Forward recursion for g_i(n, k) = Pr(N_n = k | X_0 = i).

Layer n is obtained from layer n - 1 by g(n, k) = A g(n-1, k-1) + B g(n-1, k),
with the edges g(n, n) = A^n 1 and g(n, 0) = B^n 1 falling out of the same
update. X_0 never counts as a visit. This is the reference route every other
route is compared against.
"""
import logging
from typing import Iterator, List, Tuple

import numpy as np

from app.config import settings
from app.exceptions import InvalidParametersError
from app.models.chain import LiftedPair, StochasticMatrix, SubsetMask
from app.models.occupancy import OccupancyTable
from app.services.chain_core import lifted_pair, restore_order

logger = logging.getLogger(__name__)


def _check_horizon(n: int) -> None:
    if n < 0:
        raise InvalidParametersError(f"Horizon must be non-negative, got {n}")


def _forced_layer(U: SubsetMask, size: int, n: int) -> np.ndarray:
    """Point masses for U = empty (N_n = 0) and U = S (N_n = n)."""
    layer = np.zeros((size, n + 1))
    layer[:, n if U.is_full else 0] = 1.0
    return layer


def _iter_layers(pair: LiftedPair, n: int) -> Iterator[np.ndarray]:
    """Yield layers 0..n in U-first order, each of shape (|S|, m + 1)."""
    layer = np.ones((pair.size, 1))
    yield layer
    for m in range(1, n + 1):
        nxt = np.zeros((pair.size, m + 1))
        nxt[:, :m] += pair.b @ layer
        nxt[:, 1:] += pair.a @ layer
        layer = nxt
        yield layer


def occupancy_distribution(P: StochasticMatrix, U: SubsetMask, n: int) -> OccupancyTable:
    """
    Compute the full table g_i(n, k), 0 <= k <= n, by the layered recursion.

    Only the previous layer is kept. n = 0 returns the convention table g_i(0, 0) = 1.

    :param P: Validated transition matrix.
    :param U: Target subset.
    :param n: Horizon.
    :return: OccupancyTable in the caller's state order.
    """
    _check_horizon(n)
    U.check_length(P.size)
    if U.is_empty or U.is_full:
        return OccupancyTable(n, _forced_layer(U, P.size, n), P.labels)

    pair = lifted_pair(P, U)
    layer = None
    for layer in _iter_layers(pair, n):
        pass
    logger.debug(f"DP table computed for {P.size} states, horizon {n}")
    return OccupancyTable(n, restore_order(layer, pair.order), P.labels)


def occupancy_layers(P: StochasticMatrix, U: SubsetMask, n: int) -> List[OccupancyTable]:
    """Tables for every horizon 0..n; tables[m] is the law of N_m."""
    _check_horizon(n)
    U.check_length(P.size)
    if U.is_empty or U.is_full:
        return [OccupancyTable(m, _forced_layer(U, P.size, m), P.labels) for m in range(n + 1)]
    pair = lifted_pair(P, U)
    return [
        OccupancyTable(m, restore_order(layer, pair.order), P.labels)
        for m, layer in enumerate(_iter_layers(pair, n))
    ]


def corner_vectors(pair: LiftedPair, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Return (A^n 1, B^n 1), the k = n and k = 0 columns, in the original state order.

    Computed by repeated matrix-vector products without building the table.
    """
    _check_horizon(n)
    top = np.ones(pair.size)
    bottom = np.ones(pair.size)
    for _ in range(n):
        top = pair.a @ top
        bottom = pair.b @ bottom
    return restore_order(top, pair.order), restore_order(bottom, pair.order)


def mix_initial(table: OccupancyTable, initial) -> np.ndarray:
    """
    Law of N_n when X_0 is drawn from `initial` instead of fixed.

    :param table: Per-state occupancy table.
    :param initial: Probability vector over the states of the table.
    :return: pmf over k = 0..n.
    """
    initial = np.asarray(initial, dtype=float)
    if initial.shape != (table.values.shape[0],) or np.any(initial < 0):
        raise InvalidParametersError("Initial distribution must be a non-negative vector over the states")
    if abs(initial.sum() - 1.0) > settings.ROW_SUM_TOLERANCE:
        raise InvalidParametersError(f"Initial distribution sums to {initial.sum()!r}, not 1")
    return initial @ table.values


def occupancy_moments(table: OccupancyTable) -> Tuple[np.ndarray, np.ndarray]:
    """Mean and variance of N_n per state, read off the table."""
    k = np.arange(table.horizon + 1, dtype=float)
    mean = table.values @ k
    variance = table.values @ (k * k) - mean * mean
    return mean, variance
