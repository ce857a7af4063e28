"""
Generating-function route.

G(t, k) = sum_n g(n, k) t^(n-k) satisfies G(t, k) = [(I - Bt)^-1 A]^k (I - Bt)^-1 1.
Series are formal: the Neumann expansion of (I - Bt)^-1 is truncated at the
requested order and only coefficients are ever read.
"""
import logging
from typing import List

import numpy as np

from app.exceptions import DimensionMismatchError, EmptyBlockError, InvalidParametersError, RouteMismatchError
from app.models.chain import BlockDecomposition, StochasticMatrix, SubsetMask
from app.models.occupancy import OccupancyTable
from app.models.series import MatrixSeries, VectorSeries
from app.services.chain_core import decompose, lift, restore_order

logger = logging.getLogger(__name__)


def series_add(x: MatrixSeries, y: MatrixSeries) -> MatrixSeries:
    """Coefficientwise sum, truncated to the smaller order."""
    if x.shape != y.shape:
        raise DimensionMismatchError(x.shape, y.shape)
    order = min(x.order, y.order)
    return MatrixSeries(x.coeffs[: order + 1] + y.coeffs[: order + 1])


def series_mul(x: MatrixSeries, y: MatrixSeries) -> MatrixSeries:
    """Cauchy product sum_{j<=m} x_j y_{m-j}, truncated to the smaller order."""
    if x.shape[1] != y.shape[0]:
        raise DimensionMismatchError(x.shape, y.shape)
    order = min(x.order, y.order)
    coeffs = np.zeros((order + 1, x.shape[0], y.shape[1]))
    for m in range(order + 1):
        coeffs[m] = np.einsum("jab,jbc->ac", x.coeffs[: m + 1], y.coeffs[m::-1])
    return MatrixSeries(coeffs)


def series_apply(x: MatrixSeries, v: VectorSeries) -> VectorSeries:
    """Product of a matrix series with a vector series, truncated to the smaller order."""
    if x.shape[1] != v.dim:
        raise DimensionMismatchError(x.shape, (v.dim,))
    order = min(x.order, v.order)
    coeffs = np.zeros((order + 1, x.shape[0]))
    for m in range(order + 1):
        coeffs[m] = np.einsum("jab,jb->a", x.coeffs[: m + 1], v.coeffs[m::-1])
    return VectorSeries(coeffs, v.k)


def truncate(x: MatrixSeries, order: int) -> MatrixSeries:
    return MatrixSeries(x.coeffs[: order + 1])


def resolvent(b: np.ndarray, T: int) -> MatrixSeries:
    """
    Neumann series sum_{m=0}^{T} b^m t^m, equal to (I - bt)^-1 up to order T.

    For the lifted B the U columns of every coefficient m >= 1 are zero.
    """
    if T < 0:
        raise InvalidParametersError(f"Truncation order must be non-negative, got {T}")
    b = np.asarray(b, dtype=float)
    coeffs = np.zeros((T + 1,) + b.shape)
    coeffs[0] = np.eye(b.shape[0])
    for m in range(1, T + 1):
        coeffs[m] = coeffs[m - 1] @ b
    return MatrixSeries(coeffs)


def _left_multiply(a: np.ndarray, v: VectorSeries, order: int) -> VectorSeries:
    """The vector series a . v, cut to `order`."""
    return VectorSeries(v.coeffs[: order + 1] @ a.T, v.k)


def gf_coefficients(P: StochasticMatrix, U: SubsetMask, k: int, T: int) -> VectorSeries:
    """
    First T + 1 coefficients of G(t, k); coefficient m of state i is g_i(m + k, k).

    :param P: Validated transition matrix.
    :param U: Target subset.
    :param k: Occupancy count, k >= 0.
    :param T: Truncation order, T >= 0.
    :return: VectorSeries in the caller's state order.
    """
    if k < 0:
        raise InvalidParametersError(f"Occupancy count must be non-negative, got {k}")
    pair = lift(decompose(P, U))
    R = resolvent(pair.b, T)
    g = VectorSeries(R.coeffs.sum(axis=2), 0)
    for step in range(1, k + 1):
        g = series_apply(R, _left_multiply(pair.a, g, T))
        g = VectorSeries(g.coeffs, step)
    return VectorSeries(restore_order(g.coeffs, pair.order, axis=1), k)


def generating_functions(P: StochasticMatrix, U: SubsetMask, n: int) -> List[VectorSeries]:
    """
    G(t, k) for k = 0..n, each truncated at order n - k, in the caller's state order.

    G(t, k) is built from G(t, k - 1), so the whole family costs n series products.
    Entry k, coefficient m holds g(m + k, k) for every horizon m + k <= n.
    """
    if n < 0:
        raise InvalidParametersError(f"Horizon must be non-negative, got {n}")
    pair = lift(decompose(P, U))
    R = resolvent(pair.b, n)
    g = VectorSeries(R.coeffs.sum(axis=2), 0)
    family = [g]
    for k in range(1, n + 1):
        order = n - k
        g = VectorSeries(series_apply(truncate(R, order), _left_multiply(pair.a, g, order)).coeffs, k)
        family.append(g)
    return [VectorSeries(restore_order(s.coeffs, pair.order, axis=1), s.k) for s in family]


def gf_table(P: StochasticMatrix, U: SubsetMask, n: int) -> OccupancyTable:
    """Assemble g(n, k), k = 0..n, from G(t, k) truncated at T = n - k."""
    family = generating_functions(P, U, n)
    values = np.stack([series.coeffs[n - series.k] for series in family], axis=1)
    return OccupancyTable(n, values, P.labels)


class _ReducedSeries:
    """
    The |U|-dimensional ingredients of the V/W reduction up to order T.

    V = P_UU + t P_UU^c (I - t P_U^cU^c)^-1 P_U^cU, W = (I - t P_U^cU^c)^-1 P_U^cU,
    and y = 1_U + t P_UU^c (I - t P_U^cU^c)^-1 1_U^c is the U part of (I - Bt)^-1 1.
    Then G_U(t, k) = V z_k and G_U^c(t, k) = W z_k with z_k = V^(k-1) y.
    """

    def __init__(self, blocks: BlockDecomposition, T: int) -> None:
        if blocks.n_u == 0:
            raise EmptyBlockError("U")
        if blocks.n_uc == 0:
            raise EmptyBlockError("U^c")
        inner = resolvent(blocks.pucuc, T)
        n_u = blocks.n_u

        v = np.zeros((T + 1, n_u, n_u))
        v[0] = blocks.puu
        y = np.zeros((T + 1, n_u))
        y[0] = 1.0
        for m in range(1, T + 1):
            v[m] = blocks.puuc @ inner.coeffs[m - 1] @ blocks.pucu
            y[m] = blocks.puuc @ inner.coeffs[m - 1].sum(axis=1)

        self.V = MatrixSeries(v)
        self.W = MatrixSeries(inner.coeffs @ blocks.pucu)
        self.y = VectorSeries(y, 0)
        self.order = blocks.order

    def columns(self, z: VectorSeries) -> np.ndarray:
        """Stack V z over W z, permuted order, as a (order + 1, |S|) array."""
        upper = series_apply(self.V, z).coeffs
        lower = series_apply(self.W, z).coeffs
        return np.concatenate([upper, lower], axis=1)


def vw_reduction(blocks: BlockDecomposition, k: int, T: int) -> VectorSeries:
    """
    G(t, k) through the reduced form [(I - Bt)^-1 A]^k = [[V, 0], [W, 0]] V^(k-1).

    Only |U|-dimensional series are powered, which pays off when |U| << |S|.

    :raises EmptyBlockError: If U or U^c is empty.
    """
    if k < 1:
        raise InvalidParametersError(f"vw_reduction needs k >= 1, got {k}")
    reduced = _ReducedSeries(blocks, T)
    z = reduced.y
    for _ in range(k - 1):
        z = series_apply(reduced.V, z)
    coeffs = reduced.columns(z)
    return VectorSeries(restore_order(coeffs, blocks.order, axis=1), k)


def vw_table(P: StochasticMatrix, U: SubsetMask, n: int) -> OccupancyTable:
    """
    Table g(n, k) with the k >= 1 columns taken from the V/W reduction.

    The k = 0 column is (I - Bt)^-1 1, which needs no reduction.
    """
    if n < 0:
        raise InvalidParametersError(f"Horizon must be non-negative, got {n}")
    if U.is_empty or U.is_full:
        raise RouteMismatchError("vw", "U and its complement must both be non-empty")
    blocks = decompose(P, U)
    pair = lift(blocks)
    values = np.zeros((P.size, n + 1))
    values[:, 0] = resolvent(pair.b, n).coeffs[n].sum(axis=1)
    if n > 0:
        reduced = _ReducedSeries(blocks, n - 1)
        z = reduced.y
        for k in range(1, n + 1):
            order = n - k
            values[:, k] = reduced.columns(VectorSeries(z.coeffs[: order + 1], k))[order]
            z = series_apply(truncate(reduced.V, order), z)
    return OccupancyTable(n, restore_order(values, blocks.order), P.labels)
