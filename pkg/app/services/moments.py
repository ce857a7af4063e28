import logging

import numpy as np

from app.exceptions import InvalidParametersError
from app.models.chain import LiftedPair, StochasticMatrix
from app.models.moments import CostFunction, PgfEvaluation
from app.services.chain_core import permute, restore_order

logger = logging.getLogger(__name__)


def _check_positive(n: int) -> None:
    if n < 1:
        raise InvalidParametersError(f"Horizon must be at least 1, got {n}")


def pgf_eval(pair: LiftedPair, n: int, z: float) -> PgfEvaluation:
    """
    Evaluate H(n, z) = (B + Az)^n 1 by iterating H(m, z) = (B + Az) H(m - 1, z).

    Any real z is accepted; n = 0 gives the all-ones vector.

    :param pair: Lifted A/B pair of the chain.
    :param n: Horizon, n >= 0.
    :param z: Evaluation point.
    :return: PgfEvaluation in the original state order.
    """
    if n < 0:
        raise InvalidParametersError(f"Horizon must be non-negative, got {n}")
    step = pair.b + pair.a * z
    h = np.ones(pair.size)
    for _ in range(n):
        h = step @ h
    return PgfEvaluation(horizon=n, z=float(z), values=restore_order(h, pair.order))


def _expected_occupancy_permuted(P: StochasticMatrix, pair: LiftedPair, n: int) -> np.ndarray:
    transition = permute(P, pair.order)
    visits = pair.a.sum(axis=1)
    e = visits.copy()
    for _ in range(n - 1):
        e = transition @ e + visits
    return e


def expected_occupancy(P: StochasticMatrix, pair: LiftedPair, n: int) -> np.ndarray:
    """
    e(n) = (I + P + ... + P^(n-1)) A 1 via e(m) = P e(m - 1) + A 1, e(1) = A 1.

    :return: E[N_n | X_0 = i] per state, original order.
    """
    _check_positive(n)
    return restore_order(_expected_occupancy_permuted(P, pair, n), pair.order)


def expected_cost(P: StochasticMatrix, f: CostFunction, n: int) -> np.ndarray:
    """E[F_n | X_0 = i] with F_n = sum_{m=1}^{n} f(X_m), i.e. sum_{m=1}^{n} P^m f."""
    _check_positive(n)
    if f.f.shape[0] != P.size:
        raise InvalidParametersError(f"Cost function has {f.f.shape[0]} entries for {P.size} states")
    v = f.f.copy()
    total = np.zeros(P.size)
    for _ in range(n):
        v = P.entries @ v
        total += v
    return total


def second_factorial_moment(P: StochasticMatrix, pair: LiftedPair, n: int) -> np.ndarray:
    """
    E[N_n (N_n - 1) | X_0 = i] from the twice-differentiated pgf recursion.

    d(m) = P d(m - 1) + 2 A e(m - 1), d(1) = 0, where e is the expected occupancy.
    """
    _check_positive(n)
    transition = permute(P, pair.order)
    visits = pair.a.sum(axis=1)
    e = visits.copy()
    d = np.zeros(pair.size)
    for _ in range(n - 1):
        d = transition @ d + 2.0 * (pair.a @ e)
        e = transition @ e + visits
    return restore_order(d, pair.order)


def occupancy_variance(P: StochasticMatrix, pair: LiftedPair, n: int) -> np.ndarray:
    """Var(N_n | X_0 = i) = d(n) + e(n) - e(n)^2."""
    d = second_factorial_moment(P, pair, n)
    e = expected_occupancy(P, pair, n)
    return d + e - e * e
