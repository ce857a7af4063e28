import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.exceptions import InvalidParametersError
from app.services.chain_core import lifted_pair, subset_mask, validate_matrix
from app.services.moments import expected_occupancy
from app.services.occupancy_dp import (
    corner_vectors,
    mix_initial,
    occupancy_distribution,
    occupancy_layers,
    occupancy_moments,
)

from tests.conftest import random_chain


def test_two_state_hand_values(two_state):
    """
    p = 0.2, q = 0.4, U = {0}: the four length-2 paths give the table directly.
    """
    P, U = two_state
    table = occupancy_distribution(P, U, 2)
    assert_allclose(table.row(0), [0.12, 0.24, 0.64], atol=1e-15)
    assert_allclose(table.row(1), [0.36, 0.32, 0.32], atol=1e-15)


def test_one_step_splits_row(three_state):
    """
    With n = 1 the law is the one-step row split between U and its complement.
    """
    P, U = three_state
    table = occupancy_distribution(P, U, 1)
    inside = P.entries[:, U.indices].sum(axis=1)
    assert_allclose(table.column(1), inside, atol=1e-15)
    assert_allclose(table.column(0), 1.0 - inside, atol=1e-15)


def test_horizon_zero_convention(three_state):
    """
    N_0 = 0 for every start state.
    """
    P, U = three_state
    table = occupancy_distribution(P, U, 0)
    assert table.values.shape == (3, 1)
    assert_allclose(table.values, 1.0)


@pytest.mark.parametrize("members, k", [([], 0), ([0, 1, 2], 7)])
def test_degenerate_subsets_are_point_masses(three_state, members, k):
    """
    U = empty puts all mass on k = 0, U = S on k = n.
    """
    P, _ = three_state
    table = occupancy_distribution(P, subset_mask(P, members), 7)
    expected = np.zeros((3, 8))
    expected[:, k] = 1.0
    assert np.array_equal(table.values, expected)


def test_absorbing_state_in_u():
    """
    Once absorbed in U every remaining step counts.
    """
    P = validate_matrix([[1.0, 0.0], [0.5, 0.5]])
    table = occupancy_distribution(P, subset_mask(P, [0]), 3)
    assert_allclose(table.row(0), [0.0, 0.0, 0.0, 1.0])
    assert_allclose(table.row(1), [0.125, 0.125, 0.25, 0.5])


def test_negative_horizon_rejected(two_state):
    P, U = two_state
    with pytest.raises(InvalidParametersError):
        occupancy_distribution(P, U, -1)


def test_rows_normalized_on_random_chains():
    """
    Every row of every table sums to 1.
    """
    rng = np.random.default_rng(11)
    for _ in range(30):
        P, U = random_chain(rng, int(rng.integers(2, 7)))
        table = occupancy_distribution(P, U, int(rng.integers(1, 40)))
        assert_allclose(table.values.sum(axis=1), 1.0, atol=1e-12)
        assert table.values.min() >= 0.0


def test_corner_identities():
    """
    g(n, n) = A^n 1 and g(n, 0) = B^n 1.
    """
    rng = np.random.default_rng(5)
    for _ in range(20):
        P, U = random_chain(rng, int(rng.integers(2, 6)))
        n = int(rng.integers(1, 30))
        top, bottom = corner_vectors(lifted_pair(P, U), n)
        table = occupancy_distribution(P, U, n)
        assert_allclose(table.column(n), top, atol=1e-12)
        assert_allclose(table.column(0), bottom, atol=1e-12)


def test_layers_match_single_horizons(three_state):
    """
    The retained layers equal the tables computed horizon by horizon.
    """
    P, U = three_state
    layers = occupancy_layers(P, U, 6)
    assert [layer.horizon for layer in layers] == list(range(7))
    for m, layer in enumerate(layers):
        assert np.array_equal(layer.values, occupancy_distribution(P, U, m).values)


def test_mean_identity():
    """
    sum_k k g_i(n, k) equals the expected occupancy from the mean recursion.
    """
    rng = np.random.default_rng(23)
    for _ in range(20):
        P, U = random_chain(rng, int(rng.integers(2, 7)))
        n = int(rng.integers(1, 51))
        mean, _ = occupancy_moments(occupancy_distribution(P, U, n))
        assert_allclose(mean, expected_occupancy(P, lifted_pair(P, U), n), atol=1e-10)


def test_mix_initial(two_state):
    """
    An initial law mixes the per-state rows.
    """
    P, U = two_state
    table = occupancy_distribution(P, U, 2)
    assert_allclose(mix_initial(table, [0.5, 0.5]), [0.24, 0.28, 0.48], atol=1e-15)
    with pytest.raises(InvalidParametersError):
        mix_initial(table, [0.5, 0.6])
