import json

import numpy as np
import pytest

from app.services.chain_core import subset_mask, validate_matrix

TWO_STATE = [[0.8, 0.2], [0.4, 0.6]]
THREE_STATE = [[0.5, 0.3, 0.2], [0.1, 0.6, 0.3], [0.4, 0.4, 0.2]]


def two_state_matrix(p: float, q: float):
    return validate_matrix([[1.0 - p, p], [q, 1.0 - q]])


def random_chain(rng: np.random.Generator, size: int):
    """Random stochastic matrix with some exact zeros and a random subset U."""
    entries = rng.random((size, size))
    entries[rng.random((size, size)) < 0.3] = 0.0
    for row in entries:
        if not row.any():
            row[rng.integers(size)] = 1.0
    entries /= entries.sum(axis=1, keepdims=True)
    P = validate_matrix(entries)
    members = np.flatnonzero(rng.random(size) < 0.5)
    return P, subset_mask(P, members)


@pytest.fixture
def two_state():
    """p = 0.2, q = 0.4 with U = {0}."""
    P = validate_matrix(TWO_STATE)
    return P, subset_mask(P, [0])


@pytest.fixture
def three_state():
    P = validate_matrix(THREE_STATE)
    return P, subset_mask(P, [0, 2])


@pytest.fixture
def chain_file(tmp_path):
    """Write a chain JSON document to a temporary file and return its path."""
    def write(payload, name="chain.json"):
        path = tmp_path / name
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
        return str(path)
    return write
