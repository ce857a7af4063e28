from dataclasses import dataclass

import numpy as np

from app.exceptions import InvalidParametersError
from app.models._frozen import frozen_array


@dataclass(frozen=True)
class SimConfig:
    """
    Settings for one Monte Carlo run.

    Attributes:
      samples (int): Number of independent trajectories, at least 1.
      seed (int): Root seed; chunk seeds are spawned from it.
      start_state (int): Index of X_0.
      workers (int): Threads sharing the chunks; does not change the result.
    """
    samples: int
    seed: int
    start_state: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise InvalidParametersError(f"samples must be at least 1, got {self.samples}")
        if self.workers < 1:
            raise InvalidParametersError(f"workers must be at least 1, got {self.workers}")
        if self.seed < 0:
            raise InvalidParametersError(f"seed must be non-negative, got {self.seed}")


@dataclass(frozen=True)
class EmpiricalDistribution:
    """
    Tally of simulated occupancy counts.

    Attributes:
      counts (np.ndarray): counts[k] = number of trajectories with N_n = k, k = 0..n.
      samples (int): Total number of trajectories; equals counts.sum().
      generator (str): Name of the bit generator that produced the draws.
    """
    counts: np.ndarray
    samples: int
    generator: str = "PCG64"

    def __post_init__(self) -> None:
        counts = frozen_array(self.counts, dtype=np.int64)
        if int(counts.sum()) != self.samples:
            raise InvalidParametersError(f"Tally sums to {int(counts.sum())}, expected {self.samples}")
        object.__setattr__(self, "counts", counts)

    @property
    def horizon(self) -> int:
        return self.counts.shape[0] - 1

    @property
    def pmf(self) -> np.ndarray:
        return self.counts / self.samples
