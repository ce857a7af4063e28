from dataclasses import dataclass
from typing import Tuple

import numpy as np

from app.models._frozen import frozen_array


@dataclass(frozen=True)
class OccupancyTable:
    """
    The law of N_n for every starting state.

    Attributes:
      horizon (int): The number of steps n.
      values (np.ndarray): (|S|, n + 1) array, values[i, k] = Pr(N_n = k | X_0 = i),
        rows in the caller's original state order.
      labels (Tuple[str, ...]): State names matching the rows of `values`.
    """
    horizon: int
    values: np.ndarray
    labels: Tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", frozen_array(self.values))
        object.__setattr__(self, "labels", tuple(self.labels))

    def row(self, state: int) -> np.ndarray:
        return self.values[state]

    def column(self, k: int) -> np.ndarray:
        return self.values[:, k]

    def as_dict(self) -> dict:
        return {label: [float(v) for v in row] for label, row in zip(self.labels, self.values)}
