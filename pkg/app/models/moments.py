from dataclasses import dataclass
from typing import Tuple

import numpy as np

from app.exceptions import InvalidParametersError
from app.models._frozen import frozen_array


@dataclass(frozen=True)
class PgfEvaluation:
    """
    H(n, z) = E[z^{N_n} | X_0 = i] for every state, original order.

    For z in [0, 1] every entry lies in [0, 1]; other real z are allowed since
    H(n, .) is a polynomial of degree n.
    """
    horizon: int
    z: float
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", frozen_array(self.values))


@dataclass(frozen=True)
class CostFunction:
    """
    Per-state cost f(i) for the total cost F_n = sum_{m=1}^{n} f(X_m).

    Attributes:
      f (np.ndarray): One finite real value per state.
    """
    f: np.ndarray

    def __post_init__(self) -> None:
        f = frozen_array(self.f)
        if f.ndim != 1 or not np.all(np.isfinite(f)):
            raise InvalidParametersError("Cost function must be a finite vector with one entry per state")
        object.__setattr__(self, "f", f)

    @classmethod
    def indicator(cls, members) -> "CostFunction":
        return cls(np.asarray(members, dtype=float))
