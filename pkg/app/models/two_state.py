from dataclasses import dataclass

import numpy as np

from app.exceptions import InvalidParametersError
from app.models._frozen import frozen_array


@dataclass(frozen=True)
class TwoStateParams:
    """
    Parameters of the chain P = [[1 - p, p], [q, 1 - q]].

    Attributes:
      p (float): Probability of the 0 -> 1 transition, in (0, 1).
      q (float): Probability of the 1 -> 0 transition, in (0, 1).
      r (float): 1 - p - q, fixed at construction.
    """
    p: float
    q: float
    r: float = None

    def __post_init__(self) -> None:
        p, q = float(self.p), float(self.q)
        if not (0.0 < p < 1.0 and 0.0 < q < 1.0):
            raise InvalidParametersError(f"Two-state closed forms need p, q in (0, 1), got p={p!r}, q={q!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", 1.0 - p - q)

    def swapped(self) -> "TwoStateParams":
        """The same chain with the two states relabelled."""
        return TwoStateParams(self.q, self.p)


@dataclass(frozen=True)
class ProofCoefficients:
    """
    Coefficient arrays of G_1(t, k) = (sum_i a_i t^i) * (sum_i b_i t^i).

    Attributes:
      k (int): Occupancy count.
      a (np.ndarray): a_0(k) .. a_k(k), coefficients of (1 - rt)(1 - p - rt)^(k-1).
      b (np.ndarray): b_0(k) .. b_T(k), coefficients of q / (1 - (1 - q)t)^(k+1).
      c (np.ndarray): c_0(k) .. c_T(k), their truncated convolution; c_i(k) = g_1(i + k, k).
    """
    k: int
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, frozen_array(getattr(self, name)))
