from dataclasses import dataclass
from typing import Tuple

import numpy as np

from app.exceptions import MaskLengthMismatchError
from app.models._frozen import frozen_array


@dataclass(frozen=True)
class StochasticMatrix:
    """
    A validated row-stochastic transition matrix.

    Instances are produced by `chain_core.validate_matrix`; constructing one
    directly skips validation.

    Attributes:
      entries (np.ndarray): Dense (size, size) array, entries[i, j] = p_ij.
      labels (Tuple[str, ...]): One name per state, "0", "1", ... by default.
    """
    entries: np.ndarray
    labels: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", frozen_array(self.entries))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.entries.shape[0])))
        else:
            object.__setattr__(self, "labels", tuple(str(label) for label in self.labels))

    @property
    def size(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class SubsetMask:
    """
    Membership flags for the target subset U.

    Attributes:
      members (np.ndarray): Boolean flag per state, True for states in U.
    """
    members: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozen_array(self.members, dtype=bool))

    @classmethod
    def from_indices(cls, indices, size: int) -> "SubsetMask":
        members = np.zeros(size, dtype=bool)
        members[list(indices)] = True
        return cls(members)

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    @property
    def complement(self) -> np.ndarray:
        return np.flatnonzero(~self.members)

    @property
    def is_empty(self) -> bool:
        return not self.members.any()

    @property
    def is_full(self) -> bool:
        return bool(self.members.all())

    def check_length(self, size: int) -> None:
        if self.members.shape[0] != size:
            raise MaskLengthMismatchError(self.members.shape[0], size)


@dataclass(frozen=True)
class BlockDecomposition:
    """
    The four blocks of P under the U-first state ordering.

    Attributes:
      puu, puuc, pucu, pucuc (np.ndarray): P_UU, P_UU^c, P_U^cU, P_U^cU^c.
      order (np.ndarray): order[j] is the original index of permuted state j.
    """
    puu: np.ndarray
    puuc: np.ndarray
    pucu: np.ndarray
    pucuc: np.ndarray
    order: np.ndarray

    def __post_init__(self) -> None:
        for name in ("puu", "puuc", "pucu", "pucuc"):
            object.__setattr__(self, name, frozen_array(getattr(self, name)))
        object.__setattr__(self, "order", frozen_array(self.order, dtype=int))

    @property
    def n_u(self) -> int:
        return self.puu.shape[0]

    @property
    def n_uc(self) -> int:
        return self.pucuc.shape[0]

    def permuted(self) -> np.ndarray:
        """Reassemble the blocks into the permuted (U-first) matrix."""
        return np.block([[self.puu, self.puuc], [self.pucu, self.pucuc]])


@dataclass(frozen=True)
class LiftedPair:
    """
    Full-size matrices A (columns into U) and B (columns into U^c), U-first order.

    Attributes:
      a (np.ndarray): [[P_UU, 0], [P_U^cU, 0]].
      b (np.ndarray): [[0, P_UU^c], [0, P_U^cU^c]].
      order (np.ndarray): Same permutation as the BlockDecomposition it came from.
      n_u (int): |U|, the number of leading states that belong to U.
    """
    a: np.ndarray
    b: np.ndarray
    order: np.ndarray
    n_u: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", frozen_array(self.a))
        object.__setattr__(self, "b", frozen_array(self.b))
        object.__setattr__(self, "order", frozen_array(self.order, dtype=int))

    @property
    def size(self) -> int:
        return self.a.shape[0]
