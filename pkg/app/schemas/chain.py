from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, model_validator

from app.exceptions import ChainFileError
from app.models.chain import StochasticMatrix, SubsetMask
from app.services.chain_core import subset_mask, validate_matrix


class ChainFile(BaseModel):
    """
    Chain input file.

    Attributes:
      states (Optional[List[str]]): State labels; "0", "1", ... when omitted.
      P (List[List[float]]): Transition matrix, one list per row.
      U (List[int | str]): Members of the target subset, either all indices or all labels.

    Sample JSON:
    {
        "states": ["state0", "state1"],
        "P": [[0.8, 0.2], [0.4, 0.6]],
        "U": ["state0"]
    }
    """
    model_config = ConfigDict(extra="forbid")
    states: Optional[List[StrictStr]] = None
    P: List[List[float]]
    U: List[Union[StrictInt, StrictStr]] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_shapes(self) -> "ChainFile":
        if self.states is not None and len(self.states) != len(self.P):
            raise ValueError(f"'states' has {len(self.states)} labels but 'P' has {len(self.P)} rows")
        kinds = {type(member) for member in self.U}
        if len(kinds) > 1:
            raise ValueError("'U' must list either state indices or state labels, not both")
        return self

    def labels(self) -> List[str]:
        return list(self.states) if self.states is not None else [str(i) for i in range(len(self.P))]

    def to_chain(self, tolerance: float = None) -> Tuple[StochasticMatrix, SubsetMask]:
        """
        Validate the matrix and resolve U against the labels.

        :raises ChainValidationError: If P is invalid or U names unknown states.
        """
        P = validate_matrix(self.P, tolerance=tolerance, labels=self.states)
        if self.U and all(isinstance(member, str) for member in self.U):
            positions = {label: i for i, label in enumerate(P.labels)}
            unknown = [member for member in self.U if member not in positions]
            if unknown:
                raise ChainFileError(f"unknown state labels {unknown}", field="U")
            indices = [positions[member] for member in self.U]
        else:
            indices = list(self.U)
        try:
            return P, subset_mask(P, indices)
        except ValueError as e:
            raise ChainFileError(str(e), field="U")

    def resolve_state(self, state: Union[int, str]) -> int:
        """Index of a state given by index or label."""
        labels = self.labels()
        if isinstance(state, str) and state in labels:
            return labels.index(state)
        try:
            index = int(state)
        except (TypeError, ValueError):
            raise ChainFileError(f"unknown state {state!r}", field="start")
        if not 0 <= index < len(labels):
            raise ChainFileError(f"state index {index} outside 0..{len(labels) - 1}", field="start")
        return index
