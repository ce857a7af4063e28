from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

RouteTag = Literal["dp", "gf", "closed", "enum", "vw", "mc"]


class ResultTable(BaseModel):
    """
    Occupancy table produced by one route.

    Attributes:
      route (str): Route tag, one of dp, gf, closed, enum, vw, mc.
      n (int): Horizon.
      table (Dict[str, List[float]]): State label -> [g(n, 0), ..., g(n, n)].
      layers (Optional[List[Dict[str, List[float]]]]): Tables for horizons 0..n when requested.
      meta (Dict[str, Any]): Provenance: tolerance, truncation order, seed, tool version.

    Sample JSON:
    {
        "route": "dp",
        "n": 2,
        "table": {"state0": [0.12, 0.24, 0.64], "state1": [0.36, 0.32, 0.32]},
        "meta": {"tolerance": 1e-12, "version": "1.0.0"}
    }
    """
    model_config = ConfigDict(extra="forbid")
    route: RouteTag
    n: int
    table: Dict[str, List[float]]
    layers: Optional[List[Dict[str, List[float]]]] = None
    meta: Dict[str, Any] = Field(default_factory=dict)


class MeanReport(BaseModel):
    """
    Expected occupancy e(n) with the variance of N_n per state.
    """
    model_config = ConfigDict(extra="forbid")
    n: int
    mean: Dict[str, float]
    variance: Dict[str, float]
    meta: Dict[str, Any] = Field(default_factory=dict)


class RouteDiscrepancy(BaseModel):
    """
    Largest absolute difference between two routes and where it occurs.

    Attributes:
      left, right (str): Route tags.
      max_abs_diff (float): max over (state, k) of |left - right|.
      state (str): Label of the state where the maximum occurs.
      k (int): Count where the maximum occurs.
    """
    left: str
    right: str
    max_abs_diff: float
    state: str
    k: int


class ComparisonReport(BaseModel):
    """
    Cross-route comparison of the same occupancy table.

    Attributes:
      cells (Dict[str, List[float]]): Per (state, k), the spread max - min across routes.
      passed (bool): True iff every pairwise discrepancy is within `tolerance`.
    """
    model_config = ConfigDict(extra="forbid")
    n: int
    routes: List[str]
    tolerance: float
    pairs: List[RouteDiscrepancy]
    cells: Dict[str, List[float]]
    max_discrepancy: float
    passed: bool
    meta: Dict[str, Any] = Field(default_factory=dict)


class SimulationReport(BaseModel):
    """
    Monte Carlo tally next to the DP reference.

    Attributes:
      counts (List[int]): Trajectories with N_n = k.
      empirical (List[float]): counts / samples.
      reference (List[float]): DP probabilities for the same start state.
      z_scores (List[float]): Per-bin z-scores of empirical against reference.
      chi_square, p_value (Optional[float]): Pearson goodness-of-fit over bins with expected count >= 10.
    """
    model_config = ConfigDict(extra="forbid")
    n: int
    start: str
    samples: int
    seed: int
    generator: str
    counts: List[int]
    empirical: List[float]
    reference: List[float]
    z_scores: List[float]
    chi_square: Optional[float] = None
    p_value: Optional[float] = None
    meta: Dict[str, Any] = Field(default_factory=dict)
