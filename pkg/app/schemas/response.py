from typing import Any, List, Optional
from pydantic import BaseModel, ConfigDict

class APIResponse(BaseModel):
    """
    Envelope around every occupancy endpoint.

    Attributes:
      data (Optional[Any]): The report of the endpoint: a ResultTable from /api/dist,
        a MeanReport from /api/mean, a ComparisonReport from /api/compare or a
        SimulationReport from /api/simulate. None on failure.
      errorMessage (Optional[str]): Message of the invalid-chain or route error, empty on success.
      success (bool): False when the chain, the arguments or the route were rejected.
      errors (List[str]): Class names of the raised errors, e.g. "RouteMismatchError".

    Sample JSON (response from /api/mean):
    {
        "data": {"n": 1, "mean": {"0": 0.8, "1": 0.4}, "variance": {"0": 0.16, "1": 0.24}, "meta": {}},
        "errorMessage": "",
        "success": true,
        "errors": []
    }
    """
    model_config = ConfigDict(extra="forbid")
    data: Optional[Any] = None
    errorMessage: Optional[str] = ""
    success: bool = True
    errors: List[str] = []
