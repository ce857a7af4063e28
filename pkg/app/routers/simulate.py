from typing import Optional
from fastapi import APIRouter, Depends, Query
from app.dependencies import get_route_service
from app.exceptions import OccupancyError
from app.schemas.chain import ChainFile
from app.schemas.response import APIResponse
from app.services.routes import RouteService
import logging

router = APIRouter(tags=["Simulate"])
logger = logging.getLogger(__name__)

@router.post("/simulate", response_model=APIResponse)
async def simulate_occupancy(
    chain: ChainFile,
    n: int = Query(..., ge=1, description="Horizon (number of steps)"),
    samples: Optional[int] = Query(None, ge=1, description="Number of trajectories"),
    seed: Optional[int] = Query(None, ge=0, description="Root seed"),
    start: str = Query("0", description="Start state, index or label"),
    service: RouteService = Depends(get_route_service),
):
    """
    Monte Carlo tally of N_n next to the DP reference.

    Returns:
      - APIResponse containing a SimulationReport.
    """
    try:
        report = service.simulate(chain, n, samples=samples, seed=seed, start=start)
        return APIResponse(data=report, success=True, errorMessage="", errors=[])
    except OccupancyError:
        raise
    except Exception as e:
        logger.error(f"simulate_occupancy error: {str(e)}", exc_info=True)
        return APIResponse(data=None, success=False, errorMessage=str(e), errors=[str(e)])
