from fastapi import APIRouter, Depends, Query
from app.dependencies import get_route_service
from app.exceptions import OccupancyError
from app.schemas.chain import ChainFile
from app.schemas.response import APIResponse
from app.services.routes import RouteService
import logging

router = APIRouter(tags=["Mean"])
logger = logging.getLogger(__name__)

@router.post("/mean", response_model=APIResponse)
async def expected_occupancy(
    chain: ChainFile,
    n: int = Query(..., ge=1, description="Horizon (number of steps)"),
    service: RouteService = Depends(get_route_service),
):
    """
    Expected occupancy e(n) and variance of N_n for every starting state.

    Returns:
      - APIResponse containing a MeanReport.
    """
    try:
        report = service.mean(chain, n)
        return APIResponse(data=report, success=True, errorMessage="", errors=[])
    except OccupancyError:
        raise
    except Exception as e:
        logger.error(f"expected_occupancy error: {str(e)}", exc_info=True)
        return APIResponse(data=None, success=False, errorMessage=str(e), errors=[str(e)])
