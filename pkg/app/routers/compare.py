from typing import Optional
from fastapi import APIRouter, Depends, Query
from app.dependencies import get_route_service
from app.exceptions import OccupancyError
from app.schemas.chain import ChainFile
from app.schemas.response import APIResponse
from app.services.routes import RouteService
import logging

router = APIRouter(tags=["Compare"])
logger = logging.getLogger(__name__)

@router.post("/compare", response_model=APIResponse)
async def compare_routes(
    chain: ChainFile,
    n: int = Query(..., ge=0, description="Horizon (number of steps)"),
    routes: str = Query("dp,gf", description="Comma-separated routes, at least two"),
    tol: Optional[float] = Query(None, description="Pass threshold"),
    service: RouteService = Depends(get_route_service),
):
    """
    Cross-check several routes on the same chain.

    A comparison outside tolerance is still a successful request; check
    `data.passed`.

    Returns:
      - APIResponse containing a ComparisonReport.
    """
    try:
        report = service.compare(chain, n, [r.strip() for r in routes.split(",") if r.strip()], tolerance=tol)
        return APIResponse(data=report, success=True, errorMessage="", errors=[])
    except OccupancyError:
        raise
    except Exception as e:
        logger.error(f"compare_routes error: {str(e)}", exc_info=True)
        return APIResponse(data=None, success=False, errorMessage=str(e), errors=[str(e)])
