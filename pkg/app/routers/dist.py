from fastapi import APIRouter, Depends, Query
from app.dependencies import get_route_service
from app.exceptions import OccupancyError
from app.schemas.chain import ChainFile
from app.schemas.response import APIResponse
from app.services.routes import RouteService
import logging

router = APIRouter(tags=["Distribution"])
logger = logging.getLogger(__name__)

@router.post("/dist", response_model=APIResponse)
async def occupancy_table(
    chain: ChainFile,
    n: int = Query(..., ge=0, description="Horizon (number of steps)"),
    route: str = Query("dp", description="Route: 'dp', 'gf', 'vw', 'closed' or 'enum'"),
    all_layers: bool = Query(False, description="Also return every horizon 0..n (dp only)"),
    service: RouteService = Depends(get_route_service),
):
    """
    Compute the full occupancy table g_i(n, k) with one route.

    Parameters:
      - chain: Chain file body.
      - n: Horizon.
      - route: Compute route.
      - all_layers: Whether to include the tables of all horizons.

    Returns:
      - APIResponse containing a ResultTable.
    """
    try:
        result = service.dist(chain, n, route=route, all_layers=all_layers)
        return APIResponse(data=result, success=True, errorMessage="", errors=[])
    except OccupancyError:
        raise
    except Exception as e:
        logger.error(f"occupancy_table error: {str(e)}", exc_info=True)
        return APIResponse(data=None, success=False, errorMessage=str(e), errors=[str(e)])
