from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from app import __version__
from app.config import settings
from app.exceptions import OccupancyError, RouteError
from app.routers import dist, mean, compare, simulate
from app.schemas.response import APIResponse
import logging
import contextlib

logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[logging.StreamHandler()]
)
logger = logging.getLogger(__name__)

@contextlib.asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info("Starting up application")
    yield
    logger.info("Shutting down application")

app = FastAPI(title="Occupancy API", version=__version__, lifespan=lifespan)

@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    logger.error(f"Unhandled exception: {str(exc)}", exc_info=True)
    return JSONResponse(
        status_code=500,
        content={
            "status": "error",
            "message": "An unexpected error occurred",
            "details": str(exc)
        }
    )

@app.exception_handler(OccupancyError)
async def occupancy_exception_handler(request: Request, exc: OccupancyError):
    """
    Invalid chains and arguments map to 422, routes that cannot serve the chain to 409.
    """
    status_code = 409 if isinstance(exc, RouteError) else 422
    logger.error(f"Occupancy error: {str(exc)}", exc_info=True)
    body = APIResponse(data=None, success=False, errorMessage=str(exc), errors=[type(exc).__name__])
    return JSONResponse(status_code=status_code, content=body.model_dump())

app.include_router(dist.router, prefix="/api")
app.include_router(mean.router, prefix="/api")
app.include_router(compare.router, prefix="/api")
app.include_router(simulate.router, prefix="/api")
