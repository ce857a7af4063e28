from app.config import settings
from app.services.routes import RouteService

def get_route_service() -> RouteService:
    """
    Dependency function that provides a RouteService bound to the application settings.
    """
    return RouteService(settings)
