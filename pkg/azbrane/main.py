"""Main FastAPI application."""
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .config import APP_NAME, APP_VERSION
from .errors import AzbraneError, DomainError, MalformedInput
from .routes import higgsing, kahler, orbits, point, scenarios, torus
from .utils.logger import get_logger

logger = get_logger(__name__)

# Create FastAPI app
app = FastAPI(
    title=APP_NAME,
    description="Exact computations on Azumaya points, orbit posets, Higgsing and torus A-branes",
    version=APP_VERSION,
)


@app.exception_handler(AzbraneError)
async def azbrane_error_handler(request: Request, exc: AzbraneError):
    logger.warning("%s %s: %s", request.url.path, exc.code, exc.detail)
    return JSONResponse(status_code=exc.status_code, content=exc.to_payload())


@app.exception_handler(RequestValidationError)
async def validation_error_handler(request: Request, exc: RequestValidationError):
    detail = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
    payload = MalformedInput(f"invalid payload: {detail}").to_payload()
    return JSONResponse(status_code=MalformedInput.status_code, content=payload)


@app.exception_handler(ArithmeticError)
async def arithmetic_error_handler(request: Request, exc: ArithmeticError):
    logger.error("%s failed: %s", request.url.path, exc)
    return JSONResponse(status_code=DomainError.status_code, content=DomainError(str(exc)).to_payload())


# Include API routers
app.include_router(point.router, prefix="/api/point", tags=["point"])
app.include_router(orbits.router, prefix="/api/orbits", tags=["orbits"])
app.include_router(higgsing.router, prefix="/api/higgsing", tags=["higgsing"])
app.include_router(torus.router, prefix="/api/torus", tags=["torus"])
app.include_router(kahler.router, prefix="/api/kahler", tags=["kahler"])
app.include_router(scenarios.router, prefix="/api/scenarios", tags=["scenarios"])


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {
        "status": "healthy",
        "app": APP_NAME,
        "version": APP_VERSION,
    }
