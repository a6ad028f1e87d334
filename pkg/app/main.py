"""
gfshock - HTTP Application

FastAPI front end over the same scenario service the CLI uses:
- **Presets**: documented scenario documents for every system
- **Validation**: config uploads checked with every violation listed
- **Runs**: batch runs writing snapshots, a manifest and a plot script

Run: uvicorn app.main:app --reload
"""

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app import __version__
from app.api.routes import api_router
from app.core.config import get_settings
from app.core.logging_config import configure_logging
from app.schemas.schemas import HealthResponse

settings = get_settings()
configure_logging(settings)

# Create FastAPI app
app = FastAPI(
    title="gfshock",
    description="""
    Godunov schemes for nonconservative shock systems, batch runs only.

    ## Systems
    - **burgers**, **k2**: single-stage Godunov runs
    - **pressureless**, **euler_split**: delta shocks and the pressure/density splitting
    - **elasto_split**: elastoplastic impact with precursor and merged waves
    - **hurricane**: semi-Lagrangian wind field with scheduled coefficients
    """,
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc"
)

# CORS middleware (allow all for development)
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include API routes
app.include_router(api_router, prefix="/api")


@app.get("/health", response_model=HealthResponse, tags=["Health"])
async def health_check():
    """Liveness check."""
    return HealthResponse(version=__version__)
