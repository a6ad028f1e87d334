"""
API Routes - Combines all route modules into single router.
"""

from fastapi import APIRouter

from app.api.routes.scenario_routes import router as scenario_router

# Main API router
api_router = APIRouter()

# Include all sub-routers
api_router.include_router(scenario_router)
