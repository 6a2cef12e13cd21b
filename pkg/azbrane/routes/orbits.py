"""Orbit poset API routes."""
from fastapi import APIRouter

from ..models import MatrixRequest, OrbitCompareRequest, OrbitExtremesRequest
from ..services import commands

router = APIRouter()


@router.post("/jordan")
def jordan(request: MatrixRequest):
    """Jordan data and filtration ranks of a single matrix."""
    return commands.jordan(request)


@router.post("/compare")
def compare(request: OrbitCompareRequest):
    return commands.orbit_compare(request)


@router.post("/extremes")
def extremes(request: OrbitExtremesRequest):
    """Maximal and minimal orbits over a support-length datum."""
    return commands.orbit_extremes(request)
