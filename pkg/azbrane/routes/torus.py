"""Torus A-brane API routes."""
from fastapi import APIRouter

from ..models import MorphismIn, TorusPairRequest, TorusSlagRequest
from ..services import commands

router = APIRouter()


@router.post("/class")
def total_class(request: MorphismIn):
    """Total surrogate class (r; p, q) of a morphism."""
    return commands.torus_class(request)


@router.post("/cycle")
def cycle(request: MorphismIn):
    return commands.torus_cycle(request)


@router.post("/amalgamate")
def amalgamate(request: TorusPairRequest):
    return commands.torus_amalgamate(request)


@router.post("/slag")
def slag(request: TorusSlagRequest):
    """Special Lagrangian representative of a surrogate class."""
    return commands.torus_slag(request)


@router.post("/cancel")
def cancel(request: TorusPairRequest):
    return commands.torus_cancel(request)


@router.post("/merge")
def merge(request: MorphismIn):
    return commands.torus_merge(request)


@router.post("/validate-profile")
def validate_profile(request: MorphismIn):
    """Check the alternating interval/junction profile of a morphism."""
    return commands.torus_validate_profile(request)
