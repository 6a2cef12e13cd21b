"""Kahler form API routes."""
from fastapi import APIRouter

from ..models import KahlerPullbackRequest, KahlerTraceRequest
from ..services import commands

router = APIRouter()


@router.post("/trace")
def trace(request: KahlerTraceRequest):
    return commands.kahler_trace(request)


@router.post("/pullback")
def pullback(request: KahlerPullbackRequest):
    """Pull back a classical form, or the differential of a function, along phi."""
    return commands.kahler_pullback(request)
