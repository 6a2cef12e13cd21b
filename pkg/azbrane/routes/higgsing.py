"""Higgsing API routes."""
from fastapi import APIRouter

from ..models import HiggsingRequest, SpectralCurveRequest, WeylCheckRequest
from ..services import commands

router = APIRouter()


@router.post("/solve")
def solve(request: HiggsingRequest):
    """
    Solve lambda B' + [A, B] = 0 for constant traceless A.
    Returns the fundamental solutions, the solution through bhat and its branch report.
    """
    return commands.higgsing(request)


@router.post("/spectral-curve")
def spectral_curve(request: SpectralCurveRequest):
    return commands.spectral_curve(request)


@router.post("/weyl-check")
def weyl_check(request: WeylCheckRequest):
    return commands.weyl_check(request)
