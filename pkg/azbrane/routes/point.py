"""Azumaya point API routes."""
from fastapi import APIRouter

from ..models import ConjugateRequest, MatrixRequest, PointRequest, RepCheckRequest
from ..services import commands

router = APIRouter()


@router.post("/rep-check")
def rep_check(request: RepCheckRequest):
    """Check that a matrix tuple commutes and satisfies the relators."""
    return commands.rep_check(request)


@router.post("/image")
def image(request: PointRequest):
    """
    Image ideal of the point.
    Univariate points also get the minimal-polynomial generator.
    """
    return commands.image(request)


@router.post("/support")
def support(request: PointRequest):
    return commands.support(request)


@router.post("/pushforward")
def pushforward(request: PointRequest):
    """Push-forward module: per point, length, filtration ranks and partition."""
    return commands.pushforward(request)


@router.post("/surrogate")
def surrogate(request: PointRequest):
    return commands.surrogate(request)


@router.post("/hilbert-chow")
def hilbert_chow(request: MatrixRequest):
    """Characteristic polynomial and, when it splits, its roots."""
    return commands.hilbert_chow(request)


@router.post("/conjugate")
def conjugate(request: ConjugateRequest):
    return commands.conjugate(request)
