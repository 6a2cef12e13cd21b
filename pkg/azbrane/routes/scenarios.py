"""Scenario API routes."""
from fastapi import APIRouter

from ..services import scenarios

router = APIRouter()


@router.get("")
def list_scenarios():
    return [{"name": s.name, "command": s.command} for s in scenarios.load_corpus()]


@router.post("/{name}/run")
def run_scenario(name: str):
    """Run one bundled scenario and compare against its expected output."""
    return scenarios.run_scenario(scenarios.find(name)).to_json()


@router.post("/run-all")
def run_all():
    results = scenarios.run_all()
    return {
        "passed": sum(r.passed for r in results),
        "failed": [r.name for r in results if not r.passed],
    }
