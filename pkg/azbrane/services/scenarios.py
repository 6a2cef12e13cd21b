"""Named scenarios: bundled inputs with their expected outputs."""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional

from pydantic import TypeAdapter, ValidationError

from ..config import SCENARIO_CORPUS, SCENARIO_WORKERS
from ..errors import AzbraneError, MalformedInput, UnknownScenario
from ..models import ScenarioIn
from ..utils.logger import get_logger
from . import commands

logger = get_logger(__name__)

_corpus_adapter = TypeAdapter(List[ScenarioIn])


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    passed: bool
    actual: Any
    expected: Any

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "actual": self.actual, "expected": self.expected}


def load_corpus(path: Optional[Path] = None) -> List[ScenarioIn]:
    path = Path(path or SCENARIO_CORPUS)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise MalformedInput(f"cannot read scenario corpus {path}: {e}")
    try:
        return _corpus_adapter.validate_python(raw)
    except ValidationError as e:
        raise MalformedInput(f"invalid scenario corpus: {e.errors(include_url=False)}")


def find(name: str, path: Optional[Path] = None) -> ScenarioIn:
    for scenario in load_corpus(path):
        if scenario.name == name:
            return scenario
    raise UnknownScenario(f"no scenario named {name!r}")


def run_scenario(scenario: ScenarioIn) -> ScenarioResult:
    try:
        actual = commands.execute(scenario.command, scenario.inputs)
    except AzbraneError as e:
        actual = e.to_payload()
    # compare through JSON so tuples and lists agree
    actual = json.loads(json.dumps(actual))
    expected = scenario.expected
    if expected is None:
        logger.warning("scenario %s has no expected output", scenario.name)
        passed = False
    elif isinstance(expected, dict) and set(expected) == {"error"}:
        # error scenarios pin the code, not the message
        passed = actual.get("error") == expected["error"]
    else:
        passed = actual == expected
    if not passed:
        logger.warning("scenario %s failed", scenario.name)
    return ScenarioResult(scenario.name, passed, actual, scenario.expected)


def run_all(path: Optional[Path] = None, workers: int = SCENARIO_WORKERS) -> List[ScenarioResult]:
    """Run every scenario; results come back in corpus order."""
    corpus = load_corpus(path)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_scenario, corpus))
