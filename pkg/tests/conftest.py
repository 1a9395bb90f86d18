from pathlib import Path

import pytest

from toric_cohom.core.algorithm import CohomologyEngine
from toric_cohom.core.fan import load_fan

FANS_DIR = Path(__file__).resolve().parent.parent / "fans"
FAN_NAMES = sorted(p.stem for p in FANS_DIR.glob("*.json"))
SMOOTH_FANS = ["hirzebruch_f1", "hirzebruch_f2", "p1xp1", "p1xp1xp1", "p2", "p3"]


def pytest_report_header(config):
    return f"fans: {FANS_DIR} ({', '.join(FAN_NAMES) or 'none'})"


@pytest.fixture(scope="session")
def fans_dir() -> Path:
    return FANS_DIR


@pytest.fixture(scope="session")
def load():
    cache = {}

    def _load(name: str):
        if name not in cache:
            cache[name] = load_fan(FANS_DIR / f"{name}.json")
        return cache[name]

    return _load


@pytest.fixture(scope="session")
def engine(load):
    cache = {}

    def _engine(name: str) -> CohomologyEngine:
        if name not in cache:
            cache[name] = CohomologyEngine(load(name))
        return cache[name]

    return _engine


@pytest.fixture(params=FAN_NAMES)
def fan_name(request) -> str:
    return request.param
