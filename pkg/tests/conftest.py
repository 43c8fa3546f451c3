"""
Shared fixtures: example networks and parameters, fixture paths and
isolated settings
"""

from pathlib import Path

import pytest

from morsebridge.config import reload_settings
from morsebridge.services.parameter_service import canonical_lift
from morsebridge.services.repro_service import shipped_example

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def app_settings(monkeypatch):
    """Settings read from a clean environment, single-threaded."""
    for name in ("MORSEBRIDGE_DEBUG", "MORSEBRIDGE_LOG_LEVEL", "MORSEBRIDGE_MAX_WORKERS"):
        monkeypatch.delenv(name, raising=False)
    yield reload_settings()
    reload_settings()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture
def self_example():
    return shipped_example("SELF")


@pytest.fixture
def toggle():
    return shipped_example("TOGGLE")


@pytest.fixture
def toggle_lift(toggle):
    return canonical_lift(toggle.network, toggle.parameter)


@pytest.fixture
def path3d():
    return shipped_example("PATH3D")


@pytest.fixture
def attr4d():
    return shipped_example("ATTR4D")
