from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


@pytest.fixture
def problems_dir():
    return PROBLEMS
