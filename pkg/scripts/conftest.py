"""Shared fixtures: every test starts from default settings with no output override."""

import sys

import pytest

sys.path.insert(0, '.')

from app.core.config import get_settings  # noqa: E402

BURGERS_CONFIG = """\
[scenario]
system = burgers
end_time = 0.2
cfl = 0.4

[grid]
n = 50
h = 0.02

[initial]
interfaces = 0.3
state0 = u=1
state1 = u=0

[output]
times = 0.1, 0.2
prefix = shock
"""


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    monkeypatch.delenv("GFSHOCK_OUT", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def burgers_config():
    return BURGERS_CONFIG
