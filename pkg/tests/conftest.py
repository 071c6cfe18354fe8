import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

# exact Groebner computations are slow; keep example counts small
settings.register_profile("ci", max_examples=10, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=4, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))

FIXTURES = ROOT / "fixtures"
os.environ.setdefault("KAEHLER_FIXTURES_DIR", str(FIXTURES))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: reproduces a large worked example (deselect with -m 'not slow')")


@pytest.fixture
def fixture_path():
    def path(rel: str) -> Path:
        return FIXTURES / rel

    return path


@pytest.fixture(scope="session")
def compiled():
    """Compiled fixture schemes, shared across the session."""
    from scheme_parser import load_scheme_file
    from schemes import compile_scheme

    cache = {}

    def get(rel: str):
        if rel not in cache:
            cache[rel] = compile_scheme(load_scheme_file(FIXTURES / rel))
        return cache[rel]

    return get
