"""Shared fixtures and path setup for the test suite."""

import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# Mirror the sys.path setup used by the CLI script
_APP = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(_APP / "src"))
sys.path.insert(0, str(_APP / "scripts"))

FIXTURES = Path(__file__).resolve().parent / "fixtures"

settings.register_profile(
    "desk", derandomize=True, max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("desk")


def pytest_addoption(parser):
    parser.addoption(
        "--seed", type=int, default=20240611,
        help="Seed for the randomized acceptance suites",
    )


@pytest.fixture
def rng(request) -> random.Random:
    return random.Random(request.config.getoption("--seed"))


# ---------------------------------------------------------------------------
# Clear cached env-derived defaults between tests so results don't leak
# ---------------------------------------------------------------------------

@pytest.fixture(autouse=True)
def _clear_budget_cache():
    from shared.budget import default_budget
    default_budget.cache_clear()
    yield
    default_budget.cache_clear()


# ---------------------------------------------------------------------------
# Running example over the walking arrow C0 -> C1
# ---------------------------------------------------------------------------

@pytest.fixture
def two():
    from shared.fincat import walking_arrow
    return walking_arrow()


@pytest.fixture
def running_example(two):
    """f: B -> A over C0 -u-> C1.

    A(C0) = {z, s}, A(C1) = {c} with c.u = s; B(C0) = {b}, B(C1) = {}, f(b) = s.
    """
    from shared.fincat import build_presheaf, build_psh_map

    A = build_presheaf(two, {"C0": ["s", "z"], "C1": ["c"]}, {"u": {"c": "s"}}, name="A")
    B = build_presheaf(two, {"C0": ["b"], "C1": []}, {"u": {}}, name="B")
    return build_psh_map(B, A, {"C0": {"b": "s"}, "C1": {}}, name="f")
