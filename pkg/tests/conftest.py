import os
import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from arithrank.ideal import minimalize

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

CACHE = Path(os.environ.get("ARITHRANK_TEST_CACHE", Path(__file__).resolve().parents[1] / ".cache"))


def random_ideal(rng: random.Random, mu_max: int = 5, nvars: int = 8, max_deg: int = 4):
    names = [f"x{k}" for k in range(1, nvars + 1)]
    while True:
        gens = []
        for _ in range(rng.randint(1, mu_max)):
            gens.append(rng.sample(names, rng.randint(1, min(max_deg, nvars))))
        I = minimalize(gens)
        if I.mu >= 1:
            return I


@st.composite
def ideals(draw, mu_max=5, nvars=8, max_deg=4):
    names = [f"x{k}" for k in range(1, nvars + 1)]
    n = draw(st.integers(1, mu_max))
    gens = [
        draw(st.lists(st.sampled_from(names), min_size=1, max_size=max_deg, unique=True))
        for _ in range(n)
    ]
    return minimalize(gens)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def cache_dir():
    CACHE.mkdir(parents=True, exist_ok=True)
    return CACHE


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def report(request):
    """Record one pass/fail line per acceptance criterion for the terminal summary."""

    def add(criterion: str, ok: bool, detail: str) -> None:
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
        request.config.acceptance_lines.append(line)
        print(line)

    return add


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
