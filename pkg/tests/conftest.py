from __future__ import annotations

import random

import pytest

DEFAULT_SEED = 20260819


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="base seed for the randomized property suites",
    )


@pytest.fixture(scope="session")
def base_seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(base_seed, request) -> random.Random:
    # Stable per-test stream: changing one test never reshuffles another.
    return random.Random(f"{base_seed}:{request.node.name}")
