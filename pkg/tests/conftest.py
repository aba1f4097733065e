from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import corpusgen  # noqa: E402
from linkless.g6 import encode_g6, iter_graphs  # noqa: E402
from linkless.minors import generate_petersen_family  # noqa: E402
from linkless.search import default_sieve  # noqa: E402

CACHE_DIR = os.path.join(os.path.dirname(__file__), "_cache")
DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def _cached_g6(name: str, builder):
    """Build-once graph lists cached as graph6 files across test runs."""
    os.makedirs(CACHE_DIR, exist_ok=True)
    path = os.path.join(CACHE_DIR, name)
    if os.path.exists(path):
        with open(path, "rb") as f:
            return list(iter_graphs(f))
    graphs = builder()
    tmp = path + ".tmp"
    with open(tmp, "wb") as f:
        for g in graphs:
            f.write(encode_g6(g) + b"\n")
    os.replace(tmp, path)
    return graphs


@pytest.fixture(scope="session")
def family():
    return generate_petersen_family()


@pytest.fixture(scope="session")
def atlas():
    return corpusgen.atlas_graphs()


@pytest.fixture(scope="session")
def graphs8():
    return _cached_g6("all_order8.g6", corpusgen.all_graphs_of_order_8)


@pytest.fixture(scope="session")
def triangulations_by_order():
    cache = {}

    def get(n: int):
        if n not in cache:
            cache[n] = _cached_g6(
                f"triangulations{n}.g6", lambda: corpusgen.triangulations(n)
            )
        return cache[n]

    return get


@pytest.fixture(scope="session")
def census_source():
    def get(n: int):
        sieve = default_sieve(n)
        if n <= 8:
            return corpusgen.census_source(n, sieve)
        return _cached_g6(
            f"census_source{n}.g6", lambda: corpusgen.census_source(n, sieve)
        )

    return get
