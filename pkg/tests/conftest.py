import os
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def _seed() -> int:
    return int(os.environ.get("CURVELINK_SEED", "20260810"))


@pytest.fixture
def rng():
    """Deterministic RNG for property-test drivers; override with
    CURVELINK_SEED."""
    return random.Random(_seed())


@pytest.fixture(scope="session")
def tangent_cubic_doc():
    from curvelink import load_bundled_fixture

    return load_bundled_fixture("tangent_cubic.curve")


@pytest.fixture(scope="session")
def c7_doc():
    from curvelink import load_bundled_fixture

    return load_bundled_fixture("c7.curve")
