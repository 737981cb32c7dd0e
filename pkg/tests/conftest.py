import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("pinned", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("pinned")

from selfsim.fixtures import BUILDERS, fixture_system, load_fixture  # noqa: E402


@pytest.fixture(scope="session")
def freyd():
    return fixture_system("freyd")


@pytest.fixture(scope="session")
def freyd_doc():
    return load_fixture("freyd")


@pytest.fixture(scope="session")
def discrete():
    return fixture_system("discrete-ab")


FIXTURE_NAMES = sorted(BUILDERS)
