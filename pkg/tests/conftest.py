import pytest

import builders


@pytest.fixture
def minimal_net():
    return builders.minimal_net()


@pytest.fixture
def small_master():
    return builders.small_master()
