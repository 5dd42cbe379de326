import pytest

import toolkit


@pytest.fixture
def tiny_net():
    return toolkit.tiny_net()
