import pytest

from .factories import make_contract


@pytest.fixture
def contract():
    return make_contract()
