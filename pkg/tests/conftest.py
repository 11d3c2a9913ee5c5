import pytest

from helpers import make_cex
from syncauto import gen_cerny


@pytest.fixture
def cex():
    return make_cex()


@pytest.fixture
def cerny4():
    return gen_cerny(4)
