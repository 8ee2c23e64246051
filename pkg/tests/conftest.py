import pytest

from podolsky.interferometry import PRESETS


@pytest.fixture
def h_plus():
    return PRESETS["H+"]


@pytest.fixture
def cs_plus():
    return PRESETS["Cs+"]


@pytest.fixture
def geom(h_plus):
    return h_plus.geometry
