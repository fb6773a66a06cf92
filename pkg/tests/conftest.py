import pytest

from freegamma import GFGParams


@pytest.fixture
def std_params():
    """A small spread of parameter triples covering both density branches."""
    return [
        GFGParams(1.0, 1.0, 1.0),
        GFGParams(1.0, 1.0, 2.0),
        GFGParams(2.0, 0.5, 1.0),
        GFGParams(0.5, 2.0, 3.0),
        GFGParams(3.0, 1.5, 1.25),
    ]
