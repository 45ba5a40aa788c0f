import pytest

from splitbeam import SplitInstance


@pytest.fixture
def demo4() -> SplitInstance:
    """Four elements, family {a1,a2} and {a1,a3}: the worked example used
    throughout the golden tests."""
    return SplitInstance(4, (0b0011, 0b0101))
