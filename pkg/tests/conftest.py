import pytest

from unitalpack.coloring import find_good_coloring, sample_coloring
from unitalpack.pattern import build_pattern
from unitalpack.pencil import build_pencil

# Shared fixture parameters; tests rely on these exact values for frozen
# expected results, so change them only together with the tests.
Q3_COLORING_SEED = 7
Q5_BUILD_SEED = 1


@pytest.fixture(scope="session")
def pencil3():
    return build_pencil(3, 1)


@pytest.fixture(scope="session")
def pencil5():
    return build_pencil(5)


@pytest.fixture(scope="session")
def pattern3(pencil3):
    """q=3, |Lambda|=1, c=1 quality pattern (one graph, 27 cliques of 9)."""
    coloring = find_good_coloring(pencil3, 1, Q3_COLORING_SEED)
    return build_pattern(pencil3, coloring)[0]


@pytest.fixture(scope="session")
def pattern5(pencil5):
    """q=5, |Lambda|=2, c=2 relaxed pattern (4 graphs on 400 vertices)."""
    coloring = sample_coloring(pencil5, 2, Q5_BUILD_SEED)
    return build_pattern(pencil5, coloring, relaxed=True)
