import pytest

from tropmoduli import WeightedMarkedGraph


@pytest.fixture
def theta():
    return WeightedMarkedGraph((0, 0), ((0, 1), (0, 1), (0, 1)), ())


@pytest.fixture
def dumbbell():
    return WeightedMarkedGraph((0, 0), ((0, 0), (0, 1), (1, 1)), ())


@pytest.fixture
def figure_eight():
    return WeightedMarkedGraph((0,), ((0, 0), (0, 0)), ())


@pytest.fixture
def split_marked_pair():
    # two vertices joined by one edge, marks 1,2 on one side and 3,4 on the other
    return WeightedMarkedGraph((0, 0), ((0, 1),), (0, 0, 1, 1))
