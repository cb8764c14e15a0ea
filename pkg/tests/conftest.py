import pytest

from gkcover import OracleBudget, build_dag

# 9-vertex working example: two near-trees joined at vertex 4.
FIG_EDGES = [(0, 4), (0, 5), (1, 4), (1, 6), (2, 7), (4, 7), (3, 8), (4, 8)]

# Values frozen from the brute-force oracles (tests/test_oracle.py
# recomputes them; everything else may rely on the constants).
FIG_ALPHA = {1: 5, 2: 8, 3: 9}
FIG_BETA = {1: 3, 2: 5, 3: 7}
FIG_MPC = 5
FIG_HEIGHT = 3


@pytest.fixture
def fig():
    return build_dag(9, FIG_EDGES)


@pytest.fixture
def budget():
    return OracleBudget()
