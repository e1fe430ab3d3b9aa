from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from srgraph import StoichMatrix, parse_network, stoichiometric_matrix

# exhaustive checks on 5x5 inputs can take well over the default 200 ms per example
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

COUNTEREXAMPLE_TEXT = "D <-> A + B + C\nE <-> A + B + C\nF <-> A + B\n"

# Counterexample matrix with rows in alphabetical order A, B, C, D, E, F.
COUNTEREXAMPLE_ALPHA_ROWS = [
    [1, 1, 1],
    [1, 1, 1],
    [1, 1, 0],
    [-1, 0, 0],
    [0, -1, 0],
    [0, 0, -1],
]


def mixed_3x4(a=1, b=2, c=3, d=4, e=5, f=6, g=7, h=8, j=9):
    return StoichMatrix.from_rows([[-a, b, 0, c], [-d, 0, e, -f], [0, -g, h, j]])


def o_cycle_3x3(a=1, b=1, c=1, d=1, e=1, f=1):
    return StoichMatrix.from_rows([[a, b, 0], [-c, 0, d], [0, -e, f]])


def cancelling_3x3(a=1, b=2, c=3):
    return StoichMatrix.from_rows([[-a, b, 0], [-c, 0, b], [0, -c, a]])


@pytest.fixture
def counter_net():
    return parse_network(COUNTEREXAMPLE_TEXT)


@pytest.fixture
def counter_matrix(counter_net):
    return stoichiometric_matrix(counter_net)


entries = st.sampled_from([Fraction(x) for x in (-2, -1, 0, 0, 1, 2)])


@st.composite
def matrices(draw, max_rows=4, max_cols=4, min_rows=1, min_cols=1):
    n = draw(st.integers(min_rows, max_rows))
    m = draw(st.integers(min_cols, max_cols))
    return StoichMatrix(tuple(tuple(draw(entries) for _ in range(m)) for _ in range(n)))


@st.composite
def square_matrices(draw, max_size=4):
    k = draw(st.integers(1, max_size))
    return StoichMatrix(tuple(tuple(draw(entries) for _ in range(k)) for _ in range(k)))
