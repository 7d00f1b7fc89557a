import random

import pytest
from hypothesis import strategies as st

from massey_torus.polyalg import Matrix
from massey_torus.random_instances import random_rational

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@pytest.fixture
def rng():
    return random.Random(12345)


def random_matrix(rng, n, m=None, bound=5):
    m = n if m is None else m
    return Matrix([[random_rational(rng, bound) for _ in range(m)] for _ in range(n)], shape=(n, m))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
