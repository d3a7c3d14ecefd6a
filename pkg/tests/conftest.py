from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from liekv.free_algebra import AssocSeries
from liekv.free_lie import LieSeries, lyndon_basis
from liekv.kv_solution import f0_g0

settings.register_profile("liekv", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("liekv")

small_fractions = st.builds(
    Fraction, st.integers(-6, 6).filter(bool), st.integers(1, 4)
)


def lie_series(max_degree: int, min_degree: int = 1, max_terms: int = 4):
    keys = [w for n in range(min_degree, max_degree + 1) for w in lyndon_basis(n)]
    return st.dictionaries(st.sampled_from(keys), small_fractions, max_size=max_terms).map(
        lambda d: LieSeries(d, max_degree)
    )


def assoc_series(max_degree: int, alphabet: str = "XY", constant: bool = True, max_terms: int = 4):
    lengths = range(0 if constant else 1, max_degree + 1)
    word = st.sampled_from(list(lengths)).flatmap(lambda n: st.text(alphabet=alphabet, min_size=n, max_size=n))
    return st.dictionaries(word, small_fractions, max_size=max_terms).map(
        lambda d: AssocSeries(d, max_degree, alphabet)
    )


@pytest.fixture(scope="session")
def kv_pair():
    """``(F0, G0)`` through degree 10, shared across modules."""
    return f0_g0(10)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
