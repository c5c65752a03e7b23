import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rho_forge.laurent import GaussianRational, LaurentMatrix, LaurentPoly, hermitianize

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def worked_a():
    return LaurentMatrix([[LaurentPoly({1: 1, 0: 1, -1: 1})]])


@pytest.fixture
def worked_b(worked_a):
    return hermitianize(worked_a)


small_ints = st.integers(-3, 3)


@st.composite
def gaussian_rationals(draw, complex_coeffs=True):
    re = draw(small_ints)
    im = draw(small_ints) if complex_coeffs else 0
    return GaussianRational(re, im)


@st.composite
def laurent_polys(draw, max_exp=2, complex_coeffs=True):
    exps = draw(st.lists(st.integers(-max_exp, max_exp), max_size=4, unique=True))
    return LaurentPoly({k: draw(gaussian_rationals(complex_coeffs)) for k in exps})


@st.composite
def laurent_matrices(draw, n=None, m=None, max_exp=2, complex_coeffs=True):
    n = n or draw(st.integers(1, 3))
    m = m or n
    return LaurentMatrix(
        [[draw(laurent_polys(max_exp, complex_coeffs)) for _ in range(m)] for _ in range(n)]
    )
