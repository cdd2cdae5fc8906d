import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from bielliptic.exact import Formal, QuadElement, Quadratic  # noqa: E402
from bielliptic.lattice import hnf_canonicalize  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}

D_VALUES = [1, 2, 3, 5, 7]


def small_rationals(max_num=6, max_den=4):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def elements(ambient):
    return st.builds(lambda a, b: QuadElement(a, b, ambient), small_rationals(), small_rationals())


def positive_rationals(max_num=6, max_den=4):
    return st.builds(Fraction, st.integers(1, max_num), st.integers(1, max_den))


@st.composite
def quad_lattices(draw, d=None, max_entry=4):
    """A random rank-2 lattice in Q(sqrt(-d)); every lattice has a basis a, b + c*w."""
    if d is None:
        d = draw(st.sampled_from(D_VALUES))
    a = draw(positive_rationals(max_entry, 2))
    c = draw(positive_rationals(max_entry, 2))
    b = draw(small_rationals(max_entry, 2))
    return hnf_canonicalize([(a, 0), (b, c)], Quadratic(d))


@st.composite
def formal_lattices(draw):
    a = draw(positive_rationals(4, 3))
    c = draw(positive_rationals(4, 3))
    b = draw(small_rationals(4, 3))
    return hnf_canonicalize([(a, 0), (b, c)], Formal("t0"))


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        status, title = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
