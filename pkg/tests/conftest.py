from pathlib import Path

import pytest
from hypothesis import strategies as st

from intervalbelief import Interval

DATA = Path(__file__).resolve().parent.parent / "data"

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)
corrs = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def intervals(draw, max_unc=1.0, min_unc=0.0):
    lo = draw(unit)
    width = draw(st.floats(min_value=min_unc, max_value=max_unc))
    hi = lo + width
    if hi > 1.0:
        lo, hi = max(0.0, 1.0 - width), 1.0
    return Interval(lo, hi)


def random_interval(rng, max_unc=1.0):
    a, b = sorted((rng.random(), rng.random()))
    if b - a > max_unc:
        b = a + max_unc * rng.random()
    return Interval(a, b)


@pytest.fixture
def data_dir():
    return DATA


# acceptance criteria register (name, passed, detail) here; printed after the run
ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
