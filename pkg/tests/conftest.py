from fractions import Fraction
from pathlib import Path

import hypothesis.strategies as st
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "golden"


def positive_rationals(max_num=50, max_den=50):
    return st.builds(Fraction, st.integers(1, max_num), st.integers(1, max_den))


def product_one_triples(max_num=20, max_den=20):
    """(x, y, 1/(xy)) with small positive rationals."""
    r = positive_rationals(max_num, max_den)
    return st.tuples(r, r).map(lambda t: (t[0], t[1], 1 / (t[0] * t[1])))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    RESULTS = mod.RESULTS
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k])
