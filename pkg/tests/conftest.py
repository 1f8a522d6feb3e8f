from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# lines appended by tests/test_acceptance.py, echoed in the terminal summary
ACCEPTANCE_LINES = []


def rationals(lo=-4, hi=4, max_den=12):
    return st.builds(lambda n, d: Fraction(n, d),
                     st.integers(lo * max_den, hi * max_den), st.integers(1, max_den)) \
        .filter(lambda x: lo <= x <= hi)


def rvec(n, **kw):
    return st.tuples(*[rationals(**kw) for _ in range(n)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
