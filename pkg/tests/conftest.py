import random
from collections import defaultdict
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dmrd.algebra import CyclicGroup, Series

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

SMALL = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def x_word(order, min_len=0, max_len=4):
    return st.lists(st.integers(0, order), min_size=min_len, max_size=max_len).map(tuple)


def y_word(order, max_weight=4):
    letter = st.tuples(st.integers(1, 3), st.integers(0, order - 1))

    def ok(w):
        return sum(n for n, _ in w) <= max_weight

    return st.lists(letter, max_size=max_weight).map(tuple).filter(ok)


@st.composite
def x_series(draw, order, truncation=4, constant=None, max_terms=6, min_weight=0):
    g = CyclicGroup(order)
    terms = draw(st.dictionaries(x_word(order, min_weight, truncation), SMALL, max_size=max_terms))
    if constant is not None:
        terms[()] = constant
    return Series(terms, group=g, truncation=truncation)


@st.composite
def y_series(draw, order, truncation=4, constant=None, max_terms=6):
    g = CyclicGroup(order)
    terms = draw(st.dictionaries(y_word(order, truncation), SMALL, max_size=max_terms))
    if constant is not None:
        terms[()] = constant
    return Series(terms, group=g, flavor="Y", truncation=truncation)


def random_x_series(rng, order, truncation, constant, terms=8, min_weight=1):
    out = {(): constant}
    for _ in range(terms):
        n = rng.randint(min_weight, truncation)
        w = tuple(rng.randint(0, order) for _ in range(n))
        out[w] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    if constant == 0:
        out.pop((), None)
    return Series(out, group=CyclicGroup(order), truncation=truncation)


@pytest.fixture
def rng():
    return random.Random(1234)


# -- acceptance summary ----------------------------------------------------

_results = defaultdict(list)
_titles = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    _titles[number] = title
    _results[number].append((item.name, call.excinfo is None))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        runs = _results[number]
        failed = [name for name, ok in runs if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {number} ({_titles[number]}): {status} [{len(runs) - len(failed)}/{len(runs)}]"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
