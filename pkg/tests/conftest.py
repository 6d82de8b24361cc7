import time

import pytest

from sdkit.catalog import neighbor_catalog
from sdkit.classify import classify_lattice, classify_length
from sdkit.lattice import d_plus, direct_sum, integer_lattice

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    prev = _CRITERIA.get(n, (text, True))
    if rep.when == "call" or rep.failed:
        _CRITERIA[n] = (text, prev[1] and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        text, ok = _CRITERIA[n]
        terminalreporter.write_line("criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", text))


# expensive shared results, computed once per session


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


@pytest.fixture(scope="session")
def catalog12_timed():
    return _timed(neighbor_catalog, 12)


@pytest.fixture(scope="session")
def catalog12(catalog12_timed):
    return catalog12_timed[0]


@pytest.fixture(scope="session")
def length12_timed(catalog12_timed):
    rep, dt = _timed(classify_length, 12, catalog12_timed[0])
    # the catalog build is part of the length-12 pipeline
    return rep, dt + catalog12_timed[1]


@pytest.fixture(scope="session")
def length12(length12_timed):
    return length12_timed[0]


@pytest.fixture(scope="session")
def z4_report():
    return classify_lattice(integer_lattice(4), name="Z4")


@pytest.fixture(scope="session")
def d12():
    return d_plus(12)


@pytest.fixture(scope="session")
def row154_timed():
    lat = direct_sum(d_plus(12), d_plus(12), name="L_{24,154}")
    rep, dt = _timed(classify_lattice, lat, name="L_{24,154}")
    return lat, rep, dt


@pytest.fixture(scope="session")
def row154(row154_timed):
    return row154_timed[:2]
