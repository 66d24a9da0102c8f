from __future__ import annotations

import itertools

import pytest

from socle.store import Store


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): acceptance criterion with a printed verdict"
    )


_acceptance_results: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    name = _acceptance_results.pop(("pending", report.nodeid), None)
    if name is not None:
        _acceptance_results[name] = "PASS" if report.passed else "FAIL"


def pytest_runtest_setup(item):
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        _acceptance_results[("pending", item.nodeid)] = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    results = {k: v for k, v in _acceptance_results.items() if isinstance(k, str)}
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, verdict in results.items():
        terminalreporter.write_line(f"[{verdict}] {name}")


@pytest.fixture
def ticking_clock():
    counter = itertools.count(1_700_000_000_000, 1000)
    return lambda: next(counter)


@pytest.fixture
def store(ticking_clock):
    with Store(clock=ticking_clock) as s:
        yield s


@pytest.fixture
def moderator(store):
    user = store.register("curator", "long-enough-pass")
    store.make_moderator("curator")
    return store.get_user(user.id)
