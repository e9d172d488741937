import math

import pytest

from atcert.generators import from_coordinates

_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, text): acceptance criterion with a summary line")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, text = marker.args
        _acceptance.append((number, text, report.outcome == "passed"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    merged = {}
    for number, text, ok in _acceptance:
        merged[number] = (text, merged.get(number, (text, True))[1] and ok)
    terminalreporter.section("acceptance criteria")
    for number, (text, ok) in sorted(merged.items()):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")


def polygon(n, start=-90.0):
    return {f"v{i + 1}": (math.cos(math.radians(start + 360 * i / n)), math.sin(math.radians(start + 360 * i / n))) for i in range(n)}


def cycle_edges(n):
    return [(f"v{i}", f"v{i + 1}") for i in range(1, n)] + [(f"v{n}", "v1")]


@pytest.fixture
def c4_chord():
    return from_coordinates(polygon(4), cycle_edges(4) + [("v1", "v3")])


@pytest.fixture
def bowtie():
    """Two triangles sharing v2; the outer walk passes v2 twice."""
    coords = {"v1": (-2, -1), "v2": (0, 0), "v3": (2, -1), "v4": (2, 1), "v5": (-2, 1)}
    edges = [("v1", "v2"), ("v2", "v5"), ("v5", "v1"), ("v2", "v3"), ("v3", "v4"), ("v4", "v2")]
    return from_coordinates(coords, edges)
