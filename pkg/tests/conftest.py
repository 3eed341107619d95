from pathlib import Path

import pytest

from planeforge.group import PermSet
from planeforge.perm import Permutation, parse_permutation

GOLDEN = Path(__file__).parent / "golden"


def read_table(name, degree=None):
    """Two-column golden table: list of (left, right) strings."""
    rows = []
    for line in (GOLDEN / name).read_text().splitlines():
        if line.strip():
            left, right = line.split("\t")
            rows.append((left.strip(), right.strip()))
    return rows


def table_permset(name, degree):
    return PermSet(Permutation(map(int, row.split())) for _, row in read_table(name))


@pytest.fixture
def golden():
    return GOLDEN


@pytest.fixture
def a4_table():
    return read_table("a4.tsv")


@pytest.fixture
def a4():
    return table_permset("a4.tsv", 4)


@pytest.fixture
def odd_coset():
    return table_permset("odd_coset4.tsv", 4)


@pytest.fixture
def metacyclic5():
    return table_permset("metacyclic5.tsv", 5)


def cyc(text, n):
    return parse_permutation(text, n)


# -------- acceptance summary: one pass/fail line per criterion

_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if marker:
        num, title = marker
        entry = _CRITERIA.setdefault(num, [title, True])
        entry[1] = entry[1] and report.outcome == "passed"


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, ok = _CRITERIA[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {title}")
