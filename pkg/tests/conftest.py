from pathlib import Path

import pytest

from casecount import datasets

DATA = Path(__file__).parent / "data"

_criteria = {}


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def table1_path():
    return DATA / "table1.csv"


@pytest.fixture
def table1():
    return datasets.table1()


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if marker:
        number, title = marker
        ok = report.passed and _criteria.get(number, (None, True))[1]
        _criteria[number] = (title, ok)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
