from __future__ import annotations

import pytest

# criterion id -> short title, filled by the acceptance marker
_CRITERIA: dict[int, str] = {}
_OUTCOMES: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one of the numbered acceptance criteria")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            number, title = mark.args
            _CRITERIA[number] = title
            item.user_properties.append(("acceptance", number))


def pytest_runtest_logreport(report):
    for key, value in report.user_properties:
        if key != "acceptance":
            continue
        if report.when == "call" or report.outcome != "passed":
            _OUTCOMES.setdefault(value, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        outcomes = _OUTCOMES.get(number, [])
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"[{status}] {number:2d}. {_CRITERIA[number]}")


@pytest.fixture(scope="session")
def s10():
    from equiangular import build_fixture_S10

    return build_fixture_S10()
