from __future__ import annotations

from pathlib import Path

import pytest

from dbasis import read_table

DATA = Path(__file__).parent / "data"

CRITERIA = {
    1: "Table 1 end-to-end",
    2: "liver 10x22 golden run",
    3: "full vs small-space accumulator equality",
    4: "reverse search vs brute force and closure oracle",
    5: "small-space retained-memory property",
    6: "closure / Galois property suite",
    7: "soundness and minsup monotonicity",
}

_outcomes: dict[int, list[tuple[str, bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for mark in getattr(report, "criterion_marks", ()):
        _outcomes.setdefault(mark, []).append((report.nodeid, report.passed))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criterion_marks = tuple(m.args[0] for m in item.iter_markers("criterion"))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = _outcomes.get(n)
        if not results:
            continue
        ok = all(passed for _, passed in results)
        failed = [nid.split("::")[-1] for nid, passed in results if not passed]
        line = f"criterion {n} ({CRITERIA[n]}): {'PASS' if ok else 'FAIL'}"
        if failed:
            line += "  [failing: " + ", ".join(failed) + "]"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def table1_path() -> Path:
    return DATA / "table1.txt"


@pytest.fixture(scope="session")
def liver_path() -> Path:
    return DATA / "liver.txt"


@pytest.fixture(scope="session")
def table1(table1_path):
    return read_table(table1_path)


@pytest.fixture(scope="session")
def liver(liver_path):
    return read_table(liver_path)
