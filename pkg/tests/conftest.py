import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")

_AC: dict[int, list[bool]] = {}
_AC_NAMES: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "ac(n, title): acceptance criterion n")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("ac")
        if m:
            n = m.args[0]
            _AC.setdefault(n, [])
            if len(m.args) > 1:
                _AC_NAMES[n] = m.args[1]
            item.user_properties.append(("ac", n))


def pytest_runtest_logreport(report):
    n = dict(report.user_properties).get("ac")
    if n is None:
        return
    if report.when == "call" or report.failed:
        _AC[n].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _AC:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_AC):
        runs = _AC[n]
        if not runs:
            tr.write_line(f"AC {n}: not run  {_AC_NAMES.get(n, '')}")
            continue
        verdict = "PASS" if all(runs) else "FAIL"
        tr.write_line(f"AC {n}: {verdict}  {_AC_NAMES.get(n, '')} ({sum(runs)}/{len(runs)} checks)")


@pytest.fixture
def corpus():
    from graphfa import corpus as c
    return c
