import json
from pathlib import Path

import pytest

from sgmcal import _pykernels

FIXTURES = Path(__file__).parent / "fixtures"

try:
    from sgmcal import _ckernels
except ImportError:
    _ckernels = None

KERNEL_MODULES = [_pykernels] + ([_ckernels] if _ckernels is not None else [])


@pytest.fixture(scope="session")
def oracle():
    """Values frozen by tests/oracle/make_fixtures.py (60-digit mpmath)."""
    return json.loads((FIXTURES / "oracle.json").read_text())


@pytest.fixture(params=KERNEL_MODULES, ids=lambda m: m.BACKEND)
def kernels(request):
    return request.param


# One line per acceptance criterion, printed after the run.

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    passed = call.excinfo is None
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {number:>2}. {title}")
