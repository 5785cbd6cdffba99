import pytest

_CRITERIA: dict[str, list] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: criterion(label, detail), set after the asserts pass."""
    name = request.node.name
    _CRITERIA[name] = ["FAIL", name, ""]

    def record(label, detail=""):
        _CRITERIA[name] = ["PASS", label, detail]

    yield record


def pytest_runtest_makereport(item, call):
    if call.when == "call" and call.excinfo is not None and item.name in _CRITERIA:
        _CRITERIA[item.name][0] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for status, label, detail in _CRITERIA.values():
        terminalreporter.write_line(f"{status}  {label}  {detail}".rstrip())
