import pytest

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


class _Criterion:
    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.notes: list[str] = []

    def note(self, msg: str) -> None:
        self.notes.append(msg)


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for the acceptance criterion under test."""
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    c = _Criterion(number, title)
    yield c
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    detail = "; ".join(c.notes)
    _ACCEPTANCE[number] = (status, f"{title}" + (f" ({detail})" if detail else ""))
    print(f"criterion {number}: {status} {title}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, text = _ACCEPTANCE[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {text}")
