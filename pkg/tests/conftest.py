import pytest

_LINES: dict[int, str] = {}


class CriterionRecorder:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.detail = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        line = f"criterion {self.number:>2} {status}  {self.title}"
        if self.detail:
            line += f"  ({self.detail})"
        if exc_type is not None and exc is not None:
            line += f"  [{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}]"
        _LINES[self.number] = line
        print(line)
        return False


@pytest.fixture
def criterion():
    return CriterionRecorder


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_LINES):
        terminalreporter.write_line(_LINES[n])
