import pytest

CRITERIA: dict[str, list[tuple[str, bool, str]]] = {}


def record(criterion: str, name: str, ok: bool, detail: str = "") -> None:
    CRITERIA.setdefault(criterion, []).append((name, bool(ok), detail))


@pytest.fixture
def criterion():
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=lambda k: int(k.split()[0])):
        for name, ok, detail in CRITERIA[key]:
            status = "PASS" if ok else "FAIL"
            terminalreporter.write_line(f"[{status}] criterion {key}: {name} {detail}".rstrip())
