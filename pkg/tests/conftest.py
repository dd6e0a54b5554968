import pytest

# criterion number -> (title, passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def record_criterion():
    def record(num: int, title: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE[num] = (title, bool(passed), detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[num]
        tail = f"  [{detail}]" if detail else ""
        terminalreporter.write_line(f"criterion {num}: {'PASS' if passed else 'FAIL'}  {title}{tail}")
