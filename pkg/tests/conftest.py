import pytest

ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Record one criterion's outcome: ``acceptance(number, title, passed, detail)``."""
    results = request.config.stash.setdefault(ACCEPTANCE_KEY, {})

    def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
        results[number] = (title, passed, detail)
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}" + (f" ({detail})" if detail else "")
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(ACCEPTANCE_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, passed, detail = results[number]
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
