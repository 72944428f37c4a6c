import pytest

_ACCEPTANCE = {}


@pytest.fixture
def acceptance(request):
    """Record a PASS/FAIL line for one acceptance criterion.

    Usage: ``acceptance(3, passed, "detail")``. The lines are printed in the
    terminal summary, one per criterion, in criterion order.
    """

    def record(number, passed, detail=""):
        _ACCEPTANCE[number] = (bool(passed), detail)
        print(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
