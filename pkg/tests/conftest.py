"""Shared test plumbing: acceptance criteria get one PASS/FAIL line each in
the terminal summary, whether or not output capturing is on."""

_ACCEPTANCE_LINES: list[tuple[int, str, bool]] = []


def record_criterion(num: int, description: str, ok: bool) -> None:
    _ACCEPTANCE_LINES.append((num, description, ok))
    assert ok, f"criterion {num} failed: {description}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num, description, ok in sorted(_ACCEPTANCE_LINES):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {num}: {description}")
