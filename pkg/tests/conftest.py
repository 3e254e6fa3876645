# criterion number -> (title, "PASS" | "FAIL", detail), filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, status, detail = ACCEPTANCE[n]
        line = f"{status} criterion {n}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
