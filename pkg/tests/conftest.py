import re


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome != "error":
                continue
            m = re.search(r"test_acceptance\.py::test_c(\d+)_(\w+)", rep.nodeid)
            if m:
                rows.append((int(m.group(1)), m.group(2), outcome))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, outcome in sorted(rows):
        terminalreporter.write_line(f"[{'PASS' if outcome == 'passed' else 'FAIL'}] criterion {num:>2}: {name}")
