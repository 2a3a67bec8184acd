"""Shared pytest hooks.

Acceptance checks register outcomes in ``ACCEPTANCE``; the terminal summary
prints one PASS/FAIL line per criterion so the verdict is visible even
without ``-s``.
"""

ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}

TITLES = {
    1: "golden expansions",
    2: "table rows p=5,7 and desk profile",
    3: "pre-period statistics",
    4: "approximation table p=5",
    5: "property suites",
    6: "real continued fraction comparison",
    7: "sign predictor report",
}


def record(criterion: int, label: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(criterion, []).append((label, ok, detail))


def acceptance_lines() -> list[str]:
    lines = []
    for crit in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[crit]
        bad = [c for c in checks if not c[1]]
        verdict = "FAIL" if bad else "PASS"
        line = f"{verdict} criterion {crit} ({TITLES.get(crit, '')}): {len(checks) - len(bad)}/{len(checks)} checks"
        if bad:
            line += "; failing: " + "; ".join(f"{lab} [{det}]" for lab, _, det in bad)
        lines.append(line)
    return lines


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_lines():
        terminalreporter.write_line(line)
