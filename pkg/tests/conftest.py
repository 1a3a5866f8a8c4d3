import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).with_name("fixtures")


@pytest.fixture(scope="session")
def oracle():
    return json.loads((FIXTURES / "oracle.json").read_text())


def cval(pair):
    return complex(float(pair[0]), float(pair[1]))


# criterion number -> list of (part, ok, detail), filled by test_acceptance
ACCEPTANCE = {}


def record(criterion, part, ok, detail):
    ACCEPTANCE.setdefault(criterion, []).append((part, bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[k]
        status = "PASS" if all(ok for _, ok, _ in parts) else "FAIL"
        detail = "; ".join(f"{p} {'ok' if ok else 'FAIL'} ({d})" for p, ok, d in parts)
        tr.write_line(f"criterion {k}: {status} | {detail}")
