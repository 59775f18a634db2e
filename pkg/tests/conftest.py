import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> "PASS ..." / "FAIL ..." line, filled by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record(capsys):
    def _record(n: int, ok: bool, detail: str) -> bool:
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE[n] = line
        with capsys.disabled():
            print(f"\n{line}")
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
