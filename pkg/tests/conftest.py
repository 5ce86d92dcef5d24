import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE: dict[int, str] = {}


def record(k: int, ok: bool, detail: str) -> bool:
    """Store the PASS/FAIL line of acceptance criterion ``k`` and print it."""
    line = f"{'PASS' if ok else 'FAIL'}  criterion {k:2d}: {detail}"
    ACCEPTANCE[k] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
