import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=2000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

import pytest

_ACCEPTANCE: dict[int, dict[str, tuple[bool, str]]] = {}


@pytest.fixture
def criterion():
    """Record named sub-results for an acceptance criterion."""

    def record(number: int, part: str, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE.setdefault(number, {})[part] = (bool(ok), detail)
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        parts = _ACCEPTANCE[n]
        ok = all(v for v, _ in parts.values())
        bad = [f"{k}: {d}" if d else k for k, (v, d) in parts.items() if not v]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}"
        if bad:
            line += "  (" + "; ".join(bad) + ")"
        terminalreporter.write_line(line)
