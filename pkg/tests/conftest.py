import os
from collections import defaultdict

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> list of (ok, detail), filled by the acceptance tests
_CRITERIA: dict[int, list[tuple[bool, str]]] = defaultdict(list)


@pytest.fixture
def criterion():
    def record(number: int, ok: bool, detail: str) -> None:
        _CRITERIA[number].append((bool(ok), detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        parts = _CRITERIA[number]
        ok = all(p for p, _ in parts)
        failed = [d for p, d in parts if not p]
        if ok:
            detail = parts[0][1] if len(parts) == 1 else f"{len(parts)} checks passed"
        else:
            detail = "; ".join(failed)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
