from __future__ import annotations

import os

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    # every run recomputes from scratch; caches are reused only within the session
    prev = os.environ.get("SKEINRT_CACHE_DIR")
    os.environ["SKEINRT_CACHE_DIR"] = str(tmp_path_factory.mktemp("skeinrt-cache"))
    yield
    if prev is None:
        os.environ.pop("SKEINRT_CACHE_DIR", None)
    else:
        os.environ["SKEINRT_CACHE_DIR"] = prev


@pytest.fixture
def acceptance():
    """Record a criterion verdict; the summary prints one line per criterion."""

    def record(n: int, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE[n] = (bool(ok), detail)
        print(f"ACCEPTANCE {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
