import time
from contextlib import contextmanager

import pytest

_LINES = {}


class Recorder:
    """Collects one pass/fail line per acceptance criterion."""

    @contextmanager
    def __call__(self, key, title, limit=None, expect_failure=False):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            note = " (known, documented)" if expect_failure else ""
            _LINES[key] = f"{key} FAIL{note}  {title}  [{elapsed:.2f}s] {type(exc).__name__}: {exc}".splitlines()[0]
            raise
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed >= limit:
            _LINES[key] = f"{key} FAIL  {title}  [{elapsed:.2f}s >= {limit}s limit]"
            raise AssertionError(f"{key} took {elapsed:.2f}s, limit {limit}s")
        _LINES[key] = f"{key} PASS  {title}  [{elapsed:.2f}s]"
        print(_LINES[key])


@pytest.fixture
def criterion():
    return Recorder()


def _order(key):
    head = key.split()[0]
    num = "".join(ch for ch in head if ch.isdigit())
    return (int(num) if num else 0, key)


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_LINES, key=_order):
        terminalreporter.write_line(_LINES[key])
