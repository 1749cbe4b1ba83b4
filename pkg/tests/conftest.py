import functools

import pytest

RESULTS: dict = {}


def criterion(number: int, title: str):
    """Record a pass/fail line for an acceptance criterion test."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException as e:
                if isinstance(e, pytest.skip.Exception):
                    RESULTS[number] = ("SKIP", title, str(e))
                else:
                    RESULTS[number] = ("FAIL", title, f"{type(e).__name__}: {e}".splitlines()[0])
                raise
            RESULTS[number] = ("PASS", title, detail or "")

        return run

    return wrap


def report_lines() -> list[str]:
    return [f"criterion {n:>2}: {status}  {title}" + (f"  ({detail})" if detail else "")
            for n, (status, title, detail) in sorted(RESULTS.items())]


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in report_lines():
            terminalreporter.write_line(line)
