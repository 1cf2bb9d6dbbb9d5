"""Collects the one-line verdicts printed by the acceptance suite."""

LINES: dict = {}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {detail}"
    LINES[number] = line
    print(line)
    assert ok, line
