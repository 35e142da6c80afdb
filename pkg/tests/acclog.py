"""Pass/fail lines collected by the acceptance tests and printed at the end of the run."""
LINES: list[str] = []


def record(n: int, ok: bool, text: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}"
    LINES.append(line)
    print(line)
