"""Collects one pass/fail line per acceptance criterion."""
import contextlib
import time

RESULTS: dict = {}


@contextlib.contextmanager
def criterion(n: int, title: str):
    start = time.perf_counter()
    info: dict = {}
    try:
        yield info
    except BaseException:
        RESULTS[n] = (False, title, f"{time.perf_counter() - start:.2f}s")
        print(f"criterion {n}: FAIL  {title}")
        raise
    detail = f"{time.perf_counter() - start:.2f}s"
    if info:
        detail += ", " + ", ".join(f"{k}={v}" for k, v in info.items())
    RESULTS[n] = (True, title, detail)
    print(f"criterion {n}: PASS  {title}  [{detail}]")
