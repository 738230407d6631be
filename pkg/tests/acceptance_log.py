"""Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""

import time

LINES = []


class Criterion:
    """Context manager timing a criterion and recording named sub-checks."""

    def __init__(self, number, title, budget):
        self.number = number
        self.title = title
        self.budget = budget
        self.checks = {}
        self.notes = []

    def check(self, name, ok, detail=""):
        ok = bool(ok)
        if name in self.checks:
            ok = ok and self.checks[name][0]
            detail = detail or self.checks[name][1]
        self.checks[name] = (ok, detail)
        return ok

    def note(self, text):
        self.notes.append(text)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.checks["no error"] = (False, f"{exc_type.__name__}: {exc}")
        self.check(f"under {self.budget:g} s", elapsed < self.budget, f"{elapsed:.1f} s")
        failed = [f"{k} ({d})" if d else k for k, (ok, d) in self.checks.items() if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"{status} criterion {self.number}: {self.title} [{elapsed:.1f} s]"
        if failed:
            line += " -- failed: " + "; ".join(failed)
        if self.notes:
            line += " -- " + "; ".join(self.notes)
        LINES.append(line)
        print(line)
        return False

    @property
    def failures(self):
        return [k for k, (ok, _) in self.checks.items() if not ok]
