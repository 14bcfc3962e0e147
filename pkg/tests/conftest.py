import io
import time

import pytest

from friendgraph.kernels import available_backends
from friendgraph.model import parse_edges, parse_users, validate_dataset

ACCEPTANCE_TITLES = {}


def make_dataset(users_csv: str, edges_csv: str, policy="strict"):
    users, ud = parse_users(io.StringIO(users_csv))
    edges, ed = parse_edges(io.StringIO(edges_csv))
    assert not ud and not ed, (ud, ed)
    return validate_dataset(users, edges, policy)


@pytest.fixture(params=sorted(available_backends()))
def kernel_module(request):
    return available_backends()[request.param]


@pytest.fixture
def stopwatch():
    class Watch:
        def __enter__(self):
            self.t0 = time.perf_counter()
            return self

        def __exit__(self, *exc):
            self.elapsed = time.perf_counter() - self.t0

    return Watch


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py::test_criterion_" in rep.nodeid and rep.when == "call":
                name = rep.nodeid.split("::")[-1]
                rows.append((name, outcome))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(rows, key=lambda r: int(r[0].split("_")[2])):
            flag = "PASS" if outcome == "passed" else "FAIL"
            terminalreporter.write_line(f"{flag}  {name}")
