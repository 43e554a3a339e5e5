import functools
import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def table(m, N):
    from cyclespace import enumerate_vertices
    return enumerate_vertices(m, N)


@functools.lru_cache(maxsize=None)
def ops(m, N):
    from cyclespace import OperatorSet
    return OperatorSet(table(m, N))


@functools.lru_cache(maxsize=None)
def ssl_report(m, N, K):
    from cyclespace.ssl import SslConfig, run
    return run(SslConfig(m, N, K))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
