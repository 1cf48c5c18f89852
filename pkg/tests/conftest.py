import pytest

from codeweights.gf import FieldCtx

NINE_PAIRS = [(3, 2), (3, 3), (3, 4), (3, 5), (5, 2), (5, 3), (5, 4), (7, 2), (7, 4)]


@pytest.fixture(scope="session")
def fields():
    cache = {}

    def get(p, e, modulus=None):
        key = (p, e, None if modulus is None else tuple(modulus))
        if key not in cache:
            cache[key] = FieldCtx(p, e, modulus)
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
