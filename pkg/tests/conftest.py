import pytest

from cyclex.corpus import corpus_graphs
from cyclex.matching import is_matching_covered

# criterion number -> (passed, title, detail, seconds, limit)
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def corpus8():
    """Every connected simple graph on 2, 4, 6 or 8 vertices, up to isomorphism."""
    return corpus_graphs(8)


@pytest.fixture(scope="session")
def mc8(corpus8):
    return [g for g in corpus8 if is_matching_covered(g)]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, title, detail, dt, limit = ACCEPTANCE[num]
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  #{num:<2d} {title}: {detail} ({dt:.1f}s, limit {limit:.0f}s)")
