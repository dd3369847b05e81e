import pytest

from contrapunctus.dichotomy import Dichotomy
from contrapunctus.extension import U0, doubling_tower

X6 = Dichotomy(6, (0, 2, 3))
X12 = Dichotomy(12, (0, 1, 4, 5, 6, 9))


@pytest.fixture(scope="session")
def tower():
    return doubling_tower(U0, 5)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[0][2:])):
        terminalreporter.write_line(line)
