import pytest

from comproj import corpus
from comproj.exactlin import Field

F2 = Field.prime(2)
F3 = Field.prime(3)
QQ = Field.rationals()


@pytest.fixture
def a2_f2():
    return corpus.a2(F2)


@pytest.fixture
def a2_q():
    return corpus.a2(QQ)


@pytest.fixture
def loop_q():
    return corpus.two_loop(QQ)


@pytest.fixture
def loop_f2():
    return corpus.two_loop(F2)


def pytest_terminal_summary(terminalreporter):
    import acclog

    if acclog.LINES:
        terminalreporter.section("acceptance")
        for line in sorted(acclog.LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
