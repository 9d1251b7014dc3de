import pytest

from agtlab.exactalg import RatFunc


@pytest.fixture(scope="session")
def sym():
    """e1, e2 and a few mass symbols as rational functions."""
    return RatFunc.gens(["e1", "e2", "mu", "mu0", "mu1", "b"])


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


@pytest.fixture
def acceptance_log(request):
    """Lines collected here are repeated in the terminal summary."""
    return request.config.stash[ACCEPTANCE_LINES]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash[ACCEPTANCE_LINES]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
