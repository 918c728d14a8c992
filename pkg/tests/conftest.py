import numpy as np
import pytest

from mmv.explore import builtin_example, random_pair, trial_rng

# Published matrices, typed out again so tests do not read them back from the library.
EX1_A = np.diag([1141.0, 204.0, 0.125])
EX1_B = np.array([[39.0, 90.0, 43.0], [90.0, 418.0, 370.0], [43.0, 370.0, 426.0]])
EX2_A = np.diag([6317.0, 474.0, 6.0])
EX2_B = np.array([[2078.0, 2362.0, 2199.0], [2362.0, 3267.0, 2585.0], [2199.0, 2585.0, 2492.0]])


@pytest.fixture(scope="session")
def ex1():
    return builtin_example("example1")


@pytest.fixture(scope="session")
def ex2():
    return builtin_example("example2")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(rng, n):
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return G + G.conj().T


def pairs(seed, count, dims=(2, 6), styles=("dense", "diagonal-vs-dense")):
    """Deterministic stream of random pd pairs over the given dimension range."""
    for i in range(count):
        rng = trial_rng(seed, i)
        dim = int(rng.integers(dims[0], dims[1] + 1))
        yield random_pair(dim, rng, styles[i % len(styles)])


# One line per acceptance criterion, echoed again in the terminal summary so the
# verdicts are visible without -s.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
