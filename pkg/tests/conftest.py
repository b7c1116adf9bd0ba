import numpy as np
import pytest

from phloewner import PortHamiltonianForm, RightDatum, make_analytic, reconstruct
from phloewner.zoo import make_rlc5

SQ2 = np.sqrt(2.0)

# PASS/FAIL lines of the acceptance criteria, echoed in the terminal summary
CRITERIA_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES, key=lambda s: s.split()[2]):
            terminalreporter.write_line(line)


def random_ph(rng, n, m, normalized=True):
    """Strictly passive pH model: W_blk positive definite, Q = I (or random PD)."""
    K = rng.standard_normal((n, n))
    M = rng.standard_normal((n + m, n + m))
    W = M @ M.T / (n + m) + 0.2 * np.eye(n + m)
    F = rng.standard_normal((m, m))
    if normalized:
        Q = np.eye(n)
    else:
        H = rng.standard_normal((n, n))
        Q = H @ H.T / n + 0.5 * np.eye(n)
    return PortHamiltonianForm(
        J=K - K.T, R=W[:n, :n], P=W[:n, n:], S=W[n:, n:],
        G=rng.standard_normal((n, m)), N=F - F.T, Q=Q,
    )


def random_passive_model(rng, n, m):
    return reconstruct(random_ph(rng, n, m))


def random_orthogonal_scaling(rng, n):
    """Well-conditioned nonsingular matrix (orthogonal times scaling in [0.5, 2])."""
    U, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return U @ np.diag(rng.uniform(0.5, 2.0, n))


def scalar_model():
    """Z(s) = 1 + 1/(s + 1)."""
    from phloewner import StateSpaceRealization

    return StateSpaceRealization([[-1.0]], [[1.0]], [[1.0]], [[1.0]])


def scalar_datum():
    return [RightDatum(SQ2, [1.0], [SQ2])]


def analytic_data():
    lam = SQ2 / 2 + 1j
    r = np.array([1, 1j]) / SQ2
    w = make_analytic()(lam) @ r
    return [RightDatum(lam, r, w)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def rlc5():
    return make_rlc5()
