import numpy as np
import pytest

ACCEPTANCE_LINES = []


def cgauss(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def conditioned(rng, m, p, cond):
    """Random m x p matrix with singular values log-spaced in [1/cond, 1]."""
    U = np.linalg.qr(cgauss(rng, m, p))[0]
    V = np.linalg.qr(cgauss(rng, p, p))[0]
    s = np.logspace(0, -np.log10(cond), p)
    return (U * s) @ V.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def record_acceptance():
    def record(label, passed, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
