import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def random_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def explicit_coefficient(rho, a, b, c):
    """tr(rho A^dagger (x) B^dagger (x) C^dagger) via an explicit Kronecker product."""
    op = np.kron(np.kron(a.conj().T, b.conj().T), c.conj().T)
    return np.trace(rho @ op)


_ACCEPTANCE = pytest.StashKey()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line, then assert it."""
    lines = request.config.stash[_ACCEPTANCE]

    def record(number, ok, detail):
        lines[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
