import sys
import numpy as np
import pytest

from gff import GFusionSystem, random_system
from gff._backend import available_backends
from gff.gfusion import GFusionComponent
from gff.subspace import ClosedSubspace

BACKENDS = available_backends()


@pytest.fixture(params=sorted(BACKENDS))
def kernels(request):
    return BACKENDS[request.param]


def cnormal(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(rng, n):
    q, r = np.linalg.qr(cnormal(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def coordinate_system(weights):
    """Coordinate functionals on C^n: component i is (span e_i, e_i^T, weights[i])."""
    n = len(weights)
    eye = np.eye(n, dtype=complex)
    return GFusionSystem(tuple(
        GFusionComponent(ClosedSubspace(eye[:, [i]]), eye[[i], :], w)
        for i, w in enumerate(weights)
    ))


def parseval_system(n=2):
    return GFusionSystem((GFusionComponent(ClosedSubspace.full(n), np.eye(n), 1.0),))


def random_frame(seed, n, m, d=None):
    """Random system whose local dims are large enough to be a frame generically."""
    return random_system(seed, n, m, d if d is not None else n)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
