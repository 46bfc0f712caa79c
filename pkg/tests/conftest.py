import numpy as np
import pytest

import decolab
from decolab import backend


@pytest.fixture(params=decolab.backend_available())
def each_backend(request):
    """Run the decorated test once per importable kernel backend."""
    previous = backend.name()
    backend.select(request.param)
    yield request.param
    backend.select(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_density(rng, rank=8):
    g = rng.standard_normal((8, rank)) + 1j * rng.standard_normal((8, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, n=8):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d.conj() / np.abs(d))
