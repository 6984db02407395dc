import numpy as np
import pytest


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return z / np.linalg.norm(z)


def random_permutation_image(rng: np.random.Generator, dim: int) -> tuple:
    return tuple(int(v) + 1 for v in rng.permutation(dim))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
