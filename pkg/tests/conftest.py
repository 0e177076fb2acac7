import numpy as np
import pytest

from osserman.numkit import Xoshiro256
from osserman.octonion import Octonion


def seeded_orthogonal(n: int, seed: int) -> np.ndarray:
    """Random orthogonal matrix from a seeded Gaussian via QR (det-sign fixed)."""
    rng = np.random.default_rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def random_rational_octonion(rng: Xoshiro256, low=-9, high=10) -> Octonion:
    return Octonion(rng.integers(low, high, 8))


@pytest.fixture
def xrng():
    return Xoshiro256(20240811)
