import numpy as np
import pytest


def gauss_legendre(lo, hi, n):
    s, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (hi - lo) * s + 0.5 * (hi + lo), 0.5 * (hi - lo) * w


@pytest.fixture
def gl():
    return gauss_legendre
