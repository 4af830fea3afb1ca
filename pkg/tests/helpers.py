"""Shared random-object constructors for the test suite."""

import numpy as np

from isonet import DensityOperator, PureStateVector


def random_density_operator(dims, rng) -> DensityOperator:
    total = int(np.prod(dims))
    ginibre = rng.normal(size=(total, total)) + 1j * rng.normal(size=(total, total))
    mat = ginibre @ ginibre.conj().T
    return DensityOperator(tuple(dims), mat / mat.trace())


def random_pure_state(dims, rng) -> PureStateVector:
    total = int(np.prod(dims))
    vec = rng.normal(size=total) + 1j * rng.normal(size=total)
    return PureStateVector(tuple(dims), vec / np.linalg.norm(vec))


def random_unitary(d, rng) -> np.ndarray:
    ginibre = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(ginibre)
    return q * (np.diag(r) / np.abs(np.diag(r)))
