"""Independent oracles and frozen expected values used across the test-suite.

Oracles recompute quantities by a different route than the library: brackets
from matrix commutators, exponentials from scipy, hyperbolic distance by moving
one point to i with a Moebius map, Maurer-Cartan coefficients by hand.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

SQRT2 = np.sqrt(2.0)

# closed forms for the canonical families, in the gauge of the reference coframes
FROZEN = {
    "e2_triple": (0j, 0.5j, -0.5j),
    "e2_sigma": 2.25j,
    "e2_r": -3 / 8,
    "heis_triple": (0j, 0j, 0j),
    "su2_r_t2": -45 / 8,
    "sl2r_spherical": (-3 + 2 * SQRT2, 1.0),
    "sl2r_spherical_outside": -3 - 2 * SQRT2,
    "sl2r_mu_half": 17.0,
    "heis_embed_100": (-0.5j, 1 + 0j),
    "e2_base_chart": (-1j, 0j),
    "sl2r_killing_A": 8.0,
}


def sl2r_triple(t: float) -> tuple[complex, complex, complex]:
    d = 4 * abs(t) * (1 + t)
    return 0j, -1j * (1 + 6 * t + t * t) / d, -1j * (1 - t) ** 2 / d


def su2_triple(t: float) -> tuple[complex, complex, complex]:
    """Computed orientation; the opposite orientation gives the complex conjugates. Depends on |t| only."""
    t = abs(t)
    return 0j, 1j * (1 / t + t), 1j * (1 / t - t)


def sl2r_mu(t: float) -> float:
    return (1 + 6 * t + t * t) / (1 - t) ** 2


def su2_mu(t: float) -> float:
    return (t * t + 1) / abs(t * t - 1)


def commutator_structure(mats) -> np.ndarray:
    """Structure constants recovered from matrix commutators by least squares."""
    mats = [np.asarray(m, dtype=complex) for m in mats]
    basis = np.stack([m.reshape(-1) for m in mats], axis=1)
    c = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(3):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            coef, *_ = np.linalg.lstsq(basis, comm.reshape(-1), rcond=None)
            c[:, i, j] = coef.real
    return c


def expm(m) -> np.ndarray:
    return scipy.linalg.expm(np.asarray(m, dtype=complex))


def mobius(g, z: complex) -> complex:
    a, b, c, d = np.asarray(g, dtype=float).reshape(-1)
    return (a * z + b) / (c * z + d)


def hyperbolic_distance_via_mobius(z: complex, w: complex) -> float:
    """Move z to i with an affine map, then w lands at w'; distance from i to w' by the disk model."""
    x, y = z.real, z.imag
    w1 = (w - x) / y
    disk = abs((w1 - 1j) / (w1 + 1j))
    return float(2 * np.arctanh(disk))


def affine_roots(a: complex, b: complex, c: complex) -> list[complex]:
    """Roots of c z^2 - 2a z - b via numpy, for c != 0."""
    return list(np.roots([c, -2 * a, -b]))


def random_unit_complex(rng: np.random.Generator, n: int = 3) -> np.ndarray:
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)
