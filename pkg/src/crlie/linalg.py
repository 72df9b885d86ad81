"""Small dense linear algebra helpers: matrix exponential, null spaces, rank margins."""

from __future__ import annotations

from math import factorial

import numpy as np

PADE_ORDER = 8
# scaling target for ||A / 2^s||_1
_SCALE_THETA = 0.5


def _pade_coefficients(q: int) -> list[float]:
    return [
        factorial(2 * q - k) * factorial(q) / (factorial(2 * q) * factorial(k) * factorial(q - k))
        for k in range(q + 1)
    ]


_PADE = _pade_coefficients(PADE_ORDER)


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a diagonal [8/8] Pade approximant.

    The matrix is scaled by 2^-s until its 1-norm is at most 1/2, the approximant
    N(A)/D(A) is evaluated with D(A) = N(-A), and the result is squared s times.
    For the 2x2 and 3x3 matrices used here this is accurate to a few ulps.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    norm = np.linalg.norm(a, 1)
    s = 0
    if norm > _SCALE_THETA:
        s = int(np.ceil(np.log2(norm / _SCALE_THETA)))
    a_s = a / (2.0**s)

    ident = np.eye(n, dtype=complex)
    power = ident
    num = np.zeros_like(ident)
    den = np.zeros_like(ident)
    for k, ck in enumerate(_PADE):
        if k > 0:
            power = power @ a_s
        num = num + ck * power
        den = den + ((-1) ** k) * ck * power
    result = np.linalg.solve(den, num)
    for _ in range(s):
        result = result @ result
    return result


def expm_traceless_2x2(m: np.ndarray) -> np.ndarray:
    """Closed form exp(M) = cosh(d) I + sinh(d)/d M with d^2 = -det M, for trace-free 2x2 M."""
    m = np.asarray(m, dtype=complex)
    d = np.sqrt(-np.linalg.det(m) + 0j)
    if abs(d) < 1e-8:
        # sinh(d)/d = 1 + d^2/6 + ...
        factor = 1.0 + d * d / 6.0 + d**4 / 120.0
        return np.cosh(d) * np.eye(2) + factor * m
    return np.cosh(d) * np.eye(2) + (np.sinh(d) / d) * m


def null_vector(m: np.ndarray) -> tuple[np.ndarray, float]:
    """Unit vector spanning the numerical kernel of m, and the smallest singular value."""
    _, s, vh = np.linalg.svd(np.asarray(m, dtype=complex))
    v = vh[-1].conj()
    return v / np.linalg.norm(v), float(s[-1]) if len(s) == m.shape[1] else 0.0


def rank_margin(columns: np.ndarray) -> float:
    """Ratio smallest/largest singular value of the given column set (0 for a zero matrix)."""
    s = np.linalg.svd(np.asarray(columns), compute_uv=False)
    if s[0] == 0.0:
        return 0.0
    return float(s[-1] / s[0])


def fubini_study_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Chordal distance sin(angle) = sqrt(1 - |<u,v>|^2 / (|u|^2 |v|^2)) between the lines [u] and [v].

    Evaluated as the norm of the component of u orthogonal to v, which keeps
    full relative precision for nearly equal lines.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)
    return float(min(1.0, np.linalg.norm(u - np.vdot(v, u) * v)))
