"""Three-dimensional real Lie algebras given by structure constants.

Conventions: ``structure[k, i, j]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
Vectors are length-3 complex arrays of coordinates in the basis; brackets,
Killing forms and adjoint matrices are the complex-bilinear extensions of the
real ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import AntisymmetryViolation, JacobiViolation, NoRepresentation, RepMismatch
from .linalg import expm
from .tolerances import EXACT_TOL

_PAIRS = ((0, 1), (0, 2), (1, 2))


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LieAlgebra3:
    basis_names: tuple[str, str, str]
    structure: np.ndarray
    matrix_rep: tuple[np.ndarray, ...] | None = None
    name: str = "custom"
    jacobi_residual: float = 0.0
    antisymmetry_residual: float = 0.0
    rep_residual: float | None = field(default=None)

    @property
    def dim(self) -> int:
        return 3

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(3, dtype=complex)
        v[i] = 1.0
        return v


def _dense_from_sparse(entries: Iterable) -> np.ndarray:
    c = np.zeros((3, 3, 3))
    given: dict[tuple[int, int, int], float] = {}
    for entry in entries:
        if isinstance(entry, Mapping):
            i, j, k, v = int(entry["i"]), int(entry["j"]), int(entry["k"]), float(entry["v"])
        else:
            i, j, k, v = entry
            i, j, k, v = int(i), int(j), int(k), float(v)
        if (i, j, k) in given and given[(i, j, k)] != v:
            raise AntisymmetryViolation(f"conflicting values for [e{i}, e{j}] along e{k}")
        given[(i, j, k)] = v
    for (i, j, k), v in given.items():
        partner = given.get((j, i, k))
        if partner is None:
            c[k, i, j] = v
            c[k, j, i] = -v
        elif partner != -v or (i == j and v != 0.0):
            raise AntisymmetryViolation(
                f"[e{i}, e{j}] and [e{j}, e{i}] are not opposite along e{k}: {v} vs {partner}"
            )
        else:
            c[k, i, j] = v
    return c


def jacobi_residual(structure: np.ndarray) -> float:
    c = np.asarray(structure)
    # [[e_i, e_j], e_k] = sum_m c[m,i,j] c[n,m,k] e_n
    t = np.einsum("mij,nmk->nijk", c, c)
    cyc = t + np.transpose(t, (0, 2, 3, 1)) + np.transpose(t, (0, 3, 1, 2))
    return float(np.max(np.abs(cyc)))


def _rep_residual(structure: np.ndarray, reps: Sequence[np.ndarray]) -> float:
    worst = 0.0
    for i, j in _PAIRS:
        comm = reps[i] @ reps[j] - reps[j] @ reps[i]
        expected = sum(structure[k, i, j] * reps[k] for k in range(3))
        worst = max(worst, float(np.max(np.abs(comm - expected))))
    return worst


def construct_algebra(
    structure,
    basis_names: Sequence[str] = ("A", "B", "C"),
    matrix_rep: Sequence | None = None,
    name: str = "custom",
) -> LieAlgebra3:
    """Validate structure constants and build a LieAlgebra3.

    ``structure`` is either a dense 3x3x3 array ``c[k][i][j]`` or a sparse list of
    ``(i, j, k, v)`` tuples / ``{"i","j","k","v"}`` dicts meaning ``[e_i, e_j] = v e_k``.
    In sparse form the opposite bracket is filled in automatically; if it is
    given explicitly it must be the negative.
    """
    arr = None
    if not isinstance(structure, np.ndarray):
        seq = list(structure)
        if seq and (isinstance(seq[0], Mapping) or np.ndim(seq[0]) == 1 and len(seq[0]) == 4):
            arr = _dense_from_sparse(seq)
        elif not seq:
            arr = np.zeros((3, 3, 3))
        else:
            structure = np.asarray(seq, dtype=float)
    if arr is None:
        arr = np.asarray(structure, dtype=float)
    if arr.shape != (3, 3, 3):
        raise ValueError(f"structure constants must have shape (3, 3, 3), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("structure constants must be finite")
    if len(basis_names) != 3:
        raise ValueError("exactly three basis names are required")

    scale = max(1.0, float(np.max(np.abs(arr))))
    anti = float(np.max(np.abs(arr + np.transpose(arr, (0, 2, 1)))))
    if anti > EXACT_TOL * scale:
        raise AntisymmetryViolation(f"antisymmetry residual {anti:.3e}")
    jac = jacobi_residual(arr)
    if jac > EXACT_TOL * scale**2:
        raise JacobiViolation(f"Jacobi residual {jac:.3e}")

    reps = None
    rep_res = None
    if matrix_rep is not None:
        reps = tuple(_frozen(np.asarray(m, dtype=complex)) for m in matrix_rep)
        if len(reps) != 3 or any(m.ndim != 2 or m.shape[0] != m.shape[1] for m in reps):
            raise RepMismatch("matrix_rep must hold three square matrices")
        if len({m.shape for m in reps}) != 1:
            raise RepMismatch("matrix_rep matrices differ in size")
        rep_res = _rep_residual(arr, reps)
        rep_scale = max(1.0, max(float(np.max(np.abs(m))) for m in reps)) ** 2 * scale
        if rep_res > EXACT_TOL * rep_scale:
            raise RepMismatch(f"commutators disagree with structure constants by {rep_res:.3e}")

    return LieAlgebra3(
        basis_names=tuple(str(b) for b in basis_names),
        structure=_frozen(arr),
        matrix_rep=reps,
        name=name,
        jacobi_residual=jac,
        antisymmetry_residual=anti,
        rep_residual=rep_res,
    )


def as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=complex).reshape(-1)
    if v.shape != (3,):
        raise ValueError(f"expected 3 coordinates, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def bracket(alg: LieAlgebra3, x, y) -> np.ndarray:
    """Complex-bilinear bracket [x, y]; exactly zero when x == y."""
    x = as_vector(x)
    y = as_vector(y)
    c = alg.structure
    out = np.zeros(3, dtype=complex)
    for i, j in _PAIRS:
        w = x[i] * y[j] - x[j] * y[i]
        if w != 0:
            out += w * c[:, i, j]
    return out


def adjoint_matrix(alg: LieAlgebra3, x) -> np.ndarray:
    """Matrix of ad(x): column j is [x, e_j]."""
    x = as_vector(x)
    return np.einsum("kij,i->kj", alg.structure, x).astype(complex)


def killing_form(alg: LieAlgebra3, x, y) -> complex:
    """tr(ad x ad y), with no extra normalization (for sl2R this is 8 (a^2 + bc))."""
    return complex(np.trace(adjoint_matrix(alg, x) @ adjoint_matrix(alg, y)))


def killing_matrix(alg: LieAlgebra3) -> np.ndarray:
    basis = np.eye(3)
    return np.array([[killing_form(alg, basis[i], basis[j]).real for j in range(3)] for i in range(3)])


def _require_rep(alg: LieAlgebra3) -> tuple[np.ndarray, ...]:
    if alg.matrix_rep is None:
        raise NoRepresentation(f"algebra {alg.name!r} has no matrix representation")
    return alg.matrix_rep


def rep_matrix(alg: LieAlgebra3, x) -> np.ndarray:
    """Image of x (complex coordinates allowed) in the matrix representation."""
    reps = _require_rep(alg)
    x = as_vector(x)
    return sum(x[i] * reps[i] for i in range(3))


def from_rep_matrix(alg: LieAlgebra3, m: np.ndarray) -> np.ndarray:
    """Coordinates of a matrix lying in the span of the representation (least squares)."""
    reps = _require_rep(alg)
    basis = np.stack([r.reshape(-1) for r in reps], axis=1)
    coords, *_ = np.linalg.lstsq(basis, np.asarray(m, dtype=complex).reshape(-1), rcond=None)
    return coords


def group_exp(alg: LieAlgebra3, x) -> np.ndarray:
    """exp of a real algebra element, as a matrix in the built-in representation."""
    x = as_vector(x)
    if np.max(np.abs(x.imag)) > EXACT_TOL * max(1.0, float(np.max(np.abs(x)))):
        raise ValueError("group_exp takes a real algebra element")
    return expm(rep_matrix(alg, x.real))


def adjoint_action(alg: LieAlgebra3, g: np.ndarray, x) -> np.ndarray:
    """Ad_g x = g X g^-1 computed in the representation, returned in algebra coordinates."""
    m = rep_matrix(alg, x)
    return from_rep_matrix(alg, g @ m @ np.linalg.inv(g))
