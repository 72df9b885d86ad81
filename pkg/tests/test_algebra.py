import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crlie.algebra import (
    adjoint_matrix,
    bracket,
    construct_algebra,
    from_rep_matrix,
    group_exp,
    jacobi_residual,
    killing_form,
    killing_matrix,
    rep_matrix,
)
from crlie.atlas import TAGS, builtin_algebra
from crlie.errors import AntisymmetryViolation, JacobiViolation, NoRepresentation, RepMismatch
from crlie.linalg import expm, expm_traceless_2x2

import oracles

A, B, C = np.eye(3)

reals = st.floats(-3, 3, allow_nan=False)
cvec = st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=3, max_size=3)


def test_heisenberg_constants_valid():
    alg = construct_algebra([(0, 1, 2, 1.0)])
    assert alg.jacobi_residual == 0.0
    assert np.allclose(bracket(alg, A, B), C)
    assert np.allclose(bracket(alg, B, A), -C)


def test_abelian_valid():
    alg = construct_algebra(np.zeros((3, 3, 3)))
    assert np.all(bracket(alg, [1, 2, 3], [3, 1j, 0]) == 0)
    assert construct_algebra([]).jacobi_residual == 0.0


def test_sparse_dict_form():
    alg = construct_algebra([{"i": 0, "j": 1, "k": 2, "v": 1.0}, {"i": 1, "j": 0, "k": 2, "v": -1.0}])
    assert alg.structure[2, 0, 1] == 1.0 and alg.structure[2, 1, 0] == -1.0


def test_antisymmetry_violation_sparse():
    with pytest.raises(AntisymmetryViolation):
        construct_algebra([(0, 1, 2, 1.0), (1, 0, 2, 1.0)])


def test_antisymmetry_violation_dense():
    c = np.zeros((3, 3, 3))
    c[2, 0, 1] = 1.0
    with pytest.raises(AntisymmetryViolation):
        construct_algebra(c)


def test_jacobi_violation():
    # [A,B] = C, [B,C] = A, [A,C] = A
    with pytest.raises(JacobiViolation):
        construct_algebra([(0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 0, 1.0)])


def test_rep_mismatch():
    reps = builtin_algebra("sl2r").matrix_rep
    with pytest.raises(RepMismatch):
        construct_algebra([(0, 1, 2, 1.0)], matrix_rep=reps)


def test_bad_shape():
    with pytest.raises(ValueError):
        construct_algebra(np.zeros((2, 3, 3)))


@pytest.mark.parametrize("tag", TAGS)
def test_builtin_jacobi_and_rep(tag):
    alg = builtin_algebra(tag)
    assert alg.jacobi_residual < 1e-14
    assert alg.rep_residual < 1e-14
    # commutators of the representation reproduce the structure constants
    assert np.allclose(oracles.commutator_structure(alg.matrix_rep), alg.structure, atol=1e-12)


def test_e2_brackets():
    e2 = builtin_algebra("e2")
    assert np.allclose(bracket(e2, B, C), A)
    assert np.allclose(bracket(e2, A, C), -B)
    assert np.allclose(bracket(e2, A, B), 0)


def test_killing_sl2r_normalization():
    sl2 = builtin_algebra("sl2r")
    assert killing_form(sl2, A, A) == pytest.approx(oracles.FROZEN["sl2r_killing_A"])
    # K(X, X) = 8 (a^2 + bc)
    x = np.array([0.3, -1.2, 0.7])
    assert killing_form(sl2, x, x).real == pytest.approx(8 * (0.3**2 - 1.2 * 0.7))


def test_killing_signatures():
    assert np.all(np.linalg.eigvalsh(killing_matrix(builtin_algebra("su2"))) < 0)
    assert np.linalg.matrix_rank(killing_matrix(builtin_algebra("e2"))) < 3
    heis = builtin_algebra("heis")
    assert np.allclose([killing_form(heis, C, e) for e in np.eye(3)], 0)


def test_killing_zero_vector():
    assert killing_form(builtin_algebra("sl2r"), np.zeros(3), A) == 0


def test_adjoint_heis_and_e2():
    ad = adjoint_matrix(builtin_algebra("heis"), A)
    assert ad[2, 1] == 1 and np.count_nonzero(ad) == 1
    ad_c = adjoint_matrix(builtin_algebra("e2"), C)
    # rotation generator on span{A, B}: A -> B, B -> -A, C -> 0
    assert np.allclose(ad_c, [[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    assert np.all(adjoint_matrix(builtin_algebra("su2"), np.zeros(3)) == 0)


@settings(max_examples=50, deadline=None)
@given(cvec, cvec, st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_bracket_bilinear_antisymmetric(x, y, lam):
    for tag in TAGS:
        alg = builtin_algebra(tag)
        assert np.allclose(bracket(alg, lam * np.array(x), y), lam * bracket(alg, x, y), atol=1e-12)
        assert np.allclose(bracket(alg, x, y), -bracket(alg, y, x), atol=1e-12)
        assert np.all(bracket(alg, x, x) == 0)


@settings(max_examples=40, deadline=None)
@given(cvec, cvec)
def test_ad_is_homomorphism(x, y):
    for tag in TAGS:
        alg = builtin_algebra(tag)
        lhs = adjoint_matrix(alg, bracket(alg, x, y))
        ax, ay = adjoint_matrix(alg, x), adjoint_matrix(alg, y)
        assert np.allclose(lhs, ax @ ay - ay @ ax, atol=1e-11)


@settings(max_examples=40, deadline=None)
@given(cvec, cvec)
def test_killing_matches_trace(x, y):
    for tag in TAGS:
        alg = builtin_algebra(tag)
        # independent ad matrices from the raw constants
        adx = np.einsum("kij,i->kj", alg.structure, np.array(x))
        ady = np.einsum("kij,i->kj", alg.structure, np.array(y))
        assert abs(killing_form(alg, x, y) - np.trace(adx @ ady)) < 1e-12 * max(1, abs(np.trace(adx @ ady)))
        assert abs(killing_form(alg, x, y) - killing_form(alg, y, x)) < 1e-12 * (1 + abs(killing_form(alg, x, y)))


@settings(max_examples=40, deadline=None)
@given(st.lists(reals, min_size=3, max_size=3))
def test_group_exp_inverse_and_oracle(x):
    x = np.array(x)
    if np.linalg.norm(x) > 5:
        x = 5 * x / np.linalg.norm(x)
    for tag in TAGS:
        alg = builtin_algebra(tag)
        g = group_exp(alg, x)
        n = g.shape[0]
        assert np.max(np.abs(g @ group_exp(alg, -x) - np.eye(n))) < 1e-12 * max(1.0, np.linalg.norm(g) ** 2)
        ref = oracles.expm(rep_matrix(alg, x))
        assert np.max(np.abs(g - ref)) < 1e-11 * max(1.0, np.linalg.norm(ref))


def test_group_exp_identity_and_su2_unitary():
    su2 = builtin_algebra("su2")
    assert np.allclose(group_exp(su2, np.zeros(3)), np.eye(2))
    u = group_exp(su2, [1.7, 0, 0])
    assert np.max(np.abs(u @ u.conj().T - np.eye(2))) < 1e-12
    assert abs(np.linalg.det(u) - 1) < 1e-12


def test_group_exp_heis_upper_triangular():
    g = group_exp(builtin_algebra("heis"), [0.8, 0, 0])
    assert np.allclose(g, [[1, 0.8, 0], [0, 1, 0], [0, 0, 1]])


def test_group_exp_rejects_complex_and_missing_rep():
    with pytest.raises(ValueError):
        group_exp(builtin_algebra("sl2r"), [1j, 0, 0])
    with pytest.raises(NoRepresentation):
        group_exp(construct_algebra([(0, 1, 2, 1.0)]), [1, 0, 0])


def test_from_rep_matrix_round_trip():
    alg = builtin_algebra("su2")
    x = np.array([0.3 + 1j, -2, 0.5j])
    assert np.allclose(from_rep_matrix(alg, rep_matrix(alg, x)), x)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False), min_size=3, max_size=3))
def test_traceless_closed_form(v):
    m = np.array([[v[0], v[1]], [v[2], -v[0]]])
    assert np.allclose(expm_traceless_2x2(m), oracles.expm(m), rtol=1e-10, atol=1e-10)
    assert np.allclose(expm(m), oracles.expm(m), rtol=1e-10, atol=1e-10)


def test_jacobi_residual_function():
    assert jacobi_residual(builtin_algebra("su2").structure) == 0.0
