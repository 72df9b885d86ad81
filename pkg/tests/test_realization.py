import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crlie.algebra import bracket, rep_matrix
from crlie.atlas import builtin_algebra, canonical_line
from crlie.errors import ChartUndefined, NotAHomomorphism, NotRegular, UnknownTag
from crlie.line import ComplexLine
from crlie.realization import (
    HEIS_FORM,
    adjoint_orbit_sample,
    cr_map_residual,
    e2_chart,
    heisenberg_embedding,
    heisenberg_law,
    heisenberg_matrix,
    heisenberg_product,
    heisenberg_rep,
    heisenberg_rep_algebra,
    heisenberg_rep_generators,
    hermitian_form,
    homomorphism_residual,
    kernel_vector,
    orbit_invariant,
    orbit_map_rank,
    quadric_residual,
    realize,
    sl2_standard_orbit,
    sl2r_mu_closed_form,
    su2_sphere_orbit,
)

import oracles

coord = st.floats(-3, 3, allow_nan=False)
HYPERBOLIC_SPHERICAL = -3 + 2 * np.sqrt(2)


# --- CR-map certificates ------------------------------------------------------------------

def test_sl2_standard_rep_certificate():
    alg = builtin_algebra("sl2r")
    line = canonical_line("sl2r", 1.0)
    u = kernel_vector(alg, line)
    assert cr_map_residual(alg, line, alg.matrix_rep, u) < 1e-12
    # (i, 1) spans the same kernel
    assert cr_map_residual(alg, line, alg.matrix_rep, [1j, 1]) < 1e-12
    assert cr_map_residual(alg, line, alg.matrix_rep, [1, 0]) > 0.1


def test_su2_kernel_vector():
    alg = builtin_algebra("su2")
    u = kernel_vector(alg, canonical_line("su2", 1.0))
    assert abs(u[0]) < 1e-12 and abs(abs(u[1]) - 1) < 1e-12
    assert cr_map_residual(alg, canonical_line("su2", 1.0), alg.matrix_rep, u) < 1e-12


def test_not_a_homomorphism():
    alg = builtin_algebra("sl2r")
    bad = [np.eye(2), alg.matrix_rep[1], alg.matrix_rep[2]]
    with pytest.raises(NotAHomomorphism):
        cr_map_residual(alg, canonical_line("sl2r", 1.0), bad, [1j, 1])
    with pytest.raises(NotAHomomorphism):
        cr_map_residual(alg, canonical_line("sl2r", 1.0), alg.matrix_rep[:2], [1j, 1])
    with pytest.raises(ValueError):
        cr_map_residual(alg, canonical_line("sl2r", 1.0), alg.matrix_rep, [0, 0])


def test_heisenberg_rep_is_homomorphism():
    heis = builtin_algebra("heis")
    assert homomorphism_residual(heis, heisenberg_rep_generators()) < 1e-15
    line = canonical_line("heis")
    assert cr_map_residual(heis, line, heisenberg_rep_generators(), [0, 0, 1]) < 1e-15
    # rho'(L) L-image: rho'(L) annihilates e3
    assert np.allclose(heisenberg_rep_algebra(line.vector) @ [0, 0, 1], 0)


@settings(max_examples=50, deadline=None)
@given(coord, coord, coord)
def test_heisenberg_rep_is_exponential(x, y, z):
    # exp(X) = (x, y, z) for X = xA + yB + (z - xy/2) C
    gen = x * np.eye(3)[0] + y * np.eye(3)[1] + (z - x * y / 2) * np.eye(3)[2]
    assert np.allclose(oracles.expm(heisenberg_rep_algebra(gen)), heisenberg_rep(x, y, z), atol=1e-11)
    assert np.allclose(oracles.expm(rep_matrix(builtin_algebra("heis"), gen)), heisenberg_matrix(x, y, z), atol=1e-11)


@settings(max_examples=50, deadline=None)
@given(coord, coord, coord, coord, coord, coord)
def test_heisenberg_rep_group_law(x, y, z, a, b, c):
    g, h = (x, y, z), (a, b, c)
    gh = heisenberg_product(g, h)
    assert np.allclose(heisenberg_rep(*g) @ heisenberg_rep(*h), heisenberg_rep(*gh), atol=1e-10)


@settings(max_examples=50, deadline=None)
@given(coord, coord, coord, coord, coord, coord)
def test_heisenberg_embedding_null_and_law(x, y, z, a, b, c):
    g, h = (x, y, z), (a, b, c)
    pg, ph = heisenberg_embedding(*g), heisenberg_embedding(*h)
    assert abs(pg.form_value) < 1e-10
    w, q = pg.coords
    assert abs(q.imag - abs(w) ** 2) < 1e-10
    got = heisenberg_law(ph.coords, pg.coords)
    want = heisenberg_embedding(*heisenberg_product(g, h)).coords
    assert np.allclose(got, want, atol=1e-9)


def test_heisenberg_law_order_matters():
    g, h = (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)
    pg, ph = heisenberg_embedding(*g), heisenberg_embedding(*h)
    gh = heisenberg_embedding(*heisenberg_product(g, h)).coords
    assert np.allclose(heisenberg_law(ph.coords, pg.coords), gh)
    assert not np.allclose(heisenberg_law(pg.coords, ph.coords), gh)


def test_heisenberg_frozen_point():
    p = heisenberg_embedding(1.0, 0.0, 0.0)
    assert np.allclose(p.chart, oracles.FROZEN["heis_embed_100"])
    assert np.allclose(HEIS_FORM, HEIS_FORM.conj().T)
    assert hermitian_form([0, 0, 1]) == 0 and hermitian_form([0, 1, 0]) == 1


# --- orbit invariants -------------------------------------------------------------------------

def test_mu_frozen_and_closed_form():
    m = rep_matrix(builtin_algebra("sl2r"), canonical_line("sl2r", 0.5).vector)
    assert orbit_invariant("sl2r", m) == pytest.approx(oracles.FROZEN["sl2r_mu_half"], rel=1e-12)
    assert sl2r_mu_closed_form(0.5) == pytest.approx(17.0)
    for t in (0.2, -0.4, -0.9, 0.95):
        m = rep_matrix(builtin_algebra("sl2r"), canonical_line("sl2r", t).vector)
        assert orbit_invariant("sl2r", m) == pytest.approx(oracles.sl2r_mu(t), rel=1e-10)
    for t in (1.5, 3.0):
        m = rep_matrix(builtin_algebra("su2"), canonical_line("su2", t).vector)
        assert orbit_invariant("su2", m) == pytest.approx(oracles.su2_mu(t), rel=1e-10)
    assert orbit_invariant("heis", np.eye(3)) is None


def test_null_cone_at_hyperbolic_spherical_point():
    m = rep_matrix(builtin_algebra("sl2r"), canonical_line("sl2r", HYPERBOLIC_SPHERICAL).vector)
    # tr(M conj M) = 0 there, so mu vanishes; tr M^2 = 0 only at t = 1
    assert abs(orbit_invariant("sl2r", m)) < 1e-12
    assert orbit_invariant("sl2r", rep_matrix(builtin_algebra("sl2r"), canonical_line("sl2r", 1.0).vector)) is None


@pytest.mark.parametrize("tag,t", [("sl2r", 0.5), ("sl2r", -0.4), ("su2", 2.0), ("sl2r", 1.0), ("su2", 1.0)])
def test_orbit_mu_constant(tag, t):
    alg = builtin_algebra(tag)
    orbit = adjoint_orbit_sample(alg, canonical_line(tag, t), samples=100, seed=42)
    assert orbit.max_residual < 1e-8 * max(1.0, abs(orbit.invariant_mu or 1.0))
    assert orbit.mu_spread < 1e-8
    assert orbit.points.shape == (100, 3)


def test_orbit_identity_sample_is_line():
    alg = builtin_algebra("sl2r")
    line = canonical_line("sl2r", 0.5)
    orbit = adjoint_orbit_sample(alg, line, params=np.zeros((1, 3)))
    assert ComplexLine.from_vector(orbit.points[0]).same_as(line)


def test_orbit_is_deterministic():
    alg = builtin_algebra("su2")
    a = adjoint_orbit_sample(alg, canonical_line("su2", 2.0), samples=10, seed=3)
    b = adjoint_orbit_sample(alg, canonical_line("su2", 2.0), samples=10, seed=3)
    assert np.array_equal(a.points, b.points)


def test_orbit_rejects_nonregular():
    with pytest.raises(NotRegular):
        adjoint_orbit_sample(builtin_algebra("heis"), ComplexLine.from_vector([1, 0, 1j]))
    with pytest.raises(ValueError):
        adjoint_orbit_sample(builtin_algebra("heis"), canonical_line("heis"), samples=0)


def test_heis_and_e2_orbits():
    heis = adjoint_orbit_sample(builtin_algebra("heis"), canonical_line("heis"), samples=50)
    assert heis.max_residual < 1e-12 and heis.invariant_mu is None
    e2 = adjoint_orbit_sample(builtin_algebra("e2"), canonical_line("e2"), samples=50)
    assert e2.max_residual < 1e-9
    assert all(z is not None for z in e2.chart)


@pytest.mark.parametrize("tag,t,rank", [
    ("sl2r", 0.5, 3), ("sl2r", -0.4, 3), ("sl2r", HYPERBOLIC_SPHERICAL, 3), ("su2", 2.0, 3), ("e2", None, 3),
    ("heis", None, 2), ("sl2r", 1.0, 2), ("su2", 1.0, 2),
])
def test_orbit_map_rank(tag, t, rank):
    assert orbit_map_rank(builtin_algebra(tag), canonical_line(tag, t)) == rank


def test_bracket_of_line_with_itself():
    for tag, t in (("sl2r", 0.5), ("su2", 2.0), ("heis", None), ("e2", None)):
        v = canonical_line(tag, t).vector
        assert np.all(bracket(builtin_algebra(tag), v, v) == 0)


# --- models --------------------------------------------------------------------------------------

def test_e2_chart():
    assert np.allclose(e2_chart(canonical_line("e2").vector), oracles.FROZEN["e2_base_chart"])
    with pytest.raises(ChartUndefined):
        e2_chart([1, 1, 0])
    with pytest.raises(ChartUndefined):
        quadric_residual("heis", [1, 1, 0])


def test_quadric_residual_models():
    assert quadric_residual("sl2_elliptic_spherical", [1j, 1]) == pytest.approx(0.0)
    assert quadric_residual("su2_sphere", [0.6, 0.8j]) == pytest.approx(0.0, abs=1e-15)
    assert quadric_residual("heis", [1j, 1]) == 0.0
    assert quadric_residual("e2", [-1j, 0]) == 0.0
    assert quadric_residual("e2", [1, 0, 1j]) == pytest.approx(0.0, abs=1e-15)
    assert quadric_residual("su2_sphere", [1, 1]) == pytest.approx(1.0)
    with pytest.raises(UnknownTag):
        quadric_residual("nil", [1, 1])
    with pytest.raises(ValueError):
        quadric_residual("su2_sphere", [1, 1, 1])


def test_standard_orbits_on_quadrics():
    _, pts = sl2_standard_orbit(samples=100)
    assert max(quadric_residual("sl2_elliptic_spherical", p) for p in pts) < 1e-10
    _, pts = su2_sphere_orbit(canonical_line("su2", 1.0), samples=100)
    assert max(quadric_residual("su2_sphere", p) for p in pts) < 1e-12


@pytest.mark.parametrize("tag,t,model", [
    ("heis", None, "heis"), ("e2", None, "e2"), ("sl2r", 1.0, "sl2_elliptic_spherical"),
    ("su2", 1.0, "su2_sphere"), ("sl2r", 0.5, "sl2r_adjoint"), ("su2", 2.0, "su2_adjoint"),
])
def test_realize(tag, t, model):
    out = realize(tag, t, samples=40)
    assert out.model == model
    assert out.max_residual < 1e-8
    assert len(out.points) > 0
    if model == "sl2r_adjoint":
        assert out.mu == pytest.approx(17.0)
