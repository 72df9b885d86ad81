"""CR-map certificates, adjoint-orbit sampling and explicit hypersurface models.

Chart and convention choices:

* sl2_elliptic_spherical: (z1, z2) = g (i, 1) for g in SL2(R); quadric Im(z1 conj(z2)) = 1.
* su2_sphere: (z1, z2) = g v for g in SU2 and a unit kernel vector v; quadric |z1|^2 + |z2|^2 = 1.
* heis: Heisenberg points (q, w) with w = x + iy and q = -2 Q(x, y, z), where
  rho(x, y, z) e3 = (Q, W, 1); quadric Im(q) = |w|^2.
* e2: adjoint orbit of A + iC in the chart z = (a/c, b/c); quadric
  Im(z1)^2 + Im(z2)^2 = 1 (the sampled orbit satisfies the Im form, not the Re form).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebra3, adjoint_action, as_vector, bracket, group_exp, rep_matrix
from .atlas import builtin_algebra, canonical_line
from .errors import ChartUndefined, NoRepresentation, NotAHomomorphism, NotRegular, UnknownTag
from .line import ComplexLine, classify_line
from .linalg import null_vector
from .tolerances import EXACT_TOL

MODELS = ("sl2_elliptic_spherical", "heis", "e2", "su2_sphere")
SAMPLE_RADIUS = 3.0
CHART_EPS = 1e-12


# --- CR-map criterion ------------------------------------------------------------

def homomorphism_residual(alg: LieAlgebra3, rep_action) -> float:
    reps = [np.asarray(m, dtype=complex) for m in rep_action]
    worst = 0.0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        comm = reps[i] @ reps[j] - reps[j] @ reps[i]
        expected = sum(alg.structure[k, i, j] * reps[k] for k in range(3))
        worst = max(worst, float(np.max(np.abs(comm - expected))))
    return worst


def cr_map_residual(alg: LieAlgebra3, line: ComplexLine, rep_action, u) -> float:
    """||rho'(L) u|| / ||u||; zero iff g -> rho(g) u is a CR map for the structure [L]."""
    reps = [np.asarray(m, dtype=complex) for m in rep_action]
    if len(reps) != 3:
        raise NotAHomomorphism("need one matrix per basis vector")
    scale = max(1.0, max(float(np.max(np.abs(m))) for m in reps)) ** 2
    if homomorphism_residual(alg, reps) > 1e-10 * scale:
        raise NotAHomomorphism("rep_action does not preserve brackets")
    u = np.asarray(u, dtype=complex)
    nu = np.linalg.norm(u)
    if nu == 0.0:
        raise ValueError("u must be nonzero")
    vec = line.vector if isinstance(line, ComplexLine) else as_vector(line)
    m = sum(vec[i] * reps[i] for i in range(3))
    return float(np.linalg.norm(m @ u) / nu)


def kernel_vector(alg: LieAlgebra3, line: ComplexLine, rep_action=None) -> np.ndarray:
    """Unit vector u with rho'(L) u = 0 (smallest right singular vector)."""
    reps = alg.matrix_rep if rep_action is None else rep_action
    if reps is None:
        raise NoRepresentation(f"algebra {alg.name!r} has no matrix representation")
    m = sum(line.vector[i] * np.asarray(reps[i], dtype=complex) for i in range(3))
    v, _ = null_vector(m)
    return v


# --- Heisenberg representation -----------------------------------------------------

def heisenberg_rep_algebra(x) -> np.ndarray:
    """rho'(aA + bB + cC) = [[0, -b - ia, 2c], [0, 0, a + ib], [0, 0, 0]] (complex-linear)."""
    a, b, c = as_vector(x)
    return np.array([[0, -b - 1j * a, 2 * c], [0, 0, a + 1j * b], [0, 0, 0]], dtype=complex)


def heisenberg_rep_generators() -> list[np.ndarray]:
    return [heisenberg_rep_algebra(e) for e in np.eye(3)]


def heisenberg_matrix(x: float, y: float, z: float) -> np.ndarray:
    """Group element (x, y, z) as the upper unitriangular matrix [[1, x, z], [0, 1, y], [0, 0, 1]]."""
    return np.array([[1, x, z], [0, 1, y], [0, 0, 1]], dtype=float)


def heisenberg_rep(x: float, y: float, z: float) -> np.ndarray:
    """rho(x, y, z) = exp(rho'(X)) where exp(X) = (x, y, z)."""
    w = x + 1j * y
    q = 2 * z - x * y - 0.5j * (x * x + y * y)
    return np.array([[1, -1j * np.conj(w), q], [0, 1, w], [0, 0, 1]], dtype=complex)


# Hermitian matrix of |Z2|^2 + i (Z3 conj(Z1) - Z1 conj(Z3))
HEIS_FORM = np.array([[0, 0, 1j], [0, 1, 0], [-1j, 0, 0]])


def hermitian_form(z) -> float:
    z = np.asarray(z, dtype=complex)
    return float(np.real(np.conj(z) @ HEIS_FORM @ z))


@dataclass(frozen=True)
class HeisenbergPoint:
    chart: tuple[complex, complex]  # (Z1, Z2) with Z3 = 1
    form_value: float
    coords: tuple[complex, complex]  # (w, q) with Im q = |w|^2


def heisenberg_embedding(x: float, y: float, z: float) -> HeisenbergPoint:
    col = heisenberg_rep(x, y, z)[:, 2]
    w = complex(col[1])
    q = complex(-2 * col[0])
    return HeisenbergPoint((complex(col[0]), complex(col[1])), hermitian_form(col), (w, q))


def heisenberg_product(g, h) -> tuple[float, float, float]:
    m = heisenberg_matrix(*g) @ heisenberg_matrix(*h)
    return float(m[0, 1]), float(m[1, 2]), float(m[0, 2])


def heisenberg_law(p: tuple[complex, complex], r: tuple[complex, complex]) -> tuple[complex, complex]:
    """(w + w', q + q' + 2i w conj(w')); with p = coords(h), r = coords(g) this is coords(g h)."""
    (w1, q1), (w2, q2) = p, r
    return w1 + w2, q1 + q2 + 2j * w1 * np.conj(w2)


# --- adjoint orbits ---------------------------------------------------------------------

def _ball_samples(rng: np.random.Generator, n: int, radius: float = SAMPLE_RADIUS) -> np.ndarray:
    d = rng.normal(size=(n, 3))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    r = radius * rng.random(n) ** (1.0 / 3.0)
    return d * r[:, None]


def orbit_invariant(tag: str, m: np.ndarray) -> float | None:
    """mu = tr(M conj(M)) / |tr M^2| (sl2r) or tr(M M^dagger) / |tr M^2| (su2); None when tr M^2 = 0."""
    m = np.asarray(m, dtype=complex)
    tr2 = abs(np.trace(m @ m))
    if tr2 <= EXACT_TOL * max(1.0, float(np.sum(np.abs(m) ** 2))):
        return None
    if tag == "sl2r":
        return float(np.real(np.trace(m @ m.conj())) / tr2)
    if tag == "su2":
        return float(np.real(np.trace(m @ m.conj().T)) / tr2)
    return None


def sl2r_mu_closed_form(t: float) -> float:
    return (1 + 6 * t + t * t) / (1 - t) ** 2


def e2_chart(v) -> tuple[complex, complex]:
    a, b, c = as_vector(v)
    if abs(c) <= CHART_EPS * max(1.0, abs(a), abs(b)):
        raise ChartUndefined("e2 chart needs c != 0")
    return complex(a / c), complex(b / c)


@dataclass(frozen=True, eq=False)
class OrbitSample:
    group: str
    params: np.ndarray  # (N, 3) algebra elements X with g = exp(X)
    points: np.ndarray  # (N, 3) unit representatives of [Ad_g L]
    chart: list  # affine coordinates or None per point
    invariant_mu: float | None
    mu_spread: float
    residuals: np.ndarray

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals)) if len(self.residuals) else 0.0

    @property
    def mean_residual(self) -> float:
        return float(np.mean(self.residuals)) if len(self.residuals) else 0.0


def _normalize(v: np.ndarray) -> np.ndarray:
    return ComplexLine.from_vector(v).vector


def _orbit_residual(tag: str, v: np.ndarray, mu0: float | None, ref: np.ndarray) -> tuple[float, object]:
    """Orbit-equation defect and chart coordinates of one unit representative."""
    if tag in ("sl2r", "su2"):
        alg = builtin_algebra(tag)
        m = rep_matrix(alg, v)
        if mu0 is None:
            # null cone: tr M^2 = 0
            return float(abs(np.trace(m @ m))), None
        herm = m.conj() if tag == "sl2r" else m.conj().T
        return float(abs(np.real(np.trace(m @ herm)) - mu0 * abs(np.trace(m @ m)))), None
    if tag == "heis":
        # Ad_g only shifts the central component, so b / a is constant
        return float(abs(v[1] * ref[0] - v[0] * ref[1])), None
    try:
        z = e2_chart(v)
    except ChartUndefined:
        return 0.0, None
    return quadric_residual("e2", z), z


def adjoint_orbit_sample(
    alg: LieAlgebra3,
    line: ComplexLine,
    samples: int = 100,
    seed: int = 42,
    params=None,
    tag: str | None = None,
) -> OrbitSample:
    """Sample [Ad_g L] for g = exp(X), X uniform in the ball of radius 3 (or the given params)."""
    if alg.matrix_rep is None:
        raise NoRepresentation(f"algebra {alg.name!r} has no matrix representation")
    if not classify_line(alg, line).is_regular:
        raise NotRegular("orbit sampling needs a Regular line")
    tag = tag or alg.name
    if params is None:
        if samples < 1:
            raise ValueError("samples must be >= 1")
        params = _ball_samples(np.random.default_rng(seed), samples)
    params = np.asarray(params, dtype=float).reshape(-1, 3)

    mu0 = orbit_invariant(tag, rep_matrix(alg, line.vector)) if tag in ("sl2r", "su2") else None
    points, charts, res, mus = [], [], [], []
    for x in params:
        g = group_exp(alg, x)
        v = _normalize(adjoint_action(alg, g, line.vector))
        points.append(v)
        r, z = _orbit_residual(tag, v, mu0, line.vector)
        res.append(r)
        charts.append(z)
        if mu0 is not None:
            mus.append(orbit_invariant(tag, rep_matrix(alg, v)))
    spread = 0.0
    if mus:
        spread = (max(mus) - min(mus)) / max(1.0, abs(mu0))
    return OrbitSample(tag, params, np.array(points), charts, mu0, float(spread), np.array(res))


def orbit_map_rank(alg: LieAlgebra3, line: ComplexLine, tol: float = 1e-9) -> int:
    """Real rank of the differential at e of g -> [Ad_g L] in P(g_C)."""
    v = line.vector
    cols = []
    for i in range(3):
        w = bracket(alg, np.eye(3)[i], v)
        w = w - np.vdot(v, w) * v  # tangent space of P^2 at [v]
        cols.append(np.concatenate([w.real, w.imag]))
    s = np.linalg.svd(np.array(cols).T, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


# --- explicit models -----------------------------------------------------------------------

def quadric_residual(model: str, point) -> float:
    """Absolute defect of the model's defining equation at a point.

    ``point`` is an affine pair, or for e2 and heis a homogeneous triple that is
    first taken to the model's chart (ChartUndefined if the denominator vanishes).
    """
    p = np.asarray(point, dtype=complex).reshape(-1)
    if model == "e2":
        if len(p) == 3:
            p = np.array(e2_chart(p))
        z1, z2 = p
        return float(abs(z1.imag**2 + z2.imag**2 - 1.0))
    if model == "heis":
        if len(p) == 3:
            if abs(p[2]) <= CHART_EPS * max(1.0, float(np.max(np.abs(p)))):
                raise ChartUndefined("heis chart needs Z3 != 0")
            p = np.array([-2 * p[0] / p[2], p[1] / p[2]])
        q, w = p
        return float(abs(q.imag - abs(w) ** 2))
    if len(p) != 2:
        raise ValueError(f"model {model!r} takes an affine pair")
    z1, z2 = p
    if model == "sl2_elliptic_spherical":
        return float(abs((z1 * np.conj(z2)).imag - 1.0))
    if model == "su2_sphere":
        return float(abs(abs(z1) ** 2 + abs(z2) ** 2 - 1.0))
    raise UnknownTag(f"unknown model {model!r}; expected one of {', '.join(MODELS)}")


def sl2_standard_orbit(samples: int = 100, seed: int = 42) -> tuple[np.ndarray, np.ndarray]:
    """Points g (i, 1) for g = exp(X) in SL2(R); returns (params, points)."""
    alg = builtin_algebra("sl2r")
    params = _ball_samples(np.random.default_rng(seed), samples)
    v = np.array([1j, 1.0])
    pts = np.array([group_exp(alg, x) @ v for x in params])
    return params, pts


def su2_sphere_orbit(line: ComplexLine, samples: int = 100, seed: int = 42) -> tuple[np.ndarray, np.ndarray]:
    """Points g v for g in SU2 and v a unit kernel vector of rho'(L)."""
    alg = builtin_algebra("su2")
    v = kernel_vector(alg, line)
    params = _ball_samples(np.random.default_rng(seed), samples)
    pts = np.array([group_exp(alg, x) @ v for x in params])
    return params, pts


def heisenberg_orbit(samples: int = 100, seed: int = 42) -> tuple[np.ndarray, list[HeisenbergPoint]]:
    params = _ball_samples(np.random.default_rng(seed), samples)
    return params, [heisenberg_embedding(*p) for p in params]


@dataclass(frozen=True)
class RealizationSummary:
    model: str
    samples: int
    mu: float | None
    mu_spread: float
    max_residual: float
    points: list


def realize(tag: str, t: float | None = None, line: ComplexLine | None = None,
            samples: int = 100, seed: int = 42) -> RealizationSummary:
    """Sample the most explicit available model of the structure and report its residuals."""
    if line is None:
        line = canonical_line(tag, t)
    alg = builtin_algebra(tag)
    if tag == "heis":
        _, pts = heisenberg_orbit(samples, seed)
        res = [max(abs(p.form_value), quadric_residual("heis", p.coords[::-1])) for p in pts]
        return RealizationSummary("heis", samples, None, 0.0, float(max(res)), [list(p.coords[::-1]) for p in pts])

    orbit = adjoint_orbit_sample(alg, line, samples, seed, tag=tag)
    if tag == "e2":
        return RealizationSummary("e2", samples, None, 0.0, orbit.max_residual, [z for z in orbit.chart if z is not None])
    if orbit.invariant_mu is None:
        # null cone: the standard representation gives the spherical model
        if tag == "sl2r":
            _, pts = sl2_standard_orbit(samples, seed)
            model = "sl2_elliptic_spherical"
        else:
            _, pts = su2_sphere_orbit(line, samples, seed)
            model = "su2_sphere"
        res = max(quadric_residual(model, p) for p in pts)
        return RealizationSummary(model, samples, None, 0.0, float(max(res, orbit.max_residual)), [list(p) for p in pts])
    return RealizationSummary(
        f"{tag}_adjoint", samples, orbit.invariant_mu, orbit.mu_spread, orbit.max_residual, [list(p) for p in orbit.points]
    )


def expm_oracle_gap(alg: LieAlgebra3, x) -> float:
    """||exp(X) exp(-X) - I|| for the built-in exponential."""
    g = group_exp(alg, x)
    h = group_exp(alg, -np.asarray(x, dtype=float))
    return float(np.max(np.abs(g @ h - np.eye(g.shape[0]))))


__all__ = [
    "MODELS",
    "OrbitSample",
    "RealizationSummary",
    "adjoint_orbit_sample",
    "cr_map_residual",
    "e2_chart",
    "heisenberg_embedding",
    "heisenberg_law",
    "heisenberg_product",
    "heisenberg_rep",
    "heisenberg_rep_algebra",
    "heisenberg_rep_generators",
    "hermitian_form",
    "kernel_vector",
    "orbit_invariant",
    "orbit_map_rank",
    "quadric_residual",
    "realize",
    "sl2_standard_orbit",
    "sl2r_mu_closed_form",
    "su2_sphere_orbit",
]
