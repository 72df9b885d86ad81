"""Built-in groups (sl2r, su2, heis, e2), their canonical CR families and classification maps."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .algebra import LieAlgebra3, as_vector, construct_algebra
from .coframe import LineInvariants, analyze_line, sphericity_scalar, well_adapt
from .errors import NotRegular, NotSameHalfPlane, RealRoots, SingularParameter, UnknownTag, ZeroLine
from .line import ComplexLine, Regularity, classify_line
from .tolerances import HALF_PLANE_BAND, SPHERICITY_RTOL

TAGS = ("sl2r", "su2", "heis", "e2")


def _e(i: int, j: int, n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=complex)
    m[i, j] = 1.0
    return m


@lru_cache(maxsize=None)
def builtin_algebra(tag: str) -> LieAlgebra3:
    """The four built-in algebras with their defining matrix representations.

    sl2r: A = diag(1,-1), B = E12, C = E21 (matrix [[a, b], [c, -a]]).
    su2:  aA + bB + cC = [[ia, b + ic], [-b + ic, -ia]].
    heis: A = E12, B = E23, C = E13.
    e2:   aA + bB + cC = [[0, -c, a], [c, 0, b], [0, 0, 0]].
    """
    if tag == "sl2r":
        reps = [np.diag([1.0, -1.0]).astype(complex), _e(0, 1, 2), _e(1, 0, 2)]
        brackets = [(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)]
    elif tag == "su2":
        reps = [
            np.array([[1j, 0], [0, -1j]]),
            np.array([[0, 1], [-1, 0]], dtype=complex),
            np.array([[0, 1j], [1j, 0]]),
        ]
        brackets = [(0, 1, 2, 2.0), (1, 2, 0, 2.0), (2, 0, 1, 2.0)]
    elif tag == "heis":
        reps = [_e(0, 1, 3), _e(1, 2, 3), _e(0, 2, 3)]
        brackets = [(0, 1, 2, 1.0)]
    elif tag == "e2":
        reps = [_e(0, 2, 3), _e(1, 2, 3), _e(1, 0, 3) - _e(0, 1, 3)]
        brackets = [(0, 2, 1, -1.0), (1, 2, 0, 1.0)]
    else:
        raise UnknownTag(f"unknown group tag {tag!r}; expected one of {', '.join(TAGS)}")
    return construct_algebra(brackets, ("A", "B", "C"), reps, name=tag)


def _check_tag(tag: str) -> None:
    if tag not in TAGS:
        raise UnknownTag(f"unknown group tag {tag!r}; expected one of {', '.join(TAGS)}")


def canonical_vector(tag: str, t: float | None = None) -> np.ndarray:
    """Unnormalized representative of the canonical line in algebra coordinates."""
    _check_tag(tag)
    if tag == "sl2r":
        t = float(t)
        if t == 0.0 or t == -1.0:
            raise SingularParameter("sl2r family needs t not in {0, -1}")
        return np.array([1j * (1 + t) / 2, t, 1.0])
    if tag == "su2":
        t = float(t)
        if t == 0.0:
            raise SingularParameter("su2 family needs t != 0")
        # [[0, t - 1], [t + 1, 0]] = -B - i t C
        return np.array([0.0, -1.0, -1j * t])
    if tag == "heis":
        return np.array([1.0, 1j, 0.0])
    return np.array([1.0, 0.0, 1j])


def canonical_line(tag: str, t: float | None = None) -> ComplexLine:
    return ComplexLine.from_vector(canonical_vector(tag, t))


def reference_coframe(tag: str, t: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Hand-picked adapted coframe (theta, theta1) for the canonical line.

    Normalizing these with well_adapt gives the standard closed-form triples (for su2
    the sign of phi is flipped, since alpha itself is not well-adapted).
    """
    _check_tag(tag)
    if tag == "sl2r":
        t = float(t)
        canonical_vector(tag, t)
        return np.array([0, 1, -t], dtype=complex), np.array([1, 0, -1j * (1 + t) / 2])
    if tag == "su2":
        t = float(t)
        canonical_vector(tag, t)
        r = np.sqrt(abs(t))
        return np.array([1, 0, 0], dtype=complex), np.array([0, np.sign(t) * r, 1j / r])
    if tag == "heis":
        return np.array([0, 0, 1], dtype=complex), np.array([1, 1j, 0])
    return np.array([0, 1, 0], dtype=complex), np.array([1, 0, 1j]) / np.sqrt(2)


def canonical_invariants(tag: str, t: float | None = None, rtol: float = SPHERICITY_RTOL) -> LineInvariants:
    """Structure triple, Cartan data and sphericity of the canonical line in the reference gauge."""
    return analyze_line(builtin_algebra(tag), canonical_line(tag, t), reference_coframe(tag, t), rtol)


def sigma_at(tag: str, t: float | None) -> complex:
    """Sphericity scalar of the canonical structure in the reference gauge (purely imaginary there)."""
    alg = builtin_algebra(tag)
    return sphericity_scalar(well_adapt(alg, *reference_coframe(tag, t)).triple)


@dataclass(frozen=True)
class SphericalScan:
    roots: tuple[float, ...]
    grid_points: int
    max_real_part: float  # largest |Re sigma| seen; 0 confirms sigma is imaginary on the family


def scan_spherical_parameters(
    tag: str, intervals: list[tuple[float, float]], n: int = 400, xtol: float = 1e-14
) -> SphericalScan:
    """Zeros of sigma(t) on closed intervals: exact grid hits, then brentq on sign changes of Im sigma.

    Interior minima of |sigma| that do not change sign (even-order zeros) are
    refined with a bounded scalar minimization and kept when |sigma| is below
    the sphericity threshold there.
    """
    found: list[float] = []
    max_re = 0.0

    def im_sigma(x: float) -> float:
        return sigma_at(tag, x).imag

    for lo, hi in intervals:
        grid = np.linspace(lo, hi, n)
        vals = np.array([sigma_at(tag, x) for x in grid])
        max_re = max(max_re, float(np.max(np.abs(vals.real))))
        mags = np.abs(vals)
        for x, v in zip(grid, vals):
            if abs(v) < SPHERICITY_RTOL:
                found.append(float(x))
        im = vals.imag
        for k in range(n - 1):
            if im[k] == 0.0 or im[k + 1] == 0.0:
                continue
            if np.sign(im[k]) != np.sign(im[k + 1]):
                found.append(float(brentq(im_sigma, grid[k], grid[k + 1], xtol=xtol, rtol=4 * np.finfo(float).eps)))
        for k in range(1, n - 1):
            if mags[k] <= mags[k - 1] and mags[k] <= mags[k + 1] and np.sign(im[k - 1]) == np.sign(im[k + 1]):
                res = minimize_scalar(
                    lambda x: abs(sigma_at(tag, x)), bounds=(grid[k - 1], grid[k + 1]), method="bounded",
                    options={"xatol": xtol},
                )
                if res.fun < SPHERICITY_RTOL:
                    found.append(float(res.x))
    found.sort()
    merged: list[float] = []
    for x in found:
        if not merged or abs(x - merged[-1]) > 1e-7:
            merged.append(x)
    return SphericalScan(tuple(merged), n * len(intervals), max_re)


# --- root pairs --------------------------------------------------------------------

def to_sl2c(tag: str, x) -> np.ndarray:
    """Entries (a, b, c) of the matrix [[a, b], [c, -a]] representing x in sl2(C)."""
    x = as_vector(x)
    if tag == "sl2r":
        return x.copy()
    if tag == "su2":
        a, b, c = x
        return np.array([1j * a, b + 1j * c, -b + 1j * c])
    raise UnknownTag(f"root pairs are defined for sl2r and su2 only, not {tag!r}")


@dataclass(frozen=True, eq=False)
class RootPair:
    """Unordered zeros of c z1^2 - 2a z1 z2 - b z2^2 as homogeneous [z1 : z2], zeta = z1/z2."""

    points: np.ndarray  # shape (2, 2), each row unit norm
    double: bool

    def affine(self) -> list[complex | None]:
        out: list[complex | None] = []
        for z1, z2 in self.points:
            out.append(None if abs(z2) < 1e-14 * abs(z1) else complex(z1 / z2))
        return out

    def _order(self) -> list[int]:
        vals = self.affine()

        def key(k: int):
            z = vals[k]
            return (z is None, 0.0 if z is None else z.real, 0.0 if z is None else z.imag)

        return sorted(range(2), key=key)

    def sorted_affine(self) -> list[complex | None]:
        vals = self.affine()
        return [vals[k] for k in self._order()]

    def sorted_points(self) -> np.ndarray:
        return self.points[self._order()]


def _unit_homog(z1: complex, z2: complex) -> np.ndarray:
    v = np.array([z1, z2], dtype=complex)
    v = v / np.linalg.norm(v)
    # fix phase: make the larger coordinate real positive
    k = 0 if abs(v[0]) >= abs(v[1]) else 1
    return v * (abs(v[k]) / v[k])


def root_pair(sl2_coords) -> RootPair:
    """Projective roots of p(zeta) = c zeta^2 - 2a zeta - b, including infinity.

    With D^2 = a^2 + bc and m = a +/- D chosen with the larger modulus, the roots
    are [m : c] and [-b : m]; m = 0 only for the double points [0:1] and [1:0].
    """
    a, b, c = as_vector(sl2_coords)
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0.0:
        raise ZeroLine("zero matrix has no roots")
    a, b, c = a / scale, b / scale, c / scale
    disc = np.sqrt(a * a + b * c + 0j)
    m = a + disc if abs(a + disc) >= abs(a - disc) else a - disc
    double = abs(disc) < 1e-8
    if abs(m) < 1e-14:
        pt = _unit_homog(0, 1) if abs(c) >= abs(b) else _unit_homog(1, 0)
        return RootPair(np.array([pt, pt]), True)
    p1 = _unit_homog(m, c)
    p2 = _unit_homog(-b, m)
    return RootPair(np.array([p1, p2]), double)


def poincare_distance(z: complex, w: complex) -> float:
    """Hyperbolic distance for the metric |dz| / |Im z| within one half-plane."""
    if not (z.imag * w.imag > 0):
        raise NotSameHalfPlane(f"{z} and {w} are not in the same open half-plane")
    arg = 1.0 + abs(z - w) ** 2 / (2.0 * abs(z.imag) * abs(w.imag))
    return float(np.arccosh(arg))


def inverse_stereographic(zeta: complex | None) -> np.ndarray:
    """zeta -> (2 zeta, 1 - |zeta|^2) / (1 + |zeta|^2) in C + R = R^3; infinity -> (0, 0, -1)."""
    if zeta is None:
        return np.array([0.0, 0.0, -1.0])
    n = 1.0 + abs(zeta) ** 2
    return np.array([2 * zeta.real / n, 2 * zeta.imag / n, (1.0 - abs(zeta) ** 2) / n])


def homog_to_sphere(p: np.ndarray) -> np.ndarray:
    """Inverse stereographic projection of [z1 : z2], valid at infinity too."""
    z1, z2 = p
    n = abs(z1) ** 2 + abs(z2) ** 2
    w = 2 * z1 * np.conj(z2)
    return np.array([w.real / n, w.imag / n, (abs(z2) ** 2 - abs(z1) ** 2) / n])


def spherical_distance(u: np.ndarray, v: np.ndarray) -> float:
    # atan2 form stays accurate for nearly equal or antipodal points
    return float(np.arctan2(np.linalg.norm(np.cross(u, v)), float(np.dot(u, v))))


# --- classification ------------------------------------------------------------------

class GeometricType(str, enum.Enum):
    ELLIPTIC = "Elliptic"
    HYPERBOLIC = "Hyperbolic"
    UNIQUE = "Unique"


@dataclass(frozen=True, eq=False)
class ClassificationReport:
    regularity: Regularity
    group: str
    type: GeometricType | None
    root_pair: RootPair | None
    distance_invariant: float | None
    canonical_t: float | None
    spherical: bool
    sigma: complex
    borderline: bool = False


def _imag_sign(z: complex) -> int:
    if abs(z.imag) <= HALF_PLANE_BAND:
        raise RealRoots(f"root {z} lies within {HALF_PLANE_BAND:g} of the real axis")
    return 1 if z.imag > 0 else -1


def classify_sl2r_roots(pair: RootPair) -> tuple[GeometricType, float, float]:
    """(type, distance invariant, canonical t) from the root pair of an sl2r line."""
    z1, z2 = pair.affine()
    if z1 is None or z2 is None:
        raise RealRoots("a root sits at infinity, which is real")
    s1, s2 = _imag_sign(z1), _imag_sign(z2)
    if s1 == s2:
        d = 0.0 if pair.double else poincare_distance(z1, z2)
        return GeometricType.ELLIPTIC, d, float(np.exp(-d))
    if abs(z1 - np.conj(z2)) <= HALF_PLANE_BAND * max(1.0, abs(z1)):
        raise RealRoots("conjugate root pair: the line is real")
    d = poincare_distance(z1, np.conj(z2))
    return GeometricType.HYPERBOLIC, d, float(-np.exp(-d))


def classify_su2_roots(pair: RootPair) -> tuple[float, float]:
    """(spherical distance of the roots on S^2, canonical t = 1 / cos(d / 2))."""
    if pair.double:
        return 0.0, 1.0
    u, v = (homog_to_sphere(p) for p in pair.points)
    d = spherical_distance(u, v)
    if np.pi - d <= HALF_PLANE_BAND:
        raise RealRoots("antipodal root pair: the line is real")
    return d, float(1.0 / np.cos(d / 2.0))


def classify(
    tag: str, line: ComplexLine, alg: LieAlgebra3 | None = None, rtol: float = SPHERICITY_RTOL
) -> ClassificationReport:
    """Regularity, geometric type, root pair, distance invariant, canonical t and sphericity.

    For an algebra that is not one of the built-in tags only regularity and
    sphericity are reported (type, roots and parameters are None).
    """
    if alg is None:
        _check_tag(tag)
        alg = builtin_algebra(tag)
    if not isinstance(line, ComplexLine):
        line = ComplexLine.from_vector(line)
    reg = classify_line(alg, line)
    if not reg.is_regular:
        raise NotRegular(f"line is {reg.verdict.value}, not Regular")
    verdict = analyze_line(alg, line, rtol=rtol).verdict

    pair = None
    t_can = None
    kind: GeometricType | None
    dist: float | None
    if tag not in TAGS:
        kind, dist = None, None
    elif tag == "sl2r":
        pair = root_pair(to_sl2c(tag, line.vector))
        kind, dist, t_can = classify_sl2r_roots(pair)
    elif tag == "su2":
        pair = root_pair(to_sl2c(tag, line.vector))
        dist, t_can = classify_su2_roots(pair)
        # su2 has a definite Killing form, so every contact plane is elliptic
        kind = GeometricType.ELLIPTIC
    else:
        kind, dist = GeometricType.UNIQUE, 0.0
    return ClassificationReport(
        regularity=reg.verdict,
        group=tag,
        type=kind,
        root_pair=pair,
        distance_invariant=dist,
        canonical_t=t_can,
        spherical=verdict.spherical,
        sigma=verdict.sigma,
        borderline=reg.borderline,
    )


def spherical_by_parameter(tag: str, t: float | None, tol: float = 1e-9) -> bool:
    """Sphericity predicted from the canonical parameter alone."""
    if tag == "sl2r":
        return abs(t - 1.0) < tol or abs(t - (-3 + 2 * np.sqrt(2))) < tol
    if tag == "su2":
        return abs(t - 1.0) < tol
    return tag == "heis"


# --- automorphism actions ---------------------------------------------------------------

def sl2r_automorphism(g: np.ndarray) -> np.ndarray:
    """Matrix (in A, B, C coordinates) of X -> g X g^-1 for g in GL2(R)."""
    alg = builtin_algebra("sl2r")
    g = np.asarray(g, dtype=float)
    gi = np.linalg.inv(g)
    cols = []
    for i in range(3):
        m = g @ alg.matrix_rep[i] @ gi
        cols.append([m[0, 0], m[0, 1], m[1, 0]])
    return np.array(cols, dtype=complex).T


def su2_automorphism(g: np.ndarray) -> np.ndarray:
    """Matrix of X -> g X g^-1 for g in SU2 (a rotation in SO3)."""
    from .algebra import adjoint_action

    alg = builtin_algebra("su2")
    return np.column_stack([adjoint_action(alg, g, np.eye(3)[i]) for i in range(3)])


def heis_automorphism(t: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Block matrix [[T, 0], [v, det T]] acting on (a, b, c)."""
    t = np.asarray(t, dtype=float)
    m = np.zeros((3, 3))
    m[:2, :2] = t
    m[2, :2] = v
    m[2, 2] = np.linalg.det(t)
    return m.astype(complex)


def e2_automorphism(t: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Block matrix [[T, -eps i(w)], [0, eps]] with T a linear similarity and i(a, b) = (-b, a)."""
    t = np.asarray(t, dtype=float)
    eps = 1.0 if np.linalg.det(t) > 0 else -1.0
    iw = np.array([-w[1], w[0]])
    m = np.zeros((3, 3))
    m[:2, :2] = t
    m[:2, 2] = -eps * iw
    m[2, 2] = eps
    return m.astype(complex)


def _random_gl2(rng: np.random.Generator, max_cond: float) -> np.ndarray:
    while True:
        g = rng.normal(size=(2, 2))
        if np.linalg.cond(g) <= max_cond:
            return g


def random_automorphism(tag: str, rng: np.random.Generator, max_cond: float = 4.0) -> np.ndarray:
    """A random automorphism matrix from the group's explicit automorphism action.

    Linear parts are drawn with condition number at most ``max_cond`` so that
    the transformed lines stay well inside double-precision range.
    """
    _check_tag(tag)
    if tag == "sl2r":
        return sl2r_automorphism(_random_gl2(rng, max_cond))
    if tag == "su2":
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        g = np.array([[q[0] + 1j * q[1], q[2] + 1j * q[3]], [-q[2] + 1j * q[3], q[0] - 1j * q[1]]])
        return su2_automorphism(g)
    if tag == "heis":
        return heis_automorphism(_random_gl2(rng, max_cond), rng.normal(size=2))
    r = np.exp(rng.normal(scale=0.5))
    ang = rng.uniform(0, 2 * np.pi)
    rot = np.array([[np.cos(ang), -np.sin(ang)], [np.sin(ang), np.cos(ang)]])
    if rng.random() < 0.5:
        rot = rot @ np.diag([1.0, -1.0])
    return e2_automorphism(r * rot, rng.normal(size=2))


def apply_automorphism(m: np.ndarray, line: ComplexLine) -> ComplexLine:
    return ComplexLine.from_vector(np.asarray(m) @ line.vector)


def is_automorphism(alg: LieAlgebra3, m: np.ndarray, tol: float = 1e-10) -> bool:
    from .algebra import bracket

    basis = np.eye(3)
    for i in range(3):
        for j in range(3):
            lhs = m @ bracket(alg, basis[i], basis[j])
            rhs = bracket(alg, m @ basis[i], m @ basis[j])
            if np.max(np.abs(lhs - rhs)) > tol * max(1.0, float(np.max(np.abs(m)))) ** 2:
                return False
    return True
