"""Left-invariant coframes, the structure triple (a, b, c) and Cartan's curvature data.

A coform is a length-3 complex row vector acting on algebra coordinates. For a
left-invariant form, d(omega)(X, Y) = -omega([X, Y]); wedge products follow
(u ^ v)(X, Y) = u(X) v(Y) - u(Y) v(X). Two-forms are stored by their
coefficients on the wedge basis (f0^f1, f0^f2, f1^f2) of a frame (f0, f1, f2).

For a well-adapted coframe (phi, phi1) the frame is (phi, phi1, conj(phi1)), and

    d phi  = i phi1 ^ conj(phi1)
    d phi1 = a phi1 ^ conj(phi1) + b phi ^ phi1 + c phi ^ conj(phi1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import LieAlgebra3, as_vector, bracket, construct_algebra
from .errors import (
    DegenerateContact,
    NotRegular,
    ResidualTooLarge,
    SingularFrame,
    Str2Violation,
)
from .line import ComplexLine, Regularity, classify_line
from .tolerances import EXACT_TOL, RANK_RTOL, RESIDUAL_TOL, SPHERICITY_RTOL

_PAIRS = ((0, 1), (0, 2), (1, 2))


def frame_matrix(phi, phi1) -> np.ndarray:
    """Rows phi, phi1, conj(phi1)."""
    phi1 = as_vector(phi1)
    return np.array([as_vector(phi), phi1, phi1.conj()])


def _dual_basis(frame: np.ndarray) -> np.ndarray:
    frame = np.asarray(frame, dtype=complex)
    if frame.shape != (3, 3):
        raise SingularFrame("a frame is three covectors")
    s = np.linalg.svd(frame, compute_uv=False)
    if s[0] == 0.0 or s[-1] / s[0] < RANK_RTOL:
        raise SingularFrame(f"frame is singular (condition ratio {s[-1] / max(s[0], 1e-300):.2e})")
    return np.linalg.inv(frame)


def d_coefficients(alg: LieAlgebra3, omega, frame) -> np.ndarray:
    """Coefficients of d(omega) on (f0^f1, f0^f2, f1^f2) for the given frame rows."""
    omega = as_vector(omega)
    e = _dual_basis(frame)
    return np.array([-(omega @ bracket(alg, e[:, i], e[:, j])) for i, j in _PAIRS])


# --- two-form algebra in frame coordinates (phi, phi1, conj(phi1)) --------------

def wedge(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.array([u[i] * v[j] - u[j] * v[i] for i, j in _PAIRS])


def conj_frame(x: np.ndarray) -> np.ndarray:
    """Conjugate of a one-form given by coefficients on (phi, phi1, conj(phi1)); phi is real."""
    return np.array([np.conj(x[0]), np.conj(x[2]), np.conj(x[1])])


# --- adapted and well-adapted coframes -----------------------------------------

def adapted_coframe(alg: LieAlgebra3, line: ComplexLine, require_regular: bool = True):
    """Return (theta, theta1) with theta real, theta(L) = theta1(L) = 0 and theta1(conj L) = 1.

    theta is the unit normal of the contact plane, signed so that the contact
    coefficient k of well_adapt is positive. theta1 additionally vanishes on the
    basis vector where |theta| is largest, which fixes the free multiple of theta.
    """
    if not isinstance(line, ComplexLine):
        line = ComplexLine.from_vector(line)
    report = classify_line(alg, line)
    if report.verdict is Regularity.REAL or (require_regular and not report.is_regular):
        raise NotRegular(f"line is {report.verdict.value}, not Regular")
    l1, l2 = line.real_part, line.imag_part
    theta = np.cross(l1, l2)
    theta = theta / np.linalg.norm(theta)
    # k = 2 d theta(L1, L2) = -2 theta([L1, L2]); make it positive
    if theta @ bracket(alg, l1, l2).real > 0:
        theta = -theta
    m = int(np.argmax(np.abs(theta)))
    transversal = np.zeros(3)
    transversal[m] = 1.0
    v = np.column_stack([line.vector, line.vector.conj(), transversal])
    theta1 = np.linalg.inv(v)[1]
    return theta.astype(complex), theta1


@dataclass(frozen=True)
class StructureTriple:
    a: complex
    b: complex
    c: complex
    gauge: dict = field(default_factory=dict, compare=False)

    def scale(self) -> float:
        return 1.0 + abs(self.a) ** 2 + abs(self.b) + abs(self.c)

    def str2_residuals(self) -> tuple[float, float]:
        """(|conj(a) c - a b|, |b + conj(b)|)."""
        a, b, c = self.a, self.b, self.c
        return abs(np.conj(a) * c - a * b), abs(b + np.conj(b))

    def satisfies_str2(self, tol: float = RESIDUAL_TOL) -> bool:
        r1, r2 = self.str2_residuals()
        return r1 < tol * max(1.0, abs(self.a) * (abs(self.b) + abs(self.c))) and r2 < tol * max(1.0, abs(self.b))

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (complex(self.a), complex(self.b), complex(self.c))


@dataclass(frozen=True, eq=False)
class WellAdaptedCoframe:
    phi: np.ndarray
    phi1: np.ndarray
    triple: StructureTriple
    residual: float  # |d phi - i phi1 ^ conj(phi1)|


def structure_triple(alg: LieAlgebra3, phi, phi1) -> tuple[StructureTriple, float]:
    """Read (a, b, c) off d(phi1); also return the well-adaptedness defect of d(phi)."""
    frame = frame_matrix(phi, phi1)
    dphi = d_coefficients(alg, frame[0], frame)
    dphi1 = d_coefficients(alg, frame[1], frame)
    defect = float(np.max(np.abs(dphi - np.array([0.0, 0.0, 1j]))))
    return StructureTriple(a=complex(dphi1[2]), b=complex(dphi1[0]), c=complex(dphi1[1])), defect


def well_adapt(alg: LieAlgebra3, theta, theta1) -> WellAdaptedCoframe:
    """Normalize an adapted coframe to a well-adapted one and extract its structure triple.

    With d theta = i k theta1^conj(theta1) + w theta^theta1 + conj(w) theta^conj(theta1),
    the result is phi = sign(k) theta, phi1 = sqrt|k| (theta1 + mu theta) with
    mu = -i conj(w) / k, so that d phi = i phi1 ^ conj(phi1).
    """
    theta = as_vector(theta)
    theta1 = as_vector(theta1)
    frame = frame_matrix(theta, theta1)
    e = _dual_basis(frame)
    coeffs = d_coefficients(alg, theta, frame)
    k_c = coeffs[2] / 1j
    w = coeffs[0]
    scale = (
        np.linalg.norm(theta)
        * max(1.0, float(np.max(np.abs(alg.structure))))
        * np.linalg.norm(e, 2) ** 2
    )
    if abs(k_c) <= RANK_RTOL * scale:
        raise DegenerateContact(
            f"contact coefficient {abs(k_c):.3e} vanishes: L and conj(L) span a subalgebra"
        )
    if abs(k_c.imag) > 1e-8 * abs(k_c) or abs(coeffs[1] - np.conj(w)) > 1e-8 * scale:
        raise ValueError("theta is not a real contact form for this line")
    k = float(k_c.real)
    s = 1.0 if k > 0 else -1.0
    lam = np.sqrt(abs(k))
    mu = -1j * np.conj(w) / k
    phi = s * theta
    phi1 = lam * (theta1 + mu * theta)
    triple, defect = structure_triple(alg, phi, phi1)
    # rounding in d(phi) grows like the squared condition number of the new frame
    cond = np.linalg.cond(frame_matrix(phi, phi1))
    rounding = EXACT_TOL * max(1.0, float(np.max(np.abs(alg.structure)))) * cond**2
    if defect > rounding:
        raise ResidualTooLarge(f"d phi - i phi1^conj(phi1) = {defect:.3e}")
    triple = StructureTriple(triple.a, triple.b, triple.c, gauge={"k": k, "s": s, "lambda": lam, "mu": complex(mu)})
    if not triple.satisfies_str2(max(RESIDUAL_TOL, rounding)):
        raise Str2Violation(f"integrability residuals (conj(a) c - a b, Re b) {triple.str2_residuals()}")
    return WellAdaptedCoframe(phi, phi1, triple, defect)


# --- Cartan connection and curvature --------------------------------------------

@dataclass(frozen=True)
class CartanData:
    A2: complex
    B2: complex
    C2: complex
    A3: complex
    B3: complex
    C3: complex
    A4: complex
    B4: complex
    C4: complex
    r: complex
    s: complex
    residual_norms: tuple[float, float, float, float, float]
    # fifth equation with the extra -(phi2 + conj phi2) ^ phi4 term of the bundle version
    residual_eq5_global: float = 0.0

    def connection_forms(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """phi2, phi3, phi4 as coefficients on (phi, phi1, conj phi1)."""
        return (
            np.array([self.A2, self.B2, self.C2]),
            np.array([self.A3, self.B3, self.C3]),
            np.array([self.A4, self.B4, self.C4]),
        )


def closed_form_cartan(a: complex, b: complex, c: complex) -> dict:
    """Connection coefficients and curvature of a left-invariant well-adapted coframe."""
    aa = abs(a) ** 2
    ab_ = np.conj(a)
    bb = np.conj(b)
    return dict(
        A2=1j * aa / 2 + 3 * b / 4,
        B2=ab_,
        C2=-a,
        A3=4j * a * b / 3,
        B3=1j * aa / 2 - b / 4,
        C3=-c,
        A4=aa**2 / 4 + abs(b) ** 2 / 16 + 19j * b * aa / 12 - abs(c) ** 2,
        B4=2 * ab_ * b / 3,
        C4=2 * a * bb / 3,
        r=1j * c * (aa / 3 + 3j * b / 2),
        s=ab_ * (3 * abs(b) ** 2 + 2j * aa * b / 3),
    )


# real basis R0 = E0, R1 = E1 + E2, R2 = i (E1 - E2) of the frame dual basis (E0, E1, E2)
_REAL_BASIS = np.array([[1, 0, 0], [0, 1, 1j], [0, 1, -1j]])


def algebra_from_triple(triple: StructureTriple):
    """Realize a triple as a real Lie algebra whose frame (phi, phi1, conj phi1) has these equations.

    Returns (algebra, phi, phi1). Construction fails with JacobiViolation exactly
    when conj(a) c = a b or Re b = 0 fails, since d^2 = 0 is the Jacobi identity.
    """
    a, b, c = triple.as_tuple()
    d_frame = [
        np.array([0, 0, 1j]),
        np.array([b, c, a]),
        np.array([np.conj(c), np.conj(b), -np.conj(a)]),
    ]
    ce = np.zeros((3, 3, 3), dtype=complex)
    for p, (i, j) in enumerate(_PAIRS):
        for k in range(3):
            ce[k, i, j] = -d_frame[k][p]
            ce[k, j, i] = d_frame[k][p]
    pinv = np.linalg.inv(_REAL_BASIS)
    cr = np.einsum("ai,bj,kab,mk->mij", _REAL_BASIS, _REAL_BASIS, ce, pinv)
    if np.max(np.abs(cr.imag)) > EXACT_TOL * max(1.0, float(np.max(np.abs(cr)))):
        raise Str2Violation("triple does not define a real structure")
    alg = construct_algebra(cr.real, basis_names=("R0", "R1", "R2"), name="triple")
    phi = np.array([1, 0, 0], dtype=complex)
    phi1 = np.array([0, 1, 1j], dtype=complex)
    return alg, phi, phi1


def _residual_scale(triple: StructureTriple) -> float:
    return (1.0 + abs(triple.a) + abs(triple.b) + abs(triple.c)) ** 4


def cartan_data(
    triple: StructureTriple,
    alg: LieAlgebra3 | None = None,
    phi=None,
    phi1=None,
    check: bool = True,
) -> CartanData:
    """Closed-form connection and curvature, checked against the five structure equations.

    The left-hand sides d(phi_j) are computed from the Lie bracket with
    d_coefficients, either on the supplied algebra and coframe or on the algebra
    realized from the triple; the right-hand sides are wedge products.
    """
    a, b, c = triple.as_tuple()
    cf = closed_form_cartan(a, b, c)
    if alg is None:
        alg, phi, phi1 = algebra_from_triple(triple)
    frame = frame_matrix(phi, phi1)

    p2 = np.array([cf["A2"], cf["B2"], cf["C2"]])
    p3 = np.array([cf["A3"], cf["B3"], cf["C3"]])
    p4 = np.array([cf["A4"], cf["B4"], cf["C4"]])
    r, s = cf["r"], cf["s"]
    f0, f1, f2 = np.eye(3, dtype=complex)

    def d(form_frame_coords: np.ndarray) -> np.ndarray:
        return d_coefficients(alg, form_frame_coords @ frame, frame)

    p2b, p3b = conj_frame(p2), conj_frame(p3)
    rhs = [
        1j * wedge(f1, f2) - wedge(f0, p2 + p2b),
        -wedge(f1, p2) - wedge(f0, p3),
        2j * wedge(f1, p3b) + 1j * wedge(f2, p3) - wedge(f0, p4),
        -wedge(f1, p4) - wedge(p2b, p3) - r * wedge(f0, f2),
        1j * wedge(p3, p3b) + wedge(s * f1 + np.conj(s) * f2, f0),
    ]
    lhs = [d(f0), d(f1), d(p2), d(p3), d(p4)]
    residuals = tuple(float(np.max(np.abs(x - y))) for x, y in zip(lhs, rhs))
    eq5_global = float(np.max(np.abs(lhs[4] - (rhs[4] - wedge(p2 + p2b, p4)))))

    if check:
        limit = RESIDUAL_TOL * _residual_scale(triple)
        if max(residuals) > limit or eq5_global > limit:
            raise ResidualTooLarge(f"structure-equation residuals {residuals} exceed {limit:.1e}")
    return CartanData(
        **{k: complex(v) for k, v in cf.items()},
        residual_norms=residuals,
        residual_eq5_global=eq5_global,
    )


# --- sphericity and gauge --------------------------------------------------------

@dataclass(frozen=True)
class SphericityVerdict:
    sigma: complex
    spherical: bool
    threshold: float
    r: complex

    @property
    def label(self) -> str:
        return "Spherical" if self.spherical else "Aspherical"


def sphericity_scalar(triple: StructureTriple) -> complex:
    a, b, c = triple.as_tuple()
    return c * (2 * abs(a) ** 2 + 9j * b)


def sphericity(triple: StructureTriple, rtol: float = SPHERICITY_RTOL) -> SphericityVerdict:
    """Spherical iff c (2|a|^2 + 9ib) vanishes, relative to 1 + |a|^2 + |b| + |c|."""
    sigma = sphericity_scalar(triple)
    threshold = rtol * triple.scale()
    r = closed_form_cartan(*triple.as_tuple())["r"]
    gap = abs(r - 1j * sigma / 6)
    if gap > EXACT_TOL * triple.scale() ** 2:
        raise ResidualTooLarge(f"r and i sigma / 6 disagree by {gap:.3e}")
    return SphericityVerdict(complex(sigma), bool(abs(sigma) < threshold), threshold, complex(r))


def gauge_transform(triple: StructureTriple, rho: float, u: float) -> StructureTriple:
    """Triple after phi -> u^2 phi, phi1 -> u e^{i rho} phi1."""
    if not u > 0:
        raise ValueError("gauge scale u must be positive")
    ph = np.exp(1j * rho)
    g = {"rho": float(rho), "u": float(u)}
    return StructureTriple(ph * triple.a / u, triple.b / u**2, ph**2 * triple.c / u**2, gauge=g)


def transform_coframe(phi, phi1, rho: float, u: float) -> tuple[np.ndarray, np.ndarray]:
    return u**2 * as_vector(phi), u * np.exp(1j * rho) * as_vector(phi1)


# --- one-call analysis of a line ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class LineInvariants:
    coframe: WellAdaptedCoframe
    cartan: CartanData
    verdict: SphericityVerdict

    @property
    def triple(self) -> StructureTriple:
        return self.coframe.triple


def analyze_line(
    alg: LieAlgebra3, line: ComplexLine, adapted=None, rtol: float = SPHERICITY_RTOL
) -> LineInvariants:
    """Well-adapted coframe, Cartan data (checked on the algebra itself) and sphericity."""
    if adapted is None:
        adapted = adapted_coframe(alg, line)
    wac = well_adapt(alg, *adapted)
    cd = cartan_data(wac.triple, alg, wac.phi, wac.phi1)
    return LineInvariants(wac, cd, sphericity(wac.triple, rtol))
