"""Complex lines [L] in the complexified algebra and the regular/real/degenerate trichotomy."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebra3, as_vector, bracket
from .errors import NotRegular, ZeroLine
from .linalg import fubini_study_distance, rank_margin
from .tolerances import BORDERLINE_FACTOR, EXACT_TOL, LINE_EQ_TOL, RANK_RTOL


def _normalize(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    v = v / n
    # rotate the first clearly nonzero coordinate to a positive real
    for x in v:
        if abs(x) > 1e-12:
            return v * (abs(x) / x)
    return v


@dataclass(frozen=True, eq=False)
class ComplexLine:
    """A point [L] of P(g_C), stored as a unit representative with a fixed phase."""

    vector: np.ndarray

    @classmethod
    def from_vector(cls, v) -> "ComplexLine":
        v = as_vector(v)
        if np.linalg.norm(v) == 0.0:
            raise ZeroLine("the zero vector does not define a line")
        u = _normalize(v)
        u.setflags(write=False)
        return cls(u)

    @classmethod
    def from_literal(cls, six) -> "ComplexLine":
        """Build from [re_a, im_a, re_b, im_b, re_c, im_c]."""
        vals = [float(x) for x in six]
        if len(vals) != 6:
            raise ValueError("a line literal has exactly six reals")
        return cls.from_vector([complex(vals[0], vals[1]), complex(vals[2], vals[3]), complex(vals[4], vals[5])])

    @property
    def real_part(self) -> np.ndarray:
        return self.vector.real.copy()

    @property
    def imag_part(self) -> np.ndarray:
        return self.vector.imag.copy()

    def conjugate(self) -> "ComplexLine":
        return ComplexLine.from_vector(self.vector.conj())

    def distance(self, other: "ComplexLine") -> float:
        return fubini_study_distance(self.vector, other.vector)

    def same_as(self, other: "ComplexLine", tol: float = LINE_EQ_TOL) -> bool:
        return self.distance(other) < tol

    def literal(self) -> list[float]:
        out: list[float] = []
        for z in self.vector:
            out.extend([float(z.real), float(z.imag)])
        return out


class Regularity(str, enum.Enum):
    REAL = "Real"
    DEGENERATE = "Degenerate"
    REGULAR = "Regular"


@dataclass(frozen=True)
class RegularityReport:
    verdict: Regularity
    determinant: float
    real_margin: float
    degeneracy_margin: float
    borderline: bool

    @property
    def is_regular(self) -> bool:
        return self.verdict is Regularity.REGULAR


def _near(margin: float) -> bool:
    return RANK_RTOL / BORDERLINE_FACTOR < margin < RANK_RTOL * BORDERLINE_FACTOR


def classify_line(alg: LieAlgebra3, line: ComplexLine) -> RegularityReport:
    """Real iff L1, L2 are dependent; Degenerate iff L1, L2, [L1, L2] are dependent; else Regular.

    Margins are smallest/largest singular-value ratios (columns normalized to unit
    length for the degeneracy test); ``determinant`` is det(L1, L2, [L1, L2]).
    """
    if not isinstance(line, ComplexLine):
        line = ComplexLine.from_vector(line)
    l1, l2 = line.real_part, line.imag_part
    br = bracket(alg, l1, l2).real
    det = float(np.linalg.det(np.column_stack([l1, l2, br])))

    real_margin = rank_margin(np.column_stack([l1, l2]))
    if real_margin < RANK_RTOL:
        return RegularityReport(Regularity.REAL, det, real_margin, 0.0, _near(real_margin))

    nb = np.linalg.norm(br)
    if nb <= EXACT_TOL * np.linalg.norm(l1) * np.linalg.norm(l2) * max(1.0, float(np.max(np.abs(alg.structure)))):
        deg_margin = 0.0
    else:
        cols = np.column_stack([l1 / np.linalg.norm(l1), l2 / np.linalg.norm(l2), br / nb])
        deg_margin = rank_margin(cols)
    borderline = _near(real_margin) or _near(deg_margin)
    verdict = Regularity.DEGENERATE if deg_margin < RANK_RTOL else Regularity.REGULAR
    return RegularityReport(verdict, det, real_margin, deg_margin, borderline)


@dataclass(frozen=True, eq=False)
class ContactFrame:
    """Contact plane D_e = span{L1, L2} with J L1 = L2, J L2 = -L1."""

    l1: np.ndarray
    l2: np.ndarray
    j_matrix: np.ndarray
    bracket_vector: np.ndarray

    def normal(self) -> np.ndarray:
        """Real covector annihilating the plane, scaled to unit norm."""
        n = np.cross(self.l1, self.l2)
        return n / np.linalg.norm(n)

    def apply_j(self, x) -> np.ndarray:
        """J on a vector of D_e, via its coordinates in the (L1, L2) basis."""
        basis = np.column_stack([self.l1, self.l2])
        coeffs, *_ = np.linalg.lstsq(basis, np.asarray(x, dtype=float), rcond=None)
        return basis @ (self.j_matrix @ coeffs)


def contact_frame(alg: LieAlgebra3, line: ComplexLine) -> ContactFrame:
    report = classify_line(alg, line)
    if not report.is_regular:
        raise NotRegular(f"line is {report.verdict.value}, not Regular")
    l1, l2 = line.real_part, line.imag_part
    j = np.array([[0.0, -1.0], [1.0, 0.0]])
    return ContactFrame(l1, l2, j, bracket(alg, l1, l2).real)
