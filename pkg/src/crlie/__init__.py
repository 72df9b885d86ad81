"""Left-invariant CR structures on three-dimensional Lie groups."""

from .algebra import LieAlgebra3, bracket, construct_algebra, killing_form
from .atlas import TAGS, builtin_algebra, canonical_line, classify, root_pair
from .coframe import StructureTriple, adapted_coframe, cartan_data, sphericity, well_adapt
from .errors import CRError
from .line import ComplexLine, Regularity, classify_line, contact_frame

__all__ = [
    "CRError",
    "ComplexLine",
    "LieAlgebra3",
    "Regularity",
    "StructureTriple",
    "TAGS",
    "adapted_coframe",
    "bracket",
    "builtin_algebra",
    "canonical_line",
    "cartan_data",
    "classify",
    "classify_line",
    "construct_algebra",
    "contact_frame",
    "killing_form",
    "root_pair",
    "sphericity",
    "well_adapt",
]
