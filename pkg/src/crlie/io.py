"""JSON encodings: algebra files, line literals and report objects (complex numbers as [re, im])."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import LieAlgebra3, construct_algebra
from .atlas import ClassificationReport, RootPair
from .coframe import LineInvariants
from .line import ComplexLine

_DIGITS = 15


def _clean(x: float) -> float:
    x = float(x)
    if x == 0.0:
        return 0.0  # drop negative zero so output bytes are stable
    return float(f"{x:.{_DIGITS}g}")


def cnum(z) -> list[float]:
    z = complex(z)
    return [_clean(z.real), _clean(z.imag)]


def to_jsonable(obj: Any) -> Any:
    """Recursively convert numpy scalars/arrays and complex numbers to plain JSON values."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return cnum(obj)
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(float(obj)):
            return None
        return _clean(obj)
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)


# --- algebra files -------------------------------------------------------------------

def algebra_from_dict(data: dict, name: str = "file") -> LieAlgebra3:
    basis = data.get("basis", ["A", "B", "C"])
    brackets = data.get("brackets")
    if brackets is None:
        raise ValueError("algebra file needs a 'brackets' list")
    rep = data.get("rep")
    mats = None
    if rep is not None:
        mats = [np.array([[complex(re, im) for re, im in row] for row in m]) for m in rep]
    return construct_algebra(brackets, basis, mats, name=data.get("name", name))


def load_algebra(path: str | Path) -> LieAlgebra3:
    path = Path(path)
    with path.open() as fh:
        data = json.load(fh)
    return algebra_from_dict(data, name=path.stem)


def algebra_to_dict(alg: LieAlgebra3) -> dict:
    entries = []
    c = alg.structure
    for i in range(3):
        for j in range(i + 1, 3):
            for k in range(3):
                if c[k, i, j] != 0.0:
                    entries.append({"i": i, "j": j, "k": k, "v": float(c[k, i, j])})
    out: dict = {"basis": list(alg.basis_names), "brackets": entries, "name": alg.name}
    if alg.matrix_rep is not None:
        out["rep"] = [[[cnum(z) for z in row] for row in m] for m in alg.matrix_rep]
    return out


# --- reports ---------------------------------------------------------------------------

def root_pair_dict(pair: RootPair | None) -> dict | None:
    if pair is None:
        return None
    return {
        "homogeneous": [[cnum(z) for z in p] for p in pair.sorted_points()],
        "affine": [None if z is None else cnum(z) for z in pair.sorted_affine()],
        "double": pair.double,
    }


def classification_dict(rep: ClassificationReport, tol: float) -> dict:
    return {
        "regularity": rep.regularity.value,
        "group": rep.group,
        "type": None if rep.type is None else rep.type.value,
        "root_pair": root_pair_dict(rep.root_pair),
        "distance_invariant": rep.distance_invariant,
        "canonical_t": rep.canonical_t,
        "spherical": rep.spherical,
        "sigma": cnum(rep.sigma),
        "borderline": rep.borderline,
        "tol": tol,
    }


def invariants_dict(inv: LineInvariants, tol: float) -> dict:
    t = inv.triple
    cd = inv.cartan
    return {
        "triple": {"a": cnum(t.a), "b": cnum(t.b), "c": cnum(t.c)},
        "r": cnum(cd.r),
        "s": cnum(cd.s),
        "sigma": cnum(inv.verdict.sigma),
        "spherical": inv.verdict.spherical,
        "residuals": list(cd.residual_norms),
        "gauge": dict(t.gauge),
        "coframe": {"phi": [cnum(z) for z in inv.coframe.phi], "phi1": [cnum(z) for z in inv.coframe.phi1]},
        "tol": tol,
    }


def line_dict(line: ComplexLine) -> list[float]:
    return [_clean(x) for x in line.literal()]
