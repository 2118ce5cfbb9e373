"""JSON readers/writers for measures, increment laws, bimeasures and models; CSV path output."""

import csv
import json

import numpy as np

from .bimeasure import DiscreteBimeasure, IncrementLaw
from .errors import ValidationError
from .harmonisable import HarmonisableModel
from .spectral_measure import DiscreteSpectralMeasure

__all__ = [
    "measure_from_dict",
    "measure_to_dict",
    "law_from_dict",
    "law_to_dict",
    "bimeasure_from_dict",
    "bimeasure_to_dict",
    "model_from_dict",
    "model_to_dict",
    "load_json",
    "dump_json",
    "write_paths_csv",
    "format_number",
]

LOAD_NORM_TOL = 1e-6


def format_number(x):
    """Fixed 15-significant-digit rendering used by every text output."""
    # adding 0.0 maps -0.0 to 0.0
    x = complex(x) + 0.0
    if x.imag == 0:
        return f"{x.real:.15g}"
    sign = "+" if x.imag >= 0 else "-"
    return f"{x.real:.15g}{sign}{abs(x.imag):.15g}j"


def measure_from_dict(obj):
    """Parse ``{"mode", "dimension", "atoms": [{"point", "weight"}]}``.

    Complex points are interleaved ``[re, im, ...]``. Points within 1e-6 of
    the unit sphere are normalised; anything further off is rejected.
    """
    try:
        mode = obj.get("mode", "real")
        d = int(obj["dimension"])
        atoms = obj["atoms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed measure object: {exc}") from None
    pts, ws = [], []
    for atom in atoms:
        raw = np.asarray(atom["point"], dtype=float)
        if mode == "complex":
            if raw.size != 2 * d:
                raise ValidationError(f"complex atom needs {2 * d} numbers, got {raw.size}")
            p = raw[0::2] + 1j * raw[1::2]
        else:
            if raw.size != d:
                raise ValidationError(f"real atom needs {d} numbers, got {raw.size}")
            p = raw
        norm = np.linalg.norm(p)
        if abs(norm - 1.0) > LOAD_NORM_TOL:
            raise ValidationError(f"atom {raw.tolist()} is off the unit sphere (norm {norm})")
        pts.append(p / norm)
        ws.append(float(atom["weight"]))
    return DiscreteSpectralMeasure(pts, ws, mode, d)


def measure_to_dict(measure):
    atoms = []
    for p, w in zip(measure.points, measure.weights):
        if measure.is_complex:
            flat = np.empty(2 * measure.dimension)
            flat[0::2], flat[1::2] = p.real, p.imag
        else:
            flat = p
        atoms.append({"point": [float(v) for v in flat], "weight": float(w)})
    return {"mode": measure.mode, "dimension": measure.dimension, "atoms": atoms}


def law_from_dict(obj, alpha=None):
    """Increment law: ``{"frequencies": [...], "measure": {...}}`` (``alpha`` optional)."""
    try:
        freqs = obj["frequencies"]
        inner = obj.get("measure") or obj.get("joint_measure")
        if inner is None:
            inner = {k: obj[k] for k in ("mode", "dimension", "atoms") if k in obj}
        a = obj.get("alpha", alpha)
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed increment law: {exc}") from None
    if a is None:
        raise ValidationError("increment law needs alpha")
    return IncrementLaw(freqs, measure_from_dict(inner), a)


def law_to_dict(law):
    return {"frequencies": law.frequencies.tolist(), "alpha": law.alpha,
            "measure": measure_to_dict(law.joint_measure)}


def _parse_complex(v):
    if isinstance(v, dict):
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    return complex(v)


def bimeasure_from_dict(obj):
    try:
        freqs = obj["frequencies"]
        F = [[_parse_complex(v) for v in row] for row in obj["F"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed bimeasure: {exc}") from None
    return DiscreteBimeasure(freqs, np.array(F, dtype=complex).reshape(len(freqs), len(freqs)))


def bimeasure_to_dict(bim):
    return {
        "frequencies": bim.frequencies.tolist(),
        "F": [[{"re": float(v.real), "im": float(v.imag)} for v in row] for row in bim.F],
    }


def model_from_dict(obj):
    """``{"alpha", "frequencies", "bimeasure": {...} | null, "increments": {...} | null}``.

    When only increments are given the bimeasure is computed from them.
    """
    try:
        alpha = obj["alpha"]
        freqs = obj["frequencies"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed model: {exc}") from None
    law = None
    if obj.get("increments") is not None:
        law = law_from_dict(obj["increments"], alpha=alpha)
    if obj.get("bimeasure") is not None:
        bim = bimeasure_from_dict(obj["bimeasure"])
    elif law is not None:
        return HarmonisableModel.from_increments(law)
    else:
        raise ValidationError("model needs a bimeasure or an increment law")
    return HarmonisableModel(freqs, bim, alpha, law)


def model_to_dict(model):
    return {
        "alpha": model.alpha,
        "frequencies": model.frequencies.tolist(),
        "bimeasure": bimeasure_to_dict(model.bimeasure),
        "increments": None if model.increments is None else law_to_dict(model.increments),
    }


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def write_paths_csv(fh, times, paths):
    """Write ``path,t,re,im`` rows, one per (path, time)."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["path", "t", "re", "im"])
    for i, row in enumerate(paths):
        for t, x in zip(times, row):
            writer.writerow([i, f"{t + 0.0:.15g}", f"{x.real + 0.0:.15g}", f"{x.imag + 0.0:.15g}"])
