"""Fixed measures, laws and models shared by the test modules."""

import math

import numpy as np

from stable_spectra import (
    DiscreteSpectralMeasure,
    HarmonisableModel,
    IncrementLaw,
    make_axes_measure,
    symmetrize,
)

SEED = 2026
R = math.sqrt(0.5)
SQRT2 = math.sqrt(2.0)


def axes(d):
    return make_axes_measure(np.linspace(0.5, 1.5, d) if d > 1 else [0.5])


def diagonal_pair():
    return DiscreteSpectralMeasure([[R, R], [-R, -R]], [0.5, 0.5])


def single_pair():
    return DiscreteSpectralMeasure([[1.0], [-1.0]], [0.5, 0.5])


def random_real(d=3, n=5, seed=7):
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((n, d))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return symmetrize(DiscreteSpectralMeasure(pts, rng.uniform(0.2, 1.0, n)))


def complex_axes():
    pts = np.array([[1, 0], [-1, 0], [0, 1j], [0, -1j]], dtype=complex)
    return DiscreteSpectralMeasure(pts, [0.5, 0.5, 0.75, 0.75], "complex")


def complex_generic():
    pts = np.array([[1 + 1j, 1 - 1j], [1j, 0.5]], dtype=complex)
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return symmetrize(DiscreteSpectralMeasure(pts, [0.8, 0.4], "complex"))


MEASURES = {
    "axes_d2": lambda: axes(2),
    "axes_d3": lambda: axes(3),
    "diagonal_pair": diagonal_pair,
    "single_pair": single_pair,
    "random_real": random_real,
    "complex_axes": complex_axes,
    "complex_generic": complex_generic,
}


def theta_grid(measure):
    """Nine probe points: three radii along three directions."""
    d = measure.dimension
    e1 = np.eye(d)[0]
    ones = np.ones(d) / math.sqrt(d)
    alt = np.array([(-1.0) ** j for j in range(d)]) / math.sqrt(d)
    if measure.is_complex:
        dirs = [e1.astype(complex), ones * np.exp(1j * math.pi / 3), alt * 1j]
    else:
        dirs = [e1, ones, alt]
    return np.array([r * u for u in dirs for r in (0.5, 1.0, 2.0)])


def axes_law(weights, frequencies, alpha, phases=None):
    """Condition-A law: independent increments, optionally with complex phases."""
    w = np.asarray(weights, dtype=float)
    d = w.size
    if phases is None:
        meas = make_axes_measure(w)
    else:
        rot = np.diag(np.exp(1j * np.asarray(phases)))
        pts = np.concatenate([rot, -rot])
        meas = DiscreteSpectralMeasure(pts, np.concatenate([w, w]), "complex", d)
    return IncrementLaw(frequencies, meas, alpha)


def diagonal_model(alpha=1.5):
    return HarmonisableModel.from_matrix([0.0, 2.0], np.eye(2), alpha)


def lattice_model(alpha=1.5):
    F = np.eye(3, dtype=complex)
    F[0, 2] = F[2, 0] = 0.5
    return HarmonisableModel.from_matrix([0.0, 1.0, 2.0], F, alpha)


def mixed_model(alpha=1.5):
    F = np.eye(3, dtype=complex)
    F[2, 0] = 0.5
    return HarmonisableModel.from_matrix([0.0, 1.0, SQRT2], F, alpha)


def diagonal_law_model(alpha=1.5):
    return HarmonisableModel.from_increments(axes_law([0.5, 0.5], [0.0, 2.0], alpha))


MODELS = {
    "diagonal": diagonal_model,
    "lattice": lattice_model,
    "mixed": mixed_model,
    "diagonal_law": diagonal_law_model,
}
