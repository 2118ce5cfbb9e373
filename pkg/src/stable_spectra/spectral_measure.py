"""Discrete spectral measures on the unit sphere.

A :class:`DiscreteSpectralMeasure` is a finite weighted set of atoms on the
unit sphere of R^d (``mode="real"``) or of C^d viewed as R^{2d}
(``mode="complex"``). It determines a SaS vector through
``E exp(i <theta, X>) = exp(-sum_m w_m |<theta, s_m>|^alpha)``, where in the
complex case ``<theta, s> = Re sum_i theta_i conj(s_i)``.

Indices of coordinates are 0-based throughout the library.
"""

from dataclasses import dataclass, field
import itertools
import math

import numpy as np
from scipy import optimize

from .errors import ValidationError
from .stable_core import as_alpha, make_rng, _standard_sas

__all__ = [
    "DiscreteSpectralMeasure",
    "AdditivityReport",
    "GridSpec",
    "make_axes_measure",
    "symmetrize",
    "phi",
    "third_derivative",
    "index_triples",
    "check_additivity_condition",
    "sample_vector",
    "model_char_function",
    "empirical_char_function",
]

NORM_TOL = 1e-12
MERGE_TOL = 1e-12
DEFAULT_GRID_VALUES = (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, math.pi, -math.pi)


def _merge_atoms(points, weights, tol=MERGE_TOL):
    keep_pts, keep_w = [], []
    for s, w in zip(points, weights):
        for idx, q in enumerate(keep_pts):
            if np.max(np.abs(q - s)) <= tol:
                keep_w[idx] += w
                break
        else:
            keep_pts.append(s)
            keep_w.append(float(w))
    return keep_pts, keep_w


@dataclass(frozen=True, eq=False)
class DiscreteSpectralMeasure:
    """Finite symmetric-by-convention measure on the unit sphere.

    Parameters
    ----------
    points : array_like, shape (m, d)
        Atom locations; real for ``mode="real"``, complex for ``"complex"``.
    weights : array_like, shape (m,)
        Strictly positive atom masses.
    mode : {"real", "complex"}
    dimension : int, optional
        Needed only when there are no atoms.
    """

    points: np.ndarray
    weights: np.ndarray
    mode: str = "real"
    dimension: int = field(default=None)

    def __post_init__(self):
        if self.mode not in ("real", "complex"):
            raise ValidationError(f"mode must be 'real' or 'complex', got {self.mode!r}")
        dtype = complex if self.mode == "complex" else float
        pts = np.asarray(self.points, dtype=dtype)
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if pts.size == 0:
            if self.dimension is None:
                raise ValidationError("an empty measure needs an explicit dimension")
            d = int(self.dimension)
            pts = np.zeros((0, d), dtype=dtype)
            w = np.zeros(0)
        else:
            pts = np.atleast_2d(pts)
            d = pts.shape[1]
            if self.dimension is not None and int(self.dimension) != d:
                raise ValidationError(
                    f"points have dimension {d}, declared {self.dimension}")
        if pts.shape[0] != w.shape[0]:
            raise ValidationError("points and weights differ in length")
        if np.any(w <= 0) or not np.all(np.isfinite(w)):
            raise ValidationError("atom weights must be finite and > 0")
        norms = np.linalg.norm(pts, axis=1)
        if np.any(np.abs(norms - 1.0) > NORM_TOL):
            worst = float(np.max(np.abs(norms - 1.0)))
            raise ValidationError(f"atom off the unit sphere (|norm - 1| = {worst:.3g})")
        if pts.shape[0]:
            merged_p, merged_w = _merge_atoms(pts, w)
            pts = np.array(merged_p, dtype=dtype)
            w = np.array(merged_w)
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "dimension", d)

    @property
    def n_atoms(self):
        return self.points.shape[0]

    @property
    def total_mass(self):
        return float(self.weights.sum())

    @property
    def is_complex(self):
        return self.mode == "complex"

    def real_points(self):
        """Atoms as real vectors; complex atoms are interleaved ``[re, im, ...]``."""
        if not self.is_complex:
            return self.points
        out = np.empty((self.n_atoms, 2 * self.dimension))
        out[:, 0::2] = self.points.real
        out[:, 1::2] = self.points.imag
        return out

    def is_symmetric(self, tol=1e-9):
        return _pair_partner(self, tol) is not None

    def __repr__(self):
        return (f"DiscreteSpectralMeasure(mode={self.mode!r}, dimension={self.dimension}, "
                f"n_atoms={self.n_atoms}, total_mass={self.total_mass:.6g})")


def _pair_partner(measure, tol=1e-9):
    """Index of the antipodal atom for each atom, or None if some is missing."""
    pts = measure.points
    partner = np.empty(measure.n_atoms, dtype=int)
    for m in range(measure.n_atoms):
        dist = np.max(np.abs(pts + pts[m]), axis=1)
        hits = np.flatnonzero(dist <= tol)
        if hits.size == 0 or abs(measure.weights[hits[0]] - measure.weights[m]) > tol * max(1.0, measure.weights[m]):
            return None
        partner[m] = hits[0]
    return partner


def make_axes_measure(weights):
    """Atoms at ``+e_i`` and ``-e_i`` with mass ``a_i`` each (independent coordinates)."""
    a = np.asarray(weights, dtype=float).reshape(-1)
    if a.size == 0 or np.any(a <= 0):
        raise ValueError("axis weights must be positive")
    d = a.size
    eye = np.eye(d)
    points = np.concatenate([eye, -eye])
    return DiscreteSpectralMeasure(points, np.concatenate([a, a]), "real")


def symmetrize(measure):
    """Split each atom ``(s, w)`` into ``(s, w/2)`` and ``(-s, w/2)``."""
    if measure.n_atoms == 0:
        return measure
    norms = np.linalg.norm(measure.points, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-9):
        raise ValidationError("atom off the unit sphere")
    pts = np.concatenate([measure.points, -measure.points])
    w = np.concatenate([measure.weights, measure.weights]) / 2.0
    return DiscreteSpectralMeasure(pts, w, measure.mode, measure.dimension)


def _theta_as_real(measure, theta):
    """Return theta as a real array of shape (..., d) or (..., 2d)."""
    th = np.asarray(theta)
    if th.shape[-1] != measure.dimension:
        raise ValidationError(
            f"theta has dimension {th.shape[-1]}, measure has {measure.dimension}")
    if not measure.is_complex:
        if np.iscomplexobj(th):
            if np.any(th.imag != 0):
                raise ValidationError("complex theta given for a real measure")
            th = th.real
        return th.astype(float)
    th = th.astype(complex)
    out = np.empty(th.shape[:-1] + (2 * measure.dimension,))
    out[..., 0::2] = th.real
    out[..., 1::2] = th.imag
    return out


def _projection(measure, theta_real):
    # <theta, s> for every atom; Re(theta conj(s)) is the real dot product
    return theta_real @ measure.real_points().T


def phi(measure, theta):
    """Fourier transform ``sum_m w_m cos(<theta, s_m>)`` of the measure."""
    th = _theta_as_real(measure, theta)
    return np.cos(_projection(measure, th)) @ measure.weights


def _triple_products(measure, triples):
    pts = measure.points
    return np.stack([pts[:, i] * pts[:, j] * pts[:, k] for i, j, k in triples], axis=1)


def third_derivative(measure, i, j, k, theta):
    """Third mixed derivative of :func:`phi` in coordinates ``i, j, k``.

    ``sum_m w_m s_i s_j s_k sin(<theta, s_m>)``; in complex mode the
    derivatives are the conjugate Wirtinger-type operators
    ``d/d theta^1 + i d/d theta^2`` and the coordinate products are complex.
    """
    d = measure.dimension
    for idx in (i, j, k):
        if not 0 <= idx < d:
            raise IndexError(f"coordinate index {idx} outside 0..{d - 1}")
    th = _theta_as_real(measure, theta)
    if measure.n_atoms == 0:
        return np.zeros(th.shape[:-1]) if th.ndim > 1 else 0.0
    coeff = measure.weights * _triple_products(measure, [(i, j, k)])[:, 0]
    out = np.sin(_projection(measure, th)) @ coeff
    if not measure.is_complex:
        out = np.real(out)
    return out


def index_triples(d, mode="literal"):
    """Index triples (sorted) checked by the additivity condition.

    ``literal``: every triple that is not of the form (i, i, i);
    ``pairwise_distinct``: only i < j < k.
    """
    if mode == "literal":
        return [t for t in itertools.combinations_with_replacement(range(d), 3)
                if not t[0] == t[1] == t[2]]
    if mode in ("pairwise_distinct", "pairwise"):
        return list(itertools.combinations(range(d), 3))
    raise ValueError(f"unknown triple mode {mode!r}")


@dataclass(frozen=True)
class GridSpec:
    """Theta grid for the additivity checker.

    The full product of ``values`` over every real coordinate (real and
    imaginary parts in complex mode) is used, subsampled at random down to
    ``max_points`` when larger. ``extra_points`` are always included.
    """

    values: tuple = DEFAULT_GRID_VALUES
    extra_points: tuple = ()
    max_points: int = 100_000
    seed: int = 0
    refine: bool = True

    def describe(self, n_coords):
        full = len(self.values) ** n_coords
        return {
            "values": [float(v) for v in self.values],
            "coordinates": n_coords,
            "product_size": full,
            "subsampled": full > self.max_points,
            "max_points": self.max_points,
            "seed": self.seed,
            "extra_points": len(self.extra_points),
            "refine": self.refine,
        }


def _grid_points(measure, spec):
    n_coords = measure.dimension * (2 if measure.is_complex else 1)
    vals = np.asarray(spec.values, dtype=float)
    full = len(vals) ** n_coords
    if full <= spec.max_points:
        grid = np.array(list(itertools.product(vals, repeat=n_coords)), dtype=float)
        grid = grid.reshape(-1, n_coords)
    else:
        rng = make_rng(spec.seed)
        grid = vals[rng.integers(0, len(vals), size=(spec.max_points, n_coords))]
    if spec.extra_points:
        extra = _theta_as_real(measure, np.atleast_2d(np.asarray(spec.extra_points)))
        grid = np.concatenate([grid, extra])
    return grid


@dataclass(frozen=True)
class AdditivityReport:
    max_abs: float
    worst_case: tuple  # (i, j, k, theta) or None
    grid_spec: dict
    passed: bool
    tolerance: float
    mode: str
    n_points: int

    @property
    def pass_(self):
        return self.passed


def _refine(measure, triple, theta0):
    """Local maximisation of |third derivative| started from a grid point."""
    coeff = measure.weights * _triple_products(measure, [triple])[:, 0]
    pts = measure.real_points()

    def neg_sq(x):
        proj = pts @ x
        g = np.sin(proj) @ coeff
        dg = (np.cos(proj) * coeff) @ pts
        val = abs(g) ** 2
        grad = 2.0 * np.real(np.conj(g) * dg)
        return -val, -grad

    res = optimize.minimize(neg_sq, theta0, jac=True, method="BFGS",
                            options={"gtol": 1e-13, "maxiter": 500})
    return math.sqrt(max(-res.fun, 0.0)), res.x


def check_additivity_condition(measure, grid=None, tolerance=1e-10, triple_mode="literal"):
    """Search for non-zero third mixed derivatives of ``phi``.

    Returns an :class:`AdditivityReport` whose ``max_abs`` is the largest
    ``|third_derivative|`` found over the grid (and, if ``grid.refine``, after
    local maximisation from the five worst grid points). The measure passes
    when ``max_abs <= tolerance``.
    """
    spec = GridSpec() if grid is None else grid
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n_coords = measure.dimension * (2 if measure.is_complex else 1)
    triples = index_triples(measure.dimension, triple_mode)
    points = _grid_points(measure, spec)
    described = spec.describe(n_coords)
    mode = "literal" if triple_mode == "literal" else "pairwise_distinct"
    if measure.n_atoms == 0 or not triples:
        return AdditivityReport(0.0, None, described, True, tolerance, mode, len(points))

    coeff = measure.weights[:, None] * _triple_products(measure, triples)
    values = np.abs(np.sin(points @ measure.real_points().T) @ coeff)
    flat_best = int(np.argmax(values))
    p_idx, t_idx = np.unravel_index(flat_best, values.shape)
    best = float(values[p_idx, t_idx])
    worst_triple, worst_point = triples[t_idx], points[p_idx]

    if spec.refine and best > 0.0:
        order = np.argsort(values, axis=None)[::-1][:5]
        for flat in order:
            pi, ti = np.unravel_index(flat, values.shape)
            val, x = _refine(measure, triples[ti], points[pi])
            if val > best:
                best, worst_triple, worst_point = val, triples[ti], x

    theta = np.asarray(worst_point, dtype=float)
    if measure.is_complex:
        theta = theta[0::2] + 1j * theta[1::2]
    worst = (*worst_triple, tuple(theta.tolist()))
    return AdditivityReport(best, worst, described, best <= tolerance, tolerance,
                            mode, len(points))


def _pair_representatives(measure):
    partner = _pair_partner(measure)
    if partner is None:
        raise ValidationError("spectral measure is not symmetric; call symmetrize() first")
    reps = [m for m in range(measure.n_atoms) if m < partner[m]]
    return np.asarray(reps, dtype=int)


def sample_vector(measure, alpha, n, seed, rng=None):
    """Draw ``n`` SaS vectors whose spectral measure is ``measure``.

    ``X = sum_m (2 w_m)^(1/alpha) s_m Z_m`` over one atom of each antipodal
    pair, with ``Z_m`` i.i.d. standard real SaS. Returns an array of shape
    ``(n, d)`` (complex in complex mode).
    """
    a = as_alpha(alpha)
    dtype = complex if measure.is_complex else float
    if measure.n_atoms == 0:
        return np.zeros((n, measure.dimension), dtype=dtype)
    reps = _pair_representatives(measure)
    rng = make_rng(seed) if rng is None else rng
    coef = (2.0 * measure.weights[reps]) ** (1.0 / a)
    z = _standard_sas(a, n * reps.size, rng).reshape(n, reps.size)
    return z @ (coef[:, None] * measure.points[reps])


def model_char_function(measure, alpha, theta):
    """``exp(-sum_m w_m |<theta, s_m>|^alpha)`` (vectorised over leading axes of theta)."""
    a = as_alpha(alpha)
    th = _theta_as_real(measure, theta)
    return np.exp(-(np.abs(_projection(measure, th)) ** a) @ measure.weights)


def empirical_char_function(samples, theta):
    """Sample mean of ``cos <theta, X>`` (the real part of the empirical CF).

    For symmetric laws the imaginary part vanishes in expectation.
    """
    x = np.asarray(samples)
    th = np.atleast_2d(np.asarray(theta))
    if np.iscomplexobj(x) or np.iscomplexobj(th):
        proj = np.real(x @ np.conj(th).T)
    else:
        proj = x @ th.T
    out = np.cos(proj).mean(axis=0)
    return out if np.ndim(theta) > 1 else out[0]
