"""Harmonisable SaS models ``X_t = sum_j exp(i t lambda_j) dxi_j``.

With finitely many frequency atoms the covariation function is the
trigonometric polynomial ``C(s, t) = sum_jk exp(i(s lambda_j - t lambda_k)) F[j, k]``,
so every time average below has a closed form term by term.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .bimeasure import (
    DiscreteBimeasure,
    IncrementLaw,
    bimeasure_from_increments,
    pd_type_check,
)
from .errors import CapabilityError, ValidationError
from .spectral_measure import sample_vector
from .stable_core import as_alpha

__all__ = [
    "HarmonisableModel",
    "ClassificationReport",
    "CoefficientRecord",
    "FejerRecord",
    "covariation_function",
    "classify",
    "detect_period",
    "fourier_coefficient",
    "bohr_coefficient",
    "fejer_average",
    "synthesize_paths",
]

LINE_MERGE_TOL = 1e-9
LATTICE_RTOL = 1e-9
MAX_DIVISOR = 64
PATH_CHUNK = 8192


@dataclass(frozen=True, eq=False)
class HarmonisableModel:
    """Frequencies, bimeasure and (optionally) the increment law behind them.

    The positive-definiteness property of ``F`` is not enforced here; use
    :meth:`pd_report` to check it.
    """

    frequencies: np.ndarray
    bimeasure: DiscreteBimeasure
    alpha: float
    increments: IncrementLaw = field(default=None)

    def __post_init__(self):
        lam = np.asarray(self.frequencies, dtype=float).reshape(-1)
        if not np.allclose(lam, self.bimeasure.frequencies, rtol=0, atol=1e-12) \
                or lam.size != self.bimeasure.n_cells:
            raise ValidationError("bimeasure cells do not match the model frequencies")
        if self.increments is not None and not np.allclose(
                self.increments.frequencies, lam, rtol=0, atol=1e-12):
            raise ValidationError("increment law frequencies do not match the model")
        lam.setflags(write=False)
        object.__setattr__(self, "frequencies", lam)
        object.__setattr__(self, "alpha", as_alpha(self.alpha))

    @classmethod
    def from_increments(cls, law, **kwargs):
        bim = bimeasure_from_increments(law, **kwargs)
        return cls(law.frequencies, bim, law.alpha, law)

    @classmethod
    def from_matrix(cls, frequencies, F, alpha):
        return cls(frequencies, DiscreteBimeasure(frequencies, F), alpha)

    @property
    def F(self):
        return self.bimeasure.F

    def pd_report(self, **kwargs):
        return pd_type_check(self.bimeasure, self.alpha, **kwargs)


def covariation_function(model, s, t):
    """``C(s, t) = [X_s, X_t]_alpha``; broadcasts over array-valued ``s`` and ``t``."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    s, t = np.broadcast_arrays(s, t)
    lam = model.frequencies
    es = np.exp(1j * s[..., None] * lam)
    et = np.exp(-1j * t[..., None] * lam)
    out = np.einsum("...j,jk,...k->...", es, model.F, et)
    return out.item() if out.ndim == 0 else out


def _line_table(model, mass_tolerance):
    lam = model.frequencies
    F = model.F
    gammas, masses = [], []
    for j in range(lam.size):
        for k in range(lam.size):
            mag = abs(F[j, k])
            if mag > mass_tolerance:
                gammas.append(lam[j] - lam[k])
                masses.append(mag)
    if not gammas:
        return []
    order = np.argsort(gammas)
    lines = []
    for idx in order:
        g, m = gammas[idx], masses[idx]
        if lines and abs(g - lines[-1][0]) <= LINE_MERGE_TOL:
            lines[-1][1] += m
        else:
            lines.append([g, m])
    # snap lines that are zero up to the merge tolerance
    return [(0.0 if abs(g) <= LINE_MERGE_TOL else float(g), float(m)) for g, m in lines]


def _on_lattice(gamma, gap):
    k = round(gamma / gap)
    return abs(gamma - k * gap) <= LATTICE_RTOL * max(1.0, abs(gamma))


def detect_period(gammas, max_divisor=MAX_DIVISOR):
    """Fundamental period ``T`` with every ``gamma`` in ``(2 pi / T) Z``, or None.

    Candidate gaps are ``min|gamma| / m`` for ``m = 1..max_divisor``; the
    largest consistent gap wins. Returns ``inf`` when every gamma is zero.
    """
    nonzero = [g for g in gammas if abs(g) > LINE_MERGE_TOL]
    if not nonzero:
        return math.inf
    g_min = min(abs(g) for g in nonzero)
    for m in range(1, max_divisor + 1):
        gap = g_min / m
        if all(_on_lattice(g, gap) for g in nonzero):
            return 2.0 * math.pi / gap
    return None


@dataclass(frozen=True)
class ClassificationReport:
    verdict: str  # "stationary" | "periodic" | "almost_periodic"
    period: float
    line_set: list  # [(gamma, mass), ...] sorted by gamma
    tolerance: float

    @property
    def gammas(self):
        return [g for g, _ in self.line_set]


def classify(model, mass_tolerance=1e-12):
    """Stationary / periodic / almost-periodic verdict from the support of ``F``.

    Lines are the differences ``lambda_j - lambda_k`` carrying
    ``|F[j, k]| > mass_tolerance``. Stationary when only the diagonal line
    remains, periodic when the lines sit on a common lattice ``(2 pi/T) Z``,
    almost periodic otherwise (any finite line set is Bohr almost periodic).
    """
    if mass_tolerance < 0:
        raise ValueError("mass_tolerance must be >= 0")
    lines = _line_table(model, mass_tolerance)
    gammas = [g for g, _ in lines]
    if all(g == 0.0 for g in gammas):
        return ClassificationReport("stationary", None, lines, mass_tolerance)
    period = detect_period(gammas)
    if period is not None:
        return ClassificationReport("periodic", period, lines, mass_tolerance)
    return ClassificationReport("almost_periodic", None, lines, mass_tolerance)


def _line_sum(model, tau, gamma):
    lam = model.frequencies
    diff = lam[:, None] - lam[None, :]
    mask = np.abs(diff - gamma) <= LATTICE_RTOL * max(1.0, abs(gamma))
    phase = np.exp(1j * tau * lam)[:, None]
    return complex(np.sum(np.where(mask, phase * model.F, 0.0)))


def _time_average(model, tau, gamma, lo, hi):
    # (1/(hi-lo)) int_lo^hi C(t+tau, t) e^{-i gamma t} dt, term by term
    lam = model.frequencies
    delta = lam[:, None] - lam[None, :] - gamma
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    kernel = np.exp(1j * delta * mid) * np.sinc(delta * half / math.pi)
    return complex(np.sum(np.exp(1j * tau * lam)[:, None] * model.F * kernel))


@dataclass(frozen=True)
class CoefficientRecord:
    numeric: complex
    predicted: complex
    analytic: complex


def fourier_coefficient(model, tau, k, T, nodes=24):
    """``k``-th Fourier coefficient of ``t -> C(t + tau, t)`` over one period ``T``.

    ``numeric`` is composite Gauss-Legendre quadrature of the defining
    integral, ``analytic`` the same integral done term by term, and
    ``predicted`` the line sum over pairs with ``lambda_j - lambda_l = 2 pi k / T``.
    The three agree exactly when ``T`` is a period of the model.
    """
    if not T > 0:
        raise ValueError(f"period must be positive, got {T}")
    omega = 2.0 * math.pi * k / T
    lam = model.frequencies
    spread = (np.ptp(lam) if lam.size else 0.0) + abs(omega)
    panels = max(8, int(math.ceil(spread * T / math.pi)) * 2)
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(0.0, T, panels + 1)
    half = 0.5 * np.diff(edges)
    t = (0.5 * (edges[:-1] + edges[1:]))[:, None] + half[:, None] * x
    vals = covariation_function(model, t + tau, t) * np.exp(-1j * omega * t)
    numeric = complex(np.sum(half[:, None] * w * vals) / T)
    return CoefficientRecord(
        numeric=numeric,
        predicted=_line_sum(model, tau, omega),
        analytic=_time_average(model, tau, omega, 0.0, T),
    )


def bohr_coefficient(model, tau, gamma, M):
    """``(1/2M) int_{-M}^{M} C(t + tau, t) e^{-i gamma t} dt`` (exact, term by term).

    Tends to the line sum ``sum_{lambda_j - lambda_l = gamma} e^{i tau lambda_j} F[j, l]``
    as ``M`` grows; off-line terms decay like ``sin(delta M) / (delta M)``.
    """
    if not M > 0:
        raise ValueError(f"horizon must be positive, got {M}")
    return _time_average(model, tau, gamma, -M, M)


@dataclass(frozen=True)
class FejerRecord:
    value: complex
    masked_limit: complex


def fejer_average(model, t, tau, N, T):
    """Average of ``C(t + tau + kT, t + kT)`` over ``k = -N..N`` and its ``N -> inf`` limit.

    The limit keeps only the entries of ``F`` whose line ``lambda_j - lambda_k``
    is a multiple of ``2 pi / T``.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    if not T > 0:
        raise ValueError(f"period must be positive, got {T}")
    shifts = T * np.arange(-N, N + 1)
    value = complex(np.mean(covariation_function(model, t + tau + shifts, t + shifts)))
    lam = model.frequencies
    gap = 2.0 * math.pi / T
    diff = lam[:, None] - lam[None, :]
    on = np.vectorize(lambda g: _on_lattice(g, gap))(diff) if lam.size else np.zeros((0, 0), bool)
    phase = np.exp(1j * (t + tau) * lam)[:, None] * np.exp(-1j * t * lam)[None, :]
    masked = complex(np.sum(np.where(on, phase * model.F, 0.0)))
    return FejerRecord(value, masked)


def synthesize_paths(model, times, n_paths, seed):
    """Sample paths ``X_t = sum_j e^{i t lambda_j} dxi_j`` at the given times.

    Increments are drawn with :func:`~stable_spectra.spectral_measure.sample_vector`
    in fixed-size chunks, each from its own child of ``SeedSequence(seed)``, so
    the output depends only on ``(seed, n_paths)``. Returns an
    ``(n_paths, len(times))`` complex array.
    """
    if model.increments is None:
        raise CapabilityError("model has no increment law; path synthesis unavailable")
    times = np.asarray(times, dtype=float).reshape(-1)
    n_paths = int(n_paths)
    if n_paths < 0:
        raise ValueError("n_paths must be >= 0")
    law = model.increments
    kernel = np.exp(1j * np.outer(law.frequencies, times))
    out = np.empty((n_paths, times.size), dtype=complex)
    n_chunks = -(-n_paths // PATH_CHUNK)
    children = np.random.SeedSequence(int(seed)).spawn(n_chunks)
    for c, child in enumerate(children):
        lo = c * PATH_CHUNK
        hi = min(n_paths, lo + PATH_CHUNK)
        dxi = sample_vector(law.joint_measure, law.alpha, hi - lo, child)
        out[lo:hi] = dxi @ kernel
    return out
