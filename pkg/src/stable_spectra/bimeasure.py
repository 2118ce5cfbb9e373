"""Covariation bimeasures over finitely many frequency cells.

An :class:`IncrementLaw` attaches a joint spectral measure to the increments
``(dxi_1, ..., dxi_n)`` over frequency atoms ``lambda_1 < ... < lambda_n``.
The bimeasure is the matrix ``F[j, k] = [dxi_j, dxi_k]_alpha``; every Borel
set reduces to a subset of cells, so ``F(A, B)`` is a block sum and all
suprema over partitions are attained on single cells.
"""

from dataclasses import dataclass, field

import numpy as np

from .covariation import covariation_exact, covariation_norm
from .errors import IntegrityError, ValidationError
from .spectral_measure import check_additivity_condition, DiscreteSpectralMeasure
from .stable_core import as_alpha, make_rng, s_alpha_iso, s_alpha_real, signed_power

__all__ = [
    "IncrementLaw",
    "DiscreteBimeasure",
    "PDTypeReport",
    "bimeasure_from_increments",
    "bilinear_form",
    "pd_type_check",
    "vitali_variation",
    "frechet_type_sup",
    "control_measure_nu",
    "increment_norm",
    "mt_partial",
    "mt_integral",
]


@dataclass(frozen=True, eq=False)
class IncrementLaw:
    """Frequencies plus the joint spectral measure of the increments."""

    frequencies: np.ndarray
    joint_measure: DiscreteSpectralMeasure
    alpha: float

    def __post_init__(self):
        lam = np.asarray(self.frequencies, dtype=float).reshape(-1)
        if lam.size and np.any(np.diff(lam) <= 0):
            raise ValidationError("frequencies must be strictly increasing")
        if self.joint_measure.dimension != lam.size:
            raise ValidationError(
                f"joint measure has dimension {self.joint_measure.dimension}, "
                f"expected {lam.size} (one per frequency)")
        lam.setflags(write=False)
        object.__setattr__(self, "frequencies", lam)
        object.__setattr__(self, "alpha", as_alpha(self.alpha))

    @property
    def n_cells(self):
        return self.frequencies.size

    def condition_a(self, **kwargs):
        """Additivity report for the joint measure (see ``check_additivity_condition``)."""
        return check_additivity_condition(self.joint_measure, **kwargs)


@dataclass(frozen=True, eq=False)
class DiscreteBimeasure:
    """Complex matrix ``F`` over frequency cells.

    ``additive`` records whether the generating law passed the additivity
    check (None when the matrix was given directly).
    """

    frequencies: np.ndarray
    F: np.ndarray
    additive: bool = None
    additivity_report: object = field(default=None, repr=False)

    def __post_init__(self):
        lam = np.asarray(self.frequencies, dtype=float).reshape(-1)
        F = np.asarray(self.F, dtype=complex)
        if F.shape != (lam.size, lam.size):
            raise ValidationError(f"F has shape {F.shape}, expected {(lam.size, lam.size)}")
        lam.setflags(write=False)
        F.setflags(write=False)
        object.__setattr__(self, "frequencies", lam)
        object.__setattr__(self, "F", F)

    @property
    def n_cells(self):
        return self.frequencies.size

    def block(self, rows, cols):
        """``F(A, B)`` for cell-index subsets ``A`` and ``B``."""
        rows = list(rows)
        cols = list(cols)
        if not rows or not cols:
            return 0.0 + 0.0j
        return complex(self.F[np.ix_(rows, cols)].sum())


def bimeasure_from_increments(law, grid=None, tolerance=1e-10):
    """``F[j, k] = [dxi_j, dxi_k]_alpha`` together with the law's additivity status.

    The matrix is returned even when the law fails the additivity check; it
    is then flagged ``additive=False`` and carries no integral-representation
    guarantee.
    """
    n = law.n_cells
    eye = np.eye(n)
    F = np.zeros((n, n), dtype=complex)
    if law.joint_measure.n_atoms:
        for j in range(n):
            for k in range(n):
                F[j, k] = covariation_exact(law.joint_measure, law.alpha, eye[j], eye[k])
    report = law.condition_a(grid=grid, tolerance=tolerance)
    return DiscreteBimeasure(law.frequencies, F, report.passed, report)


def _matrix(F):
    return F.F if isinstance(F, DiscreteBimeasure) else np.asarray(F, dtype=complex)


def bilinear_form(F, z, alpha):
    """``sum_ij z_i z_j^<alpha-1> F[i, j]``."""
    M = _matrix(F)
    al = as_alpha(alpha)
    z = np.asarray(z)
    if z.shape != (M.shape[0],):
        raise ValidationError(f"z has shape {z.shape}, expected ({M.shape[0]},)")
    return complex(z @ M @ signed_power(z, al - 1.0)) if z.size else 0j


@dataclass(frozen=True)
class PDTypeReport:
    passed: bool
    worst_real: float
    worst_imag: float
    worst_z: np.ndarray
    trials: int
    field: str


def pd_type_check(F, alpha, trials=1000, seed=0, field="complex", tol=1e-10):
    """Check ``sum_ij z_i z_j^<alpha-1> F[i, j]`` is real and non-negative.

    Candidates are the unit vectors plus ``trials`` random vectors, complex
    (``field="complex"``, the full property) or real (``field="real"``).
    Tolerances are absolute for values of size <= 1 and relative above.

    With complex ``z`` and 1 < alpha < 2 the imaginary part can only vanish
    identically when ``F`` is diagonal, so any off-diagonal mass fails the
    complex check; ``field="real"`` tests the weaker real-coefficient form.
    """
    M = _matrix(F)
    n = M.shape[0]
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if field not in ("complex", "real"):
        raise ValueError(f"field must be 'complex' or 'real', got {field!r}")
    rng = make_rng(seed)
    cands = [np.eye(n)[j] for j in range(n)]
    for _ in range(trials):
        z = rng.standard_normal(n)
        if field == "complex":
            z = z + 1j * rng.standard_normal(n)
        # spread of magnitudes exercises the |z|^(alpha-2) non-linearity
        cands.append(z * np.exp(rng.uniform(-2, 2, n)))
    values = np.array([bilinear_form(M, z, alpha) for z in cands])
    scale = np.maximum(1.0, np.abs(values))
    re, im = values.real / scale, values.imag / scale
    ok = bool(np.all(re >= -tol) and np.all(np.abs(im) <= tol))
    w = int(np.argmin(re - np.abs(im)))
    worst_re, worst_im, worst_z = re[w], im[w], cands[w]
    return PDTypeReport(ok, float(worst_re), float(worst_im), worst_z, trials, field)


def vitali_variation(F):
    """``sum_jk |F[j, k]|`` (attained on the atomic partition)."""
    return float(np.abs(_matrix(F)).sum())


def frechet_type_sup(F, alpha, search_budget=2000, seed=0):
    """Lower bound for ``sup Re sum a_i a_j^<alpha-1> F[i, j]`` over ``|a_i| <= 1``.

    Returns ``(lower, upper)`` with ``upper = vitali_variation(F)``.
    Candidates: all sign patterns (up to 2**12 of them), random points of the
    polydisc and of its distinguished boundary.
    """
    M = _matrix(F)
    n = M.shape[0]
    if search_budget < 1:
        raise ValueError("search_budget must be >= 1")
    upper = vitali_variation(M)
    if n == 0:
        return 0.0, 0.0
    rng = make_rng(seed)
    best = 0.0
    if n <= 12:
        grid = np.array(np.meshgrid(*[[-1.0, 1.0]] * n, indexing="ij")).reshape(n, -1).T
    else:
        grid = rng.choice([-1.0, 1.0], size=(search_budget, n))
    for a in grid:
        best = max(best, bilinear_form(M, a, alpha).real)
    for _ in range(search_budget):
        phase = np.exp(1j * rng.uniform(0, 2 * np.pi, n))
        for a in (phase, phase * rng.uniform(0, 1, n)):
            best = max(best, bilinear_form(M, a, alpha).real)
    return best, upper


def increment_norm(law, cells):
    """Covariation norm of ``dxi(A) = sum_{j in A} dxi_j``."""
    a = np.zeros(law.n_cells)
    a[list(cells)] = 1.0
    if not np.any(a) or law.joint_measure.n_atoms == 0:
        return 0.0
    return covariation_norm(law.joint_measure, law.alpha, a)


def control_measure_nu(law, cells):
    """``nu(A) = sum_{j in A} E|dxi_j| = S(1) * sum_{j in A} ||dxi_j||_alpha``.

    ``S(1)`` is the real fractional-moment constant for real laws and the
    isotropic one for complex laws.
    """
    cells = list(cells)
    if not cells:
        return 0.0
    s1 = (s_alpha_iso if law.joint_measure.is_complex else s_alpha_real)(law.alpha, 1.0)
    return float(s1 * sum(increment_norm(law, [j]) for j in cells))


def _coeffs(f, n):
    f = np.asarray(f)
    if f.shape != (n,):
        raise ValidationError(f"step function has {f.shape} coefficients, expected {n}")
    return f


def mt_partial(f, cells, F):
    """``sum_j f_j F(A_j, B)``, the integral of ``f`` against ``F(., B)``."""
    M = _matrix(F)
    f = _coeffs(f, M.shape[0])
    cols = list(cells)
    if not cols:
        return 0j
    return complex(f @ M[:, cols].sum(axis=1))


def mt_integral(f, g, F, alpha, rtol=1e-12):
    """Morse-Transue double integral ``sum_jk f_j g_k^<alpha-1> F[j, k]`` of step functions.

    Both iteration orders are evaluated and must agree to ``rtol``.
    """
    M = _matrix(F)
    n = M.shape[0]
    f = _coeffs(f, n)
    g = _coeffs(g, n)
    if n == 0:
        return 0j
    gp = signed_power(g, as_alpha(alpha) - 1.0)
    first = (f @ M) @ gp      # integrate over lambda, then lambda'
    second = f @ (M @ gp)     # integrate over lambda', then lambda
    scale = max(1.0, abs(first), float(np.abs(f) @ np.abs(M) @ np.abs(gp)))
    if abs(first - second) > rtol * scale:
        raise IntegrityError(f"iterated integrals disagree: {first} vs {second}")
    return complex(first)
