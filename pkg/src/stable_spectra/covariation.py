"""Covariation of linear forms of a SaS vector and its Monte-Carlo estimation."""

from dataclasses import dataclass

import numpy as np

from .errors import IntegrityError, ValidationError
from .stable_core import as_alpha, s_alpha_iso, s_alpha_real, signed_power

__all__ = [
    "CovariationEstimate",
    "covariation_exact",
    "covariation_norm",
    "additivity_gap",
    "default_moment_order",
    "covariation_estimate",
]


def _linear_form(measure, coeffs):
    c = np.asarray(coeffs)
    if c.shape != (measure.dimension,):
        raise ValidationError(
            f"coefficient vector has shape {c.shape}, expected ({measure.dimension},)")
    # sum_j c_j s_j with complex coordinates s_j in complex mode (no conjugation)
    return measure.points @ c


def covariation_exact(measure, alpha, a, b):
    """``[sum a_j X_j, sum b_j X_j]_alpha`` from the spectral measure.

    ``sum_m w_m <a, s_m> <b, s_m>^<alpha-1>``. Real when the measure and the
    coefficients are real, complex otherwise.
    """
    al = as_alpha(alpha)
    if measure.n_atoms == 0:
        _linear_form(measure, a)
        _linear_form(measure, b)
        return 0.0
    fa = _linear_form(measure, a)
    fb = _linear_form(measure, b)
    value = np.sum(measure.weights * fa * signed_power(fb, al - 1.0))
    if np.iscomplexobj(value) and value.imag == 0 and not (
            measure.is_complex or np.iscomplexobj(a) or np.iscomplexobj(b)):
        value = value.real
    return value.item() if hasattr(value, "item") else value


def covariation_norm(measure, alpha, a):
    """Covariation norm ``[Y, Y]^(1/alpha)`` of ``Y = sum a_j X_j``."""
    al = as_alpha(alpha)
    self_cov = covariation_exact(measure, al, a, a)
    value = complex(self_cov)
    scale = max(1.0, abs(value))
    if value.real < -1e-12 * scale or abs(value.imag) > 1e-10 * scale:
        raise IntegrityError(f"self-covariation {value} is not a non-negative real")
    return max(value.real, 0.0) ** (1.0 / al)


def additivity_gap(measure, alpha, i0, theta):
    """``|[X_i0, sum theta_j X_j] - sum_j [X_i0, theta_j X_j]|``."""
    d = measure.dimension
    if not 0 <= i0 < d:
        raise IndexError(f"index {i0} outside 0..{d - 1}")
    th = np.asarray(theta)
    e = np.zeros(d)
    e[i0] = 1.0
    whole = covariation_exact(measure, alpha, e, th)
    parts = 0.0
    for j in range(d):
        if th[j] == 0:
            continue
        single = np.zeros(d, dtype=th.dtype)
        single[j] = th[j]
        parts = parts + covariation_exact(measure, alpha, e, single)
    return float(abs(whole - parts))


@dataclass(frozen=True)
class CovariationEstimate:
    value: complex
    std_error: float
    n: int
    p: float


def default_moment_order(alpha):
    """``min(1.2, (1 + alpha)/2)``."""
    return min(1.2, 0.5 * (1.0 + as_alpha(alpha)))


def _ratio_estimator(x, y, alpha, p, s_p):
    abs_y_p = np.abs(y) ** p
    denom = abs_y_p.mean()
    if not denom > 0:
        raise ZeroDivisionError("all y samples are zero; covariation undefined")
    numer = np.mean(x * signed_power(y, p - 1.0)) if p > 1 else np.mean(x * _unit(y))
    norm_alpha = (denom / s_p) ** (alpha / p)
    return numer / denom * norm_alpha


def _unit(y):
    # y^<0>: sign for reals, conj(y)/|y| for complex
    if np.iscomplexobj(y):
        mod = np.abs(y)
        return np.where(mod > 0, np.conj(y) / np.where(mod > 0, mod, 1.0), 0.0)
    return np.sign(y)


def covariation_estimate(x_samples, y_samples, alpha, p=None, n_batches=20):
    """Estimate ``[X, Y]_alpha`` from paired draws.

    Uses ``E[X Y^<p-1>] / E|Y|^p = [X, Y] / ||Y||^alpha`` together with
    ``E|Y|^p = S(p) ||Y||^p``. The fractional-moment constant is the real one
    when every ``y`` is real, the isotropic-complex one otherwise. The standard
    error comes from non-overlapping batch means.
    """
    al = as_alpha(alpha)
    p = default_moment_order(al) if p is None else float(p)
    if not 1.0 <= p < al:
        raise ValueError(f"moment order must satisfy 1 <= p < alpha, got {p}")
    x = np.asarray(x_samples)
    y = np.asarray(y_samples)
    if x.shape != y.shape or x.ndim != 1:
        raise ValidationError("x and y must be 1-d arrays of equal length")
    n = x.size
    if n < 2 * n_batches:
        raise ValidationError(f"need at least {2 * n_batches} samples, got {n}")
    if np.iscomplexobj(y) and np.any(y.imag != 0):
        s_p = s_alpha_iso(al, p)
    else:
        y = y.real if np.iscomplexobj(y) else y
        s_p = s_alpha_real(al, p)
    if not np.any(y != 0):
        raise ZeroDivisionError("all y samples are zero; covariation undefined")

    value = _ratio_estimator(x, y, al, p, s_p)
    size = n // n_batches
    batch_vals = []
    for b in range(n_batches):
        sl = slice(b * size, (b + 1) * size)
        try:
            batch_vals.append(_ratio_estimator(x[sl], y[sl], al, p, s_p))
        except ZeroDivisionError:
            batch_vals.append(np.nan)
    batch_vals = np.asarray(batch_vals)
    batch_vals = batch_vals[np.isfinite(batch_vals)]
    spread = np.abs(batch_vals - batch_vals.mean())
    std_error = float(np.sqrt(np.sum(spread ** 2) / (batch_vals.size - 1) / batch_vals.size))
    if np.iscomplexobj(value) and value.imag == 0:
        value = value.real
    return CovariationEstimate(complex(value) if np.iscomplexobj(value) else float(value),
                               std_error, n, p)
