"""Scalar symmetric alpha-stable machinery.

Signed powers, alpha-dependent constants, samplers for real and isotropic
complex SaS variables, and numerical checks of the two integral identities
behind the additivity theorem (the sine/cosine power integrals and their
planar analogues).
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np
from scipy import integrate
from scipy.special import gamma

from ._quadrature import (
    QuadratureError,
    one_minus_cos_power_integral,
    sine_power_integral,
)

__all__ = [
    "Alpha",
    "StableConstants",
    "SampleBatch",
    "LemmaCheck",
    "QuadratureError",
    "signed_power",
    "constants",
    "make_rng",
    "sample_sas_real",
    "sample_isotropic_complex",
    "sample_positive_stable",
    "lemma1_check",
    "lemma2_check",
    "lemma2_c",
    "s_alpha_real",
    "s_alpha_iso",
]


@dataclass(frozen=True)
class Alpha:
    """Stability index, restricted to the open interval (1, 2)."""

    value: float

    def __post_init__(self):
        v = float(self.value)
        if not 1.0 < v < 2.0:
            raise ValueError(f"alpha must lie in (1, 2), got {self.value}")
        object.__setattr__(self, "value", v)

    def __float__(self):
        return self.value


def as_alpha(alpha):
    """Coerce a float or :class:`Alpha` to a validated float."""
    if isinstance(alpha, Alpha):
        return alpha.value
    return Alpha(alpha).value


def signed_power(z, beta):
    """Signed power ``z^<beta>``.

    For real ``z`` this is ``sign(z) * |z|**beta``; for complex ``z`` it is
    ``|z|**(beta - 1) * conj(z)``. Zero maps to zero. Works elementwise on
    arrays and returns a Python scalar for scalar input.
    """
    beta = float(beta)
    if not beta > 0.0:
        raise ValueError(f"beta must be positive, got {beta}")
    return _spow(z, beta)


def _spow(z, beta):
    # no range check: the planar identity needs beta = p - 1 < 0 for p < 1
    arr = np.asarray(z)
    if np.iscomplexobj(arr):
        mod = np.abs(arr)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(mod > 0, mod ** (beta - 1.0) * np.conj(arr), 0.0)
        out = out.astype(complex)
    else:
        arr = arr.astype(float)
        out = np.sign(arr) * np.abs(arr) ** beta
    if np.ndim(z) == 0:
        return out.item()
    return out


def _sine_kernel(p):
    # Gamma(1-p) cos(p pi/2) via the reflection formula; finite at p = 1
    return math.pi / (2.0 * gamma(p) * math.sin(0.5 * p * math.pi))


def _mean_abs_cos_power(q):
    # (1/2pi) int_0^{2pi} |cos t|^q dt
    return gamma(0.5 * (q + 1.0)) / (math.sqrt(math.pi) * gamma(0.5 * q + 1.0))


def lemma2_angle_integral(p):
    """``int_0^{2pi} |1 + sin(2 theta)|^(p/2) d theta`` by adaptive quadrature."""
    f = lambda t: abs(1.0 + math.sin(2.0 * t)) ** (0.5 * p)
    # zeros of 1 + sin(2t) sit at 3pi/4 and 7pi/4
    val, _ = integrate.quad(f, 0.0, 2.0 * math.pi,
                            points=[0.75 * math.pi, 1.75 * math.pi],
                            epsabs=1e-14, epsrel=1e-13, limit=200)
    return val


def lemma2_c(p):
    """Constant ``c(p)`` of the planar identity, ``0 < p < 2``."""
    return 2.0 ** (-0.5 * p) * _sine_kernel(p) / p * lemma2_angle_integral(p)


@dataclass(frozen=True)
class StableConstants:
    """Scalars that depend on ``alpha`` (and a moment order ``p``).

    ``s_alpha_real``/``s_alpha_iso`` give ``E|X|^p / ||X||_alpha^p`` for real
    and isotropic complex variables; ``rho_small`` is the normaliser of the
    sine integral identity (defined for ``1 < p < 2``, else NaN); ``c`` and
    ``rho_p`` belong to the planar identity with ``rho_p = 1/(p c(p))``.
    """

    alpha: float
    p: float
    psi_alpha: float
    s_alpha_real: float
    s_alpha_iso: float
    rho_small: float
    c: float
    rho_p: float
    c0: float


def s_alpha_real(alpha, p):
    return (2.0 ** p * gamma(0.5 * (1.0 + p)) * gamma(1.0 - p / alpha)
            / (gamma(1.0 - 0.5 * p) * gamma(0.5)))


def s_alpha_iso(alpha, p):
    return (gamma(0.5 * (2.0 + p)) * gamma(1.0 - p / alpha)
            / gamma(1.0 - 0.5 * p))


def constants(alpha, p=1.0):
    """All alpha-dependent constants at moment order ``p`` (``0 < p < alpha``)."""
    a = as_alpha(alpha)
    p = float(p)
    if not 0.0 < p < a:
        raise ValueError(f"moment order p must lie in (0, alpha={a}), got {p}")
    rho_small = 1.0 / _sine_kernel(p) if 1.0 < p < 2.0 else float("nan")
    c = lemma2_c(p)
    return StableConstants(
        alpha=a,
        p=p,
        psi_alpha=float(gamma(1.0 - 1.0 / a)),
        s_alpha_real=float(s_alpha_real(a, p)),
        s_alpha_iso=float(s_alpha_iso(a, p)),
        rho_small=rho_small,
        c=c,
        rho_p=1.0 / (p * c),
        c0=float(_mean_abs_cos_power(a)),
    )


@dataclass(frozen=True)
class SampleBatch:
    values: np.ndarray
    seed: int
    alpha: float
    scale: float


def make_rng(seed):
    """Counter-based generator for a 64-bit seed (or a spawned SeedSequence)."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.Philox(seed))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))


def _standard_sas(alpha, n, rng):
    # Chambers-Mallows-Stuck, symmetric case: CF exp(-|t|^alpha)
    v = rng.uniform(-0.5 * np.pi, 0.5 * np.pi, n)
    w = rng.standard_exponential(n)
    return (np.sin(alpha * v) / np.cos(v) ** (1.0 / alpha)
            * (np.cos((1.0 - alpha) * v) / w) ** ((1.0 - alpha) / alpha))


def sample_positive_stable(a, n, rng):
    """Positive a-stable draws (0 < a < 1) with Laplace transform exp(-s^a).

    Kanter's representation.
    """
    u = rng.uniform(0.0, np.pi, n)
    w = rng.standard_exponential(n)
    zolotarev = (np.sin(a * u) ** (a / (1.0 - a)) * np.sin((1.0 - a) * u)
                 / np.sin(u) ** (1.0 / (1.0 - a)))
    return (zolotarev / w) ** ((1.0 - a) / a)


def _check_draws(scale, n):
    if scale < 0:
        raise ValueError(f"scale must be non-negative, got {scale}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")


def sample_sas_real(alpha, scale, n, seed, rng=None):
    """I.i.d. real SaS draws with characteristic function ``exp(-scale^a |t|^a)``."""
    a = as_alpha(alpha)
    scale = float(scale)
    _check_draws(scale, n)
    rng = make_rng(seed) if rng is None else rng
    values = scale * _standard_sas(a, n, rng) if scale > 0 else np.zeros(n)
    return SampleBatch(values, seed, a, scale)


def sample_isotropic_complex(alpha, scale, n, seed, rng=None):
    """I.i.d. isotropic complex SaS draws.

    Built as ``sqrt(2A) (G1 + i G2)`` with ``A`` positive (alpha/2)-stable,
    which has ``E exp(i Re(conj(t) Z)) = exp(-|t|^alpha)``; the result is then
    rescaled so that ``E|Z|^p = s_alpha_iso(p) * scale**p``.
    """
    a = as_alpha(alpha)
    scale = float(scale)
    _check_draws(scale, n)
    rng = make_rng(seed) if rng is None else rng
    if scale == 0:
        return SampleBatch(np.zeros(n, dtype=complex), seed, a, scale)
    mix = np.sqrt(2.0 * sample_positive_stable(0.5 * a, n, rng))
    g = rng.standard_normal((2, n))
    z = mix * (g[0] + 1j * g[1])
    # the unit-dispersion variable has E|Z|^p = 2^p s_alpha_iso(p)
    return SampleBatch(0.5 * scale * z, seed, a, scale)


@dataclass(frozen=True)
class LemmaCheck:
    numeric: complex
    closed_form: complex
    abs_err: float
    extra: dict


def lemma1_check(s, p, tol=1e-10):
    """Compare ``int_0^inf sin(s t)/t^p dt`` with ``s^<p-1> / rho_p``.

    Also checks the companion identity
    ``int_0^inf (1 - cos(s t))/t^(p+1) dt = |s|^p Gamma(1-p) cos(p pi/2) / p``,
    reported in ``extra``.
    """
    s = float(s)
    p = float(p)
    if not 1.0 < p < 2.0:
        raise ValueError(f"p must lie in (1, 2), got {p}")
    kernel = _sine_kernel(p)
    numeric, err = sine_power_integral(s, p, tol=tol)
    closed = signed_power(s, p - 1.0) * kernel if s != 0 else 0.0
    cos_numeric, cos_err = one_minus_cos_power_integral(s, p, tol=tol)
    cos_closed = abs(s) ** p * kernel / p
    extra = {
        "quadrature_error": err,
        "cos_numeric": cos_numeric,
        "cos_closed_form": cos_closed,
        "cos_abs_err": abs(cos_numeric - cos_closed),
        "cos_quadrature_error": cos_err,
    }
    return LemmaCheck(numeric, closed, abs(numeric - closed), extra)


def _polar_integral(radial, z, weight=None):
    """``int_0^{2pi} weight(theta) * radial(|z| cos(theta - arg z)) d theta``."""
    modulus = abs(z)
    phase = math.atan2(z.imag, z.real)
    # kinks/singularities where the projection vanishes
    pts = sorted(((phase + 0.5 * math.pi) % (2 * math.pi),
                  (phase + 1.5 * math.pi) % (2 * math.pi)))

    def integrand(theta):
        val = radial(modulus * math.cos(theta - phase))
        return val if weight is None else weight(theta) * val

    total = 0.0 + 0.0j
    edges = [0.0, *pts, 2.0 * math.pi]
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi - lo <= 0:
            continue
        with warnings.catch_warnings():
            # QUADPACK flags the integrable |cos|^(p-1) endpoint singularity
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            part, _ = integrate.quad(integrand, lo, hi, epsabs=1e-11,
                                     epsrel=1e-10, limit=200,
                                     complex_func=weight is not None)
        total += part
    return total


def lemma2_check(z, p, tol=1e-10):
    """Planar identities for complex ``z`` and ``0 < p < 2``.

    ``numeric`` is the polar-coordinate quadrature of
    ``iint (1 - cos Re(x conj z)) / |x|^(p+2) dx`` and ``closed_form`` is
    ``c(p) |z|^p``. The derivative identity
    ``iint sin(Re(x conj z)) / conj(x)^<p+1> dx = p c(p) z^<p-1>`` is reported
    in ``extra`` under ``deriv_numeric`` / ``deriv_closed_form``.
    """
    z = complex(z)
    p = float(p)
    if not 0.0 < p < 2.0:
        raise ValueError(f"p must lie in (0, 2), got {p}")
    if z == 0:
        raise ValueError("z must be non-zero")

    radial_cos = lambda c: one_minus_cos_power_integral(c, p, tol=tol)[0]
    radial_sin = lambda c: sine_power_integral(c, p, tol=tol)[0]
    # in polar form 1/conj(x)^<p+1> * r dr = e^{-i theta} r^{-p} dr
    numeric = _polar_integral(radial_cos, z).real
    deriv_numeric = _polar_integral(radial_sin, z,
                                    weight=lambda t: complex(math.cos(t), -math.sin(t)))

    c = lemma2_c(p)
    closed = c * abs(z) ** p
    deriv_closed = p * c * _spow(z, p - 1.0)
    extra = {
        "c": c,
        "deriv_numeric": deriv_numeric,
        "deriv_closed_form": deriv_closed,
        "deriv_abs_err": abs(deriv_numeric - deriv_closed),
    }
    return LemmaCheck(numeric, closed, abs(numeric - closed), extra)
