"""Oscillatory improper integrals with algebraic decay.

The integrands handled here change sign on consecutive half-periods of a
sine or cosine and decay like a power of ``t``. The first (possibly
singular) panel is done with QUADPACK's algebraic weight, the remaining
panels with a fixed Gauss-Legendre rule, and the alternating sequence of
partial sums is accelerated with Wynn's epsilon algorithm.
"""

import math

import numpy as np
from scipy import integrate

__all__ = [
    "QuadratureError",
    "wynn_epsilon",
    "alternating_tail",
    "sine_power_integral",
    "one_minus_cos_power_integral",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(40)


class QuadratureError(ArithmeticError):
    """Raised when an oscillatory integral fails to converge."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


def wynn_epsilon(partial_sums):
    """Accelerate a sequence of partial sums.

    Returns ``(estimate, error)`` where ``error`` is the distance between the
    two most recent even-column entries of the epsilon table.
    """
    s = np.asarray(partial_sums, dtype=float)
    n = s.size
    if n < 3:
        return float(s[-1]), float("inf")
    prev = np.zeros(n + 1)
    cur = s.copy()
    best, best_prev = float(s[-1]), float(s[-2])
    for k in range(1, n):
        diff = cur[1:] - cur[:-1]
        with np.errstate(divide="ignore", invalid="ignore"):
            nxt = prev[1 : cur.size] + 1.0 / diff
        if not np.all(np.isfinite(nxt)):
            break
        prev, cur = cur, nxt
        if k % 2 == 0:
            best_prev, best = best, float(cur[-1])
        if cur.size < 2:
            break
    return best, abs(best - best_prev)


def _panel_integrals(f, edges):
    a = edges[:-1, None]
    b = edges[1:, None]
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    t = mid + half * _GL_NODES[None, :]
    return (half[:, 0]) * (f(t) @ _GL_WEIGHTS)


def alternating_tail(f, start, half_period, tol=1e-10, min_panels=24,
                     max_panels=6144):
    """Integrate ``f`` over ``[start, inf)`` panel by panel.

    ``f`` must be vectorised and alternate in sign from one panel
    ``[start + k*h, start + (k+1)*h]`` to the next.
    """
    n = min_panels
    history = []
    while True:
        edges = start + half_period * np.arange(n + 1, dtype=float)
        terms = _panel_integrals(f, edges)
        sums = np.cumsum(terms)
        # Wynn on the last few dozen partial sums is enough and stays stable
        window = sums[-min(n, 40):]
        est, err = wynn_epsilon(window)
        history.append((n, est, err))
        scale = max(1.0, abs(est))
        if err <= tol * scale:
            return est, err
        if len(history) > 1 and abs(est - history[-2][1]) <= tol * scale:
            return est, abs(est - history[-2][1])
        if n >= max_panels:
            raise QuadratureError(
                "alternating tail did not converge",
                {"panels": n, "estimate": est, "error_estimate": err,
                 "history": history},
            )
        n *= 2


def sine_power_integral(s, p, tol=1e-10):
    """Numerically evaluate ``int_0^inf sin(s t) / t**p dt`` for ``0 < p < 2``.

    Returns ``(value, error_estimate)``.
    """
    if not 0.0 < p < 2.0:
        raise ValueError(f"p must lie in (0, 2), got {p}")
    if s == 0.0:
        return 0.0, 0.0
    a = abs(s)
    h = math.pi / a
    # sin(a t)/t is smooth; the t**(1-p) factor goes into the QUADPACK weight
    head, head_err = integrate.quad(
        lambda t: a * np.sinc(a * t / math.pi), 0.0, h,
        weight="alg", wvar=(1.0 - p, 0.0), epsabs=1e-14, epsrel=1e-13,
        limit=200,
    )
    tail, tail_err = alternating_tail(
        lambda t: np.sin(a * t) / t**p, h, h, tol=tol
    )
    value = head + tail
    return math.copysign(value, s), head_err + tail_err


def one_minus_cos_power_integral(s, p, tol=1e-10):
    """Numerically evaluate ``int_0^inf (1 - cos(s t)) / t**(p+1) dt``.

    Valid for ``0 < p < 2``. Returns ``(value, error_estimate)``.
    """
    if not 0.0 < p < 2.0:
        raise ValueError(f"p must lie in (0, 2), got {p}")
    if s == 0.0:
        return 0.0, 0.0
    a = abs(s)
    h0 = 0.5 * math.pi / a

    def smooth(t):
        # (1 - cos(a t)) / t**2 without cancellation
        x = np.sinc(a * t / (2.0 * math.pi))
        return 0.5 * a * a * x * x

    head, head_err = integrate.quad(
        smooth, 0.0, h0, weight="alg", wvar=(1.0 - p, 0.0),
        epsabs=1e-14, epsrel=1e-13, limit=200,
    )
    # int_{h0}^inf t^{-p-1} dt is exact; only the cosine part oscillates
    power_tail = h0 ** (-p) / p
    cos_tail, cos_err = alternating_tail(
        lambda t: np.cos(a * t) / t ** (p + 1.0), h0, 2.0 * h0, tol=tol
    )
    return head + power_tail - cos_tail, head_err + cos_err
