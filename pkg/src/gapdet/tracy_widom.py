"""Independent Tracy-Widom oracle on the classical Airy kernel.

This module deliberately avoids the contour machinery used everywhere
else: the Airy function is evaluated from its Maclaurin series (with an
asymptotic branch for large positive argument), the kernel is the
real-line integral K(x,y) = int_0^inf Ai(x+t) Ai(y+t) dt, and the gap
probability on [s, inf) comes from a plain real Nystrom determinant.
It serves as the cross-check for the single-time Airy reduction.
"""

from __future__ import annotations

import math

import numpy as np

from .contour import gauss_legendre_panels

_SER_ASY_SPLIT = 8.0
_MAX_ASY_TERMS = 40


def _ai_series(x):
    """Maclaurin series of Ai, accurate for moderate |x|."""
    x = np.asarray(x, dtype=float)
    a0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)   # Ai(0)
    b0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)  # Ai'(0)
    x3 = x ** 3
    f_term = np.ones_like(x)
    g_term = x.copy()
    f_sum = f_term.copy()
    g_sum = g_term.copy()
    for k in range(60):
        f_term = f_term * x3 / ((3 * k + 2) * (3 * k + 3))
        g_term = g_term * x3 / ((3 * k + 3) * (3 * k + 4))
        f_sum += f_term
        g_sum += g_term
        if max(np.abs(f_term).max(initial=0.0),
               np.abs(g_term).max(initial=0.0)) < 1e-20:
            break
    return a0 * f_sum + b0 * g_sum


def _ai_asymptotic(x):
    """Standard large-x expansion Ai(x) ~ e^{-zeta} S(zeta) / (2 sqrt(pi) x^{1/4})."""
    x = np.asarray(x, dtype=float)
    zeta = (2.0 / 3.0) * x ** 1.5
    s = np.ones_like(x)
    term = np.ones_like(x)
    u = 1.0
    for k in range(1, _MAX_ASY_TERMS):
        u *= (6 * k - 5) * (6 * k - 1) / (72.0 * k)
        new = (-1.0) ** k * u / zeta ** k
        if k > 2 and np.abs(new).max() >= np.abs(term).max():
            break  # past the optimal truncation point
        term = new
        s += term
        if np.abs(term).max() < 1e-22:
            break
    return np.exp(-zeta) * s / (2.0 * math.sqrt(math.pi) * x ** 0.25)


def airy_ai(x):
    """Ai(x) for real x >= about -15, to near machine precision.

    Series evaluation below ``_SER_ASY_SPLIT``, asymptotic expansion
    above; both branches are accurate in the overlap.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    lo = x < _SER_ASY_SPLIT
    if lo.any():
        out[lo] = _ai_series(x[lo])
    if (~lo).any():
        out[~lo] = _ai_asymptotic(x[~lo])
    return float(out[0]) if scalar else out


def airy_kernel_matrix(x, t_cut=18.0, m_t=240):
    """Classical Airy kernel sampled at the points ``x``.

    K(x_i, x_j) = int_0^t_cut Ai(x_i+t) Ai(x_j+t) dt by Gauss-Legendre;
    the superexponential decay of Ai makes the tail negligible.
    """
    x = np.asarray(x, dtype=float)
    t, wt = gauss_legendre_panels(
        t_cut * np.array([0.0, 0.1, 0.25, 0.5, 1.0]), m_t)
    a = airy_ai(x[:, None] + t[None, :]) * np.sqrt(wt)[None, :]
    return a @ a.T


def gap_probability(s, t_cut=18.0, m_x=200, m_t=240):
    """Tracy-Widom F2(s): no-eigenvalue probability on [s, inf).

    Real-line Nystrom determinant of the classical Airy kernel on the
    truncated interval [s, s + t_cut].
    """
    breaks = s + t_cut * np.array([0.0, 0.08, 0.2, 0.45, 1.0])
    x, w = gauss_legendre_panels(breaks, m_x)
    k = airy_kernel_matrix(x, t_cut=t_cut, m_t=m_t)
    sw = np.sqrt(w)
    a = np.eye(len(x)) - sw[:, None] * k * sw[None, :]
    sign, logdet = np.linalg.slogdet(a)
    return float(sign * np.exp(logdet))
