"""Isomonodromic layer: jump matrices, exponent matrices, moment data.

The Riemann-Hilbert jump attached to the integrable kernel is
I - f(lam) g^T(lam); its outer-product factor is nilpotent, and
conjugating by the diagonal exponent matrix T(lam) reduces it to a
constant sign pattern per contour component.  The resolvent supplies
the expansion moments Gamma_1, Gamma_2 of the RH solution, which give
log-derivatives of the determinant in every endpoint and every time.
"""

from __future__ import annotations

import numpy as np

from . import airy, pearcey
from .contour import build_airy_system, build_pearcey_system, validate_times
from .fredholm import solve_resolvent
from .gap import airy_gap_probability, pearcey_gap_probability

TWO_PI_I = 2j * np.pi


def _fg_point(process, lam, comp_label, endpoints, times):
    mod = airy if process == "airy" else pearcey
    return mod.fg_matrices(lam, comp_label, endpoints, times)


def jump_matrix(process, lam, comp_label, endpoints, times):
    """Bare outer product f(lam) g^T(lam) on one contour component.

    The Riemann-Hilbert jump is I minus this matrix (the 1/(2 pi i)
    normalization of f cancels the 2 pi i of the jump formula).
    """
    f, g = _fg_point(process, lam, comp_label, endpoints, times)
    return f @ g.T


def exponent_diagonal(process, lam, endpoints, times):
    """Diagonal of the exponent matrix T(lam) as a length-p vector.

    Row 0 holds the mean of all phase values; block row (i, ell) holds
    the mean minus its own phase, so the trace vanishes identically.
    """
    t = validate_times(times)
    phases = []
    if process == "airy":
        for i, ends in enumerate(endpoints.per_time):
            for a in ends:
                phases.append(airy.theta(a, lam - t[i]))
    else:
        for i, ends in enumerate(endpoints.per_time):
            for a in ends:
                phases.append(pearcey.phase(i, a, lam, times))
    mean = sum(phases) / endpoints.p if phases else 0.0
    diag = np.empty(endpoints.p, dtype=complex)
    diag[0] = mean
    for r, ph in enumerate(phases, start=1):
        diag[r] = mean - ph
    return diag


def conjugated_jump(process, lam, comp_label, endpoints, times):
    """e^{-T(lam)} (f g^T)(lam) e^{T(lam)}: constant entries in {0, +-1}.

    Meant for nodes at moderate distance from the apexes; far out in
    the tails the bare outer product under/overflows in double
    precision before the conjugation can cancel it.
    """
    g0 = jump_matrix(process, lam, comp_label, endpoints, times)
    d = exponent_diagonal(process, lam, endpoints, times)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        out = np.exp(d[None, :] - d[:, None]) * g0
    return np.where(g0 == 0, 0.0, out)


def _slot_data(process, endpoints, times, system, gauge):
    if process == "airy":
        return airy._slot_fg(endpoints, times, system, gauge)[:6]
    fbig, gbig, nodes, weights, comp_ids, vec_ids, _ = pearcey._slot_fg(
        endpoints, times, system)
    return fbig, gbig, nodes, weights, comp_ids, vec_ids


def gamma_moments(process, endpoints, times, system=None, m=80,
                  gauge=True, delta=0.5):
    """First two expansion moments of the RH solution.

    Gamma_k = int_gamma F(mu) g^T(mu) mu^{k-1} d mu with F the resolvent
    image of f; the diagonal gauge drops out of the product F g^T.
    """
    t = validate_times(times)
    if system is None:
        if process == "airy":
            system = build_airy_system(
                t, m=m, endpoint_scale=endpoints.max_abs_endpoint())
        else:
            system = build_pearcey_system(
                t, delta=delta, m=m,
                endpoint_scale=endpoints.max_abs_endpoint())
    if process == "airy":
        op = airy.iiks_operator(endpoints, t, system, gauge=gauge)
    else:
        op = pearcey.iiks_operator(endpoints, t, system)
    fbig, gbig, nodes, weights = _slot_data(
        process, endpoints, t, system, gauge)[:4]
    rhs = fbig.T / TWO_PI_I
    sol = solve_resolvent(op, rhs)
    out = []
    for k in (1, 2):
        wxi = weights * nodes ** (k - 1)
        out.append(np.einsum("s,sp,qs->pq", wxi, sol, gbig))
    return tuple(out)


def _log_det(process, times, endpoints, m, gauge):
    if process == "airy":
        res = airy_gap_probability(times, endpoints, m=m, gauge=gauge)
    else:
        res = pearcey_gap_probability(times, endpoints, m=m)
    return res.log_value.real


def _fd_endpoint(process, endpoints, times, i, ell, h, m, gauge):
    up = _log_det(process, times, endpoints.shifted(i, ell, h), m, gauge)
    dn = _log_det(process, times, endpoints.shifted(i, ell, -h), m, gauge)
    return (up - dn) / (2.0 * h)


def _fd_time(process, endpoints, times, i, h, m, gauge):
    t = np.asarray(times, dtype=float)
    tp, tm = t.copy(), t.copy()
    tp[i] += h
    tm[i] -= h
    up = _log_det(process, tp, endpoints, m, gauge)
    dn = _log_det(process, tm, endpoints, m, gauge)
    return (up - dn) / (2.0 * h)


def _mismatch(fd, formula):
    scale = max(abs(fd), abs(formula), 1e-12)
    return abs(fd - formula) / scale


def airy_derivative_report(endpoints, times, m=80, step=1e-3,
                           tau_step=1e-3, gauge=True):
    """Finite differences of log det against the moment formulas.

    Endpoint derivatives: -(Gamma_1)_qq.  Time derivatives:
    sum_ell (2 tau_i Gamma_1 + Gamma_1^2 - 2 Gamma_2)_qq.
    """
    t = validate_times(times)
    g1, g2 = gamma_moments("airy", endpoints, t, m=m, gauge=gauge)
    g1sq = g1 @ g1
    report = {"a": {}, "tau": {}}
    for i, ends in enumerate(endpoints.per_time):
        for ell in range(len(ends)):
            q = endpoints.row_index(i, ell)
            fd = _fd_endpoint("airy", endpoints, t, i, ell, step, m, gauge)
            formula = -g1[q, q].real
            report["a"][(i, ell)] = {
                "fd": fd, "formula": formula,
                "rel_mismatch": _mismatch(fd, formula)}
        qs = [endpoints.row_index(i, ell) for ell in range(len(ends))]
        fd = _fd_time("airy", endpoints, t, i, tau_step, m, gauge)
        formula = sum((2.0 * t[i] * g1 + g1sq - 2.0 * g2)[q, q].real
                      for q in qs)
        report["tau"][i] = {"fd": fd, "formula": formula,
                            "rel_mismatch": _mismatch(fd, formula)}
    report["max_rel_mismatch"] = max(
        [v["rel_mismatch"] for v in report["a"].values()]
        + [v["rel_mismatch"] for v in report["tau"].values()])
    return report


def pearcey_derivative_report(endpoints, times, m=80, step=1e-3,
                              tau_step=1e-3, delta=0.5):
    """Finite differences against the Pearcey moment formulas.

    Endpoint derivatives: -(Gamma_1)_qq.  Time derivatives:
    (1/2) sum_ell (Gamma_1^2 - 2 Gamma_2)_qq.
    """
    t = validate_times(times)
    g1, g2 = gamma_moments("pearcey", endpoints, t, m=m, delta=delta)
    g1sq = g1 @ g1
    report = {"a": {}, "tau": {}}
    for i, ends in enumerate(endpoints.per_time):
        for ell in range(len(ends)):
            q = endpoints.row_index(i, ell)
            fd = _fd_endpoint("pearcey", endpoints, t, i, ell, step, m, True)
            formula = -g1[q, q].real
            report["a"][(i, ell)] = {
                "fd": fd, "formula": formula,
                "rel_mismatch": _mismatch(fd, formula)}
        qs = [endpoints.row_index(i, ell) for ell in range(len(ends))]
        fd = _fd_time("pearcey", endpoints, t, i, tau_step, m, True)
        formula = 0.5 * sum((g1sq - 2.0 * g2)[q, q].real for q in qs)
        report["tau"][i] = {"fd": fd, "formula": formula,
                            "rel_mismatch": _mismatch(fd, formula)}
    report["max_rel_mismatch"] = max(
        [v["rel_mismatch"] for v in report["a"].values()]
        + [v["rel_mismatch"] for v in report["tau"].values()])
    return report
