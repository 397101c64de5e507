"""Airy-process kernels.

Physical side: the multi-time matrix kernel A = A_tilde - B, where
A_tilde is a double contour integral of e^{theta(x,mu) - theta(y,lam)}
against a Cauchy factor and B is the Gaussian bridge term, restricted
to per-time interval collections.

Integrable side: the same determinant comes from a kernel
f^T(lam) g(mu) / (lam - mu) on the contour family built by
``contour.build_airy_system``, with vector data assembled here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contour import (
    ContourComponent,
    ContourError,
    QuadratureGrid,
    build_grid,
    gauss_legendre_panels,
    solve_radius,
    validate_times,
)
from .fredholm import DiscreteOperator

TWO_PI_I = 2j * np.pi

DEFAULT_TAIL_CUT = 12.0


def theta(x, mu):
    """Cubic Airy phase mu^3/3 - x*mu (broadcasts over arrays)."""
    mu = np.asarray(mu, dtype=complex) if not np.isscalar(mu) else mu
    return mu ** 3 / 3.0 - x * mu


def gaussian_bridge(i, j, x, y, times):
    """Gaussian bridge entry B_ij(x, y); zero unless tau_i < tau_j."""
    t = validate_times(times)
    dt = t[j] - t[i]
    if dt <= 0:
        return np.zeros(np.broadcast(x, y).shape) if not (
            np.isscalar(x) and np.isscalar(y)) else 0.0
    val = np.exp(dt ** 3 / 12.0 - (np.asarray(x) - np.asarray(y)) ** 2
                 / (4.0 * dt) - dt * (np.asarray(x) + np.asarray(y)) / 2.0)
    return val / np.sqrt(4.0 * np.pi * dt)


class AiryEndpoints:
    """Per-time sorted interval endpoints for the Airy process.

    An odd endpoint count at a time means the trailing interval is
    semi-infinite, [a_k, inf).  Row 0 of the integrable-kernel vectors
    is reserved for the right contour; block i occupies the next k_i
    rows.
    """

    def __init__(self, per_time):
        pt = []
        for ends in per_time:
            e = tuple(float(a) for a in ends)
            if len(e) > 1 and not all(b > a for a, b in zip(e, e[1:])):
                raise ValueError(f"endpoints must be strictly increasing: {e}")
            pt.append(e)
        if not pt:
            raise ValueError("need at least one time entry")
        self.per_time = tuple(pt)

    @property
    def n(self):
        return len(self.per_time)

    @property
    def counts(self):
        return tuple(len(e) for e in self.per_time)

    @property
    def p(self):
        return 1 + sum(self.counts)

    @property
    def offsets(self):
        offs, pos = [], 1
        for k in self.counts:
            offs.append(pos)
            pos += k
        return tuple(offs)

    def signs(self, i):
        """Alternating sign vector (+1, -1, ...) for time i."""
        return np.array([(-1.0) ** ell for ell in range(self.counts[i])])

    def semi_infinite(self, i):
        return self.counts[i] % 2 == 1

    def row_index(self, i, ell):
        """0-based row of endpoint ell (0-based) of time i in the p-space."""
        return self.offsets[i] + ell

    def max_abs_endpoint(self):
        vals = [abs(a) for e in self.per_time for a in e]
        return max(vals) if vals else 0.0

    def min_endpoint(self):
        vals = [a for e in self.per_time for a in e]
        return min(vals) if vals else 0.0

    def shifted(self, i, ell, h):
        """New endpoint set with endpoint (i, ell) moved by h."""
        pt = [list(e) for e in self.per_time]
        pt[i][ell] += h
        return AiryEndpoints(pt)


# ---------------------------------------------------------------------------
# integrable-kernel vector data
# ---------------------------------------------------------------------------

def _gauge_exponent(endpoints, i, lam_i, gauge):
    """log of the row gauge on line component i (zero when disabled)."""
    if not gauge or endpoints.counts[i] == 0:
        return np.zeros_like(lam_i)
    return -endpoints.per_time[i][0] * lam_i


def f_columns(lam, comp_label, i, endpoints, times, gauge=False):
    """Column f_i (bare, without the 1/(2 pi i) prefactor) at nodes ``lam``.

    ``comp_label`` is "gamma_R" or "line_<j>" (1-based j); the chi
    factors select which rows are populated.
    """
    t = validate_times(times)
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    out = np.zeros((endpoints.p, len(lam)), dtype=complex)
    if comp_label == "gamma_R":
        out[0] = np.exp(0.5 * theta(0.0, lam - t[i]))
        return out
    j = int(comp_label.split("_")[1]) - 1
    if j != i:
        return out
    lam_i = lam - t[i]
    gexp = _gauge_exponent(endpoints, i, lam_i, gauge)
    for ell, a in enumerate(endpoints.per_time[i]):
        out[endpoints.row_index(i, ell)] = np.exp(a * lam_i + gexp)
    return out


def g_columns(mu, comp_label, j, endpoints, times, gauge=False):
    """Column g_j (bare) at nodes ``mu`` on the given component."""
    t = validate_times(times)
    mu = np.atleast_1d(np.asarray(mu, dtype=complex))
    out = np.zeros((endpoints.p, len(mu)), dtype=complex)
    if comp_label == "gamma_R":
        mu_j = mu - t[j]
        half = 0.5 * theta(0.0, mu_j)
        for ell, a in enumerate(endpoints.per_time[j]):
            out[endpoints.row_index(j, ell)] = \
                (-1.0) ** ell * np.exp(half - a * mu_j)
        return out
    c = int(comp_label.split("_")[1]) - 1
    if c != j:
        return out
    mu_j = mu - t[j]
    gexp = -_gauge_exponent(endpoints, j, mu_j, gauge)  # columns carry 1/d
    out[0] = np.exp(-theta(0.0, mu_j) + gexp)
    for i in range(j):
        mu_i = mu - t[i]
        for ell, a in enumerate(endpoints.per_time[i]):
            out[endpoints.row_index(i, ell)] = (-1.0) ** ell * np.exp(
                theta(a, mu_i) - theta(0.0, mu_j) + gexp)
    return out


def fg_matrices(lam, comp_label, endpoints, times, gauge=False):
    """All n columns of f and g at a single point: two (p, n) arrays."""
    n = endpoints.n
    f = np.hstack([f_columns(lam, comp_label, i, endpoints, times, gauge)
                   for i in range(n)])
    g = np.hstack([g_columns(lam, comp_label, j, endpoints, times, gauge)
                   for j in range(n)])
    return f, g


def iiks_kernel_entry(lam, mu, comp_lam, comp_mu, endpoints, times):
    """n x n matrix kernel value K(lam, mu); zero on a shared component."""
    if comp_lam == comp_mu:
        return np.zeros((endpoints.n, endpoints.n), dtype=complex)
    f, _ = fg_matrices(lam, comp_lam, endpoints, times)
    _, g = fg_matrices(mu, comp_mu, endpoints, times)
    return (f.T @ g) / (lam - mu) / TWO_PI_I


def block_entry(block, i, j, z_out, z_in, endpoints, times):
    """Bare block-kernel formulas (F, G, H) used for consistency checks.

    The full kernel equals block / (2 pi i) on the matching component
    pair; arguments are (output variable, input variable).
    """
    t = validate_times(times)
    if block == "F":
        return np.exp(0.5 * theta(0.0, z_out - t[i])
                      - theta(0.0, z_in - t[j])) / (z_out - z_in)
    if block == "G":
        if i != j:
            return 0.0
        mu_i = z_in - t[i]
        xi_i = z_out - t[i]
        acc = 0.0
        for ell, a in enumerate(endpoints.per_time[i]):
            acc += (-1.0) ** ell * np.exp(0.5 * theta(0.0, mu_i)
                                          - a * (mu_i - xi_i))
        return acc / (z_out - z_in)
    if block == "H":
        if t[i] >= t[j]:
            return 0.0
        lam_i, lam_j = z_in - t[i], z_in - t[j]
        xi_i = z_out - t[i]
        acc = 0.0
        for ell, a in enumerate(endpoints.per_time[i]):
            acc += (-1.0) ** ell * np.exp(theta(a, lam_i)
                                          - theta(0.0, lam_j) + a * xi_i)
        return acc / (z_out - z_in)
    raise ValueError(f"unknown block {block!r}")


def _system_slots(endpoints, system):
    """Slot arrays (nodes, weights, comp ids, vector ids) for assembly.

    gamma_R carries all n vector components; line j carries only
    component j.
    """
    nodes, weights, comp_ids, vec_ids = [], [], [], []
    for cid, grid in enumerate(system.grids):
        label = grid.component.label
        comps = range(endpoints.n) if label == "gamma_R" else \
            (int(label.split("_")[1]) - 1,)
        for b in comps:
            nodes.append(grid.nodes)
            weights.append(grid.weights)
            comp_ids.append(np.full(len(grid), cid))
            vec_ids.append(np.full(len(grid), b))
    return (np.concatenate(nodes), np.concatenate(weights),
            np.concatenate(comp_ids), np.concatenate(vec_ids))


def _slot_fg(endpoints, times, system, gauge):
    """Bare f/g values per slot: two (p, N_slots) arrays plus slot data."""
    nodes, weights, comp_ids, vec_ids = _system_slots(endpoints, system)
    p, nsl = endpoints.p, len(nodes)
    fbig = np.zeros((p, nsl), dtype=complex)
    gbig = np.zeros((p, nsl), dtype=complex)
    for cid, grid in enumerate(system.grids):
        label = grid.component.label
        for b in set(vec_ids[comp_ids == cid]):
            sel = (comp_ids == cid) & (vec_ids == b)
            fbig[:, sel] = f_columns(nodes[sel], label, int(b),
                                     endpoints, times, gauge)
            gbig[:, sel] = g_columns(nodes[sel], label, int(b),
                                     endpoints, times, gauge)
    return fbig, gbig, nodes, weights, comp_ids, vec_ids


def iiks_operator(endpoints, times, system, gauge=True, symmetrized=True):
    """Discretized integrable-kernel operator on the contour system."""
    fbig, gbig, nodes, weights, comp_ids, vec_ids = _slot_fg(
        endpoints, times, system, gauge)
    num = fbig.T @ gbig
    den = nodes[:, None] - nodes[None, :]
    same = comp_ids[:, None] == comp_ids[None, :]
    den[same] = 1.0  # kernel vanishes identically there
    kmat = num / den / TWO_PI_I
    kmat[same] = 0.0
    meta = dict(system.meta)
    meta.update({"process": "airy", "gauge": gauge, "p": endpoints.p})
    return DiscreteOperator.from_kernel_matrix(
        kmat, nodes, weights, comp_ids, vec_ids,
        symmetrized=symmetrized, meta=meta)


def iiks_tangent_operator(endpoints, times, system, i, ell,
                          gauge=True, symmetrized=True):
    """Endpoint derivative d K / d a_i^(ell) sampled like ``iiks_operator``.

    The gauge factors are held fixed; the similarity commutator they
    generate is traceless and drops out of Jacobi's formula.
    """
    t = validate_times(times)
    fbig, gbig, nodes, weights, comp_ids, vec_ids = _slot_fg(
        endpoints, times, system, gauge)
    a_row = endpoints.row_index(i, ell)
    dfbig = np.zeros_like(fbig)
    dgbig = np.zeros_like(gbig)
    for cid, grid in enumerate(system.grids):
        label = grid.component.label
        sel_all = comp_ids == cid
        if label == "gamma_R":
            sel = sel_all & (vec_ids == i)
            dgbig[a_row, sel] = -(nodes[sel] - t[i]) * gbig[a_row, sel]
        else:
            c = int(label.split("_")[1]) - 1
            if c == i:
                sel = sel_all & (vec_ids == i)
                dfbig[a_row, sel] = (nodes[sel] - t[i]) * fbig[a_row, sel]
            elif c > i:
                sel = sel_all & (vec_ids == c)
                dgbig[a_row, sel] = -(nodes[sel] - t[i]) * gbig[a_row, sel]
    num = dfbig.T @ gbig + fbig.T @ dgbig
    den = nodes[:, None] - nodes[None, :]
    same = comp_ids[:, None] == comp_ids[None, :]
    den[same] = 1.0
    kmat = num / den / TWO_PI_I
    kmat[same] = 0.0
    return DiscreteOperator.from_kernel_matrix(
        kmat, nodes, weights, comp_ids, vec_ids,
        symmetrized=symmetrized, meta={"tangent": ("a", i, ell)})


# ---------------------------------------------------------------------------
# physical kernel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AiryPhysicalContours:
    """Shifted right contours (one per time) and the common left contour."""

    mu_grids: tuple
    lam_grid: QuadratureGrid
    C: float


def physical_contours(times, C=None, m=80, radius=None, eps=1e-16,
                      x_min=0.0):
    """Contours for the physical Airy kernel entries.

    mu runs over gamma_R - tau_i (apex C - tau_i, angles +-pi/3), lam
    over the vertical line deformed to left rays (apex c_L, angles
    +-2pi/3) for cubic decay.  ``x_min`` is the most negative argument
    the kernel will see; it slows the decay linearly.
    """
    t = validate_times(times)
    if C is None:
        C = float(t.max()) + 1.0
    if not C > t.max():
        raise ContourError(f"need C > max(times); got C={C}")
    lin = max(0.0, -x_min) / 2.0
    L = np.log(1e16)
    r_mu = radius or solve_radius(lambda r: r ** 3 / 3 - lin * r, L) + 1.0
    r_lam = radius or solve_radius(lambda r: r ** 3 / 3 - lin * r, L) + 1.0
    c_left = min(0.0, float(t.min())) - 0.5
    mu_grids = tuple(
        build_grid(ContourComponent("ray-pair", complex(C - tau),
                                    (np.pi / 3, -np.pi / 3), r_mu,
                                    f"gamma_R_minus_tau{i + 1}"), m)
        for i, tau in enumerate(t))
    lam_grid = build_grid(
        ContourComponent("ray-pair", complex(c_left),
                         (-2 * np.pi / 3, 2 * np.pi / 3), r_lam,
                         "left_line"), m)
    return AiryPhysicalContours(mu_grids=mu_grids, lam_grid=lam_grid, C=C)


def physical_block(i, j, xs, ys, phys, times):
    """Matrix of kernel entries A_ij(x, y) over node arrays xs, ys."""
    t = validate_times(times)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    mu, wmu = phys.mu_grids[i].nodes, phys.mu_grids[i].weights
    lam, wlam = phys.lam_grid.nodes, phys.lam_grid.weights
    den = lam[None, :] + t[j] - mu[:, None] - t[i]
    if np.abs(den).min() < 1e-8:
        raise ContourError("mu and lam contours collide in the denominator")
    d = (wmu[:, None] * wlam[None, :]) / den
    u = np.exp(theta(xs[None, :], mu[:, None]))
    v = np.exp(-theta(ys[None, :], lam[:, None]))
    a_tilde = (u.T @ d @ v) / TWO_PI_I ** 2
    return a_tilde - gaussian_bridge(i, j, xs[:, None], ys[None, :], times)


def physical_entry(i, j, x, y, phys, times):
    """Single kernel entry A_ij(x, y)."""
    return complex(physical_block(i, j, [x], [y], phys, times)[0, 0])


def interval_grid(ends, t_cut=DEFAULT_TAIL_CUT, density=7.0, n_min=16,
                  max_panel=3.0):
    """Real quadrature nodes/weights on a union of intervals.

    ``ends`` are the sorted endpoints of one time; an odd count makes
    the last interval semi-infinite, truncated at ``t_cut``.
    """
    ends = list(ends)
    if not ends:
        return np.empty(0), np.empty(0)
    segments = []
    pairs = ends[:]
    if len(pairs) % 2 == 1:
        pairs = pairs + [pairs[-1] + t_cut]
    for a, b in zip(pairs[0::2], pairs[1::2]):
        segments.append((a, b))
    xs, ws = [], []
    for a, b in segments:
        length = b - a
        n_panels = max(1, int(np.ceil(length / max_panel)))
        breaks = np.linspace(a, b, n_panels + 1)
        n_nodes = max(n_min, int(np.ceil(density * length)))
        x, w = gauss_legendre_panels(breaks, n_nodes)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def physical_operator(endpoints, times, m=80, t_cut=DEFAULT_TAIL_CUT,
                      C=None, density=7.0, radius=None,
                      symmetrized=True):
    """Nystrom discretization of the physical operator chi A chi."""
    t = validate_times(times)
    grids = [interval_grid(e, t_cut=t_cut, density=density)
             for e in endpoints.per_time]
    all_x = np.concatenate([x for x, _ in grids]) if any(
        len(x) for x, _ in grids) else np.empty(0)
    x_min = float(all_x.min()) if len(all_x) else 0.0
    phys = physical_contours(times, C=C, m=m, radius=radius, x_min=x_min)
    nodes = np.concatenate([x for x, _ in grids]).astype(complex)
    weights = np.concatenate([w for _, w in grids]).astype(complex)
    comp_ids = np.concatenate(
        [np.full(len(x), i) for i, (x, _) in enumerate(grids)])
    sizes = [len(x) for x, _ in grids]
    starts = np.concatenate([[0], np.cumsum(sizes)])
    n_tot = int(starts[-1])
    kmat = np.zeros((n_tot, n_tot), dtype=complex)
    for i in range(endpoints.n):
        if sizes[i] == 0:
            continue
        for j in range(endpoints.n):
            if sizes[j] == 0:
                continue
            kmat[starts[i]:starts[i + 1], starts[j]:starts[j + 1]] = \
                physical_block(i, j, grids[i][0], grids[j][0], phys, t)
    meta = {"process": "airy", "representation": "physical", "m": m,
            "t_cut": t_cut, "C": phys.C,
            "radii": {"right": phys.mu_grids[0].component.truncation_radius,
                      "left": phys.lam_grid.component.truncation_radius}}
    return DiscreteOperator.from_kernel_matrix(
        kmat, nodes, weights, comp_ids, comp_ids.copy(),
        symmetrized=symmetrized, meta=meta)
