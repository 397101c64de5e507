"""Pearcey-process kernels.

Physical side: matrix kernel P = P_tilde - Q with the quartic phase
Theta_i and the heat kernel Q.  Integrable side: kernel
f^T(lam) g(mu) / (lam - mu) on the X-shaped contour plus the imaginary
axis, all times sharing the single vertical line.  The cross-time
block on the shared line has a removable diagonal handled by its
analytic limit.
"""

from __future__ import annotations

import numpy as np

from .contour import build_pearcey_system, validate_times
from .fredholm import DiscreteOperator

TWO_PI_I = 2j * np.pi

_X_LABELS = ("gamma_R", "gamma_L")


def phase(i, x, mu, times):
    """Quartic Pearcey phase mu^4/4 - (tau_i/2) mu^2 - x*mu."""
    t = validate_times(times)
    mu = np.asarray(mu, dtype=complex) if not np.isscalar(mu) else mu
    return mu ** 4 / 4.0 - 0.5 * t[i] * mu ** 2 - x * mu


def heat_kernel(i, j, x, y, times):
    """Gaussian factor Q_ij(x, y); zero unless tau_i < tau_j."""
    t = validate_times(times)
    dt = t[j] - t[i]
    if dt <= 0:
        return np.zeros(np.broadcast(x, y).shape) if not (
            np.isscalar(x) and np.isscalar(y)) else 0.0
    diff = np.asarray(x) - np.asarray(y)
    return np.exp(-diff ** 2 / (2.0 * dt)) / np.sqrt(2.0 * np.pi * dt)


def heat_kernel_contour(dt, x, y, grid):
    """Contour form of the heat kernel, for cross-testing.

    (1/2 pi i) * int_{iR} e^{dt lam^2/2 + (y-x) lam} d lam on the given
    vertical-line grid.
    """
    vals = np.exp(dt * grid.nodes ** 2 / 2.0 + (y - x) * grid.nodes)
    return complex(np.sum(grid.weights * vals)) / TWO_PI_I


class PearceyEndpoints:
    """Per-time sorted interval endpoints, an even count at every time."""

    def __init__(self, per_time):
        pt = []
        for ends in per_time:
            e = tuple(float(a) for a in ends)
            if len(e) % 2:
                raise ValueError(
                    "Pearcey intervals are finite: even endpoint count required")
            if len(e) > 1 and not all(b >= a for a, b in zip(e, e[1:])):
                raise ValueError(f"endpoints must be sorted: {e}")
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
        return np.array([(-1.0) ** ell for ell in range(self.counts[i])])

    def row_index(self, i, ell):
        return self.offsets[i] + ell

    def max_abs_endpoint(self):
        vals = [abs(a) for e in self.per_time for a in e]
        return max(vals) if vals else 0.0

    def shifted(self, i, ell, h):
        pt = [list(e) for e in self.per_time]
        pt[i][ell] += h
        return PearceyEndpoints(pt)


# ---------------------------------------------------------------------------
# integrable-kernel vector data
# ---------------------------------------------------------------------------

def f_columns(lam, comp_label, i, endpoints, times):
    """Column f_i (bare) at nodes ``lam`` on the given component."""
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    out = np.zeros((endpoints.p, len(lam)), dtype=complex)
    if comp_label in _X_LABELS:
        out[0] = np.exp(0.5 * phase(i, 0.0, lam, times))
        return out
    for ell, a in enumerate(endpoints.per_time[i]):
        out[endpoints.row_index(i, ell)] = np.exp(a * lam)
    return out


def g_columns(mu, comp_label, j, endpoints, times):
    """Column g_j (bare) at nodes ``mu`` on the given component."""
    t = validate_times(times)
    mu = np.atleast_1d(np.asarray(mu, dtype=complex))
    out = np.zeros((endpoints.p, len(mu)), dtype=complex)
    if comp_label in _X_LABELS:
        half = 0.5 * phase(j, 0.0, mu, times)
        for ell, a in enumerate(endpoints.per_time[j]):
            out[endpoints.row_index(j, ell)] = \
                (-1.0) ** ell * np.exp(half - a * mu)
        return out
    out[0] = np.exp(-phase(j, 0.0, mu, times))
    for i in range(j):
        dt = t[j] - t[i]
        for ell, a in enumerate(endpoints.per_time[i]):
            out[endpoints.row_index(i, ell)] = \
                (-1.0) ** ell * np.exp(-a * mu + dt * mu ** 2 / 2.0)
    return out


def fg_matrices(lam, comp_label, endpoints, times):
    """All n columns of f and g at one point: two (p, n) arrays."""
    n = endpoints.n
    f = np.hstack([f_columns(lam, comp_label, i, endpoints, times)
                   for i in range(n)])
    g = np.hstack([g_columns(lam, comp_label, j, endpoints, times)
                   for j in range(n)])
    return f, g


def _diag_limit(i, j, lam, endpoints, times):
    """Analytic value of the shared-line kernel at coincident arguments.

    The alternating numerator vanishes at xi = lam; L'Hopital gives
    e^{dt lam^2/2} * sum_ell (-1)^ell a_i^(ell) with the sign pattern
    of the outer product (+ for the first endpoint).
    """
    t = validate_times(times)
    if t[i] >= t[j]:
        return 0.0
    dt = t[j] - t[i]
    acc = sum((-1.0) ** ell * a
              for ell, a in enumerate(endpoints.per_time[i]))
    return np.exp(dt * lam ** 2 / 2.0) * acc


def iiks_kernel_entry(lam, mu, comp_lam, comp_mu, endpoints, times):
    """n x n kernel value K(lam, mu) with the removable diagonal filled."""
    n = endpoints.n
    if comp_lam in _X_LABELS and comp_mu in _X_LABELS:
        return np.zeros((n, n), dtype=complex)
    if comp_lam == comp_mu == "iR" and lam == mu:
        out = np.zeros((n, n), dtype=complex)
        for i in range(n):
            for j in range(i + 1, n):
                out[i, j] = _diag_limit(i, j, lam, endpoints, times)
        return out / TWO_PI_I
    f, _ = fg_matrices(lam, comp_lam, endpoints, times)
    _, g = fg_matrices(mu, comp_mu, endpoints, times)
    return (f.T @ g) / (lam - mu) / TWO_PI_I


def block_entry(block, i, j, z_out, z_in, endpoints, times):
    """Bare block-kernel formulas (F, G, H); kernel = block / (2 pi i).

    H carries the sign pattern of the outer product f g^T (leading +),
    which is also what the determinant identity requires; its removable
    diagonal is evaluated by the analytic limit.
    """
    t = validate_times(times)
    if block == "F":
        return np.exp(0.5 * phase(i, 0.0, z_out, times)
                      - phase(j, 0.0, z_in, times)) / (z_out - z_in)
    if block == "G":
        if i != j:
            return 0.0
        acc = 0.0
        for ell, a in enumerate(endpoints.per_time[i]):
            acc += (-1.0) ** ell * np.exp(
                0.5 * phase(i, 0.0, z_in, times) - a * (z_in - z_out))
        return acc / (z_out - z_in)
    if block == "H":
        if t[i] >= t[j]:
            return 0.0
        if z_out == z_in:
            return complex(_diag_limit(i, j, z_in, endpoints, times))
        dt = t[j] - t[i]
        acc = 0.0
        for ell, a in enumerate(endpoints.per_time[i]):
            acc += (-1.0) ** ell * np.exp(
                a * (z_out - z_in) + dt * z_in ** 2 / 2.0)
        return acc / (z_out - z_in)
    raise ValueError(f"unknown block {block!r}")


def _system_slots(endpoints, system):
    """Every component carries all n vector components."""
    nodes, weights, comp_ids, vec_ids, node_ids = [], [], [], [], []
    for cid, grid in enumerate(system.grids):
        for b in range(endpoints.n):
            nodes.append(grid.nodes)
            weights.append(grid.weights)
            comp_ids.append(np.full(len(grid), cid))
            vec_ids.append(np.full(len(grid), b))
            node_ids.append(cid * 10 ** 6 + np.arange(len(grid)))
    return (np.concatenate(nodes), np.concatenate(weights),
            np.concatenate(comp_ids), np.concatenate(vec_ids),
            np.concatenate(node_ids))


def _slot_fg(endpoints, times, system):
    nodes, weights, comp_ids, vec_ids, node_ids = _system_slots(
        endpoints, system)
    p, nsl = endpoints.p, len(nodes)
    fbig = np.zeros((p, nsl), dtype=complex)
    gbig = np.zeros((p, nsl), dtype=complex)
    for cid, grid in enumerate(system.grids):
        label = grid.component.label
        for b in range(endpoints.n):
            sel = (comp_ids == cid) & (vec_ids == b)
            fbig[:, sel] = f_columns(nodes[sel], label, b, endpoints, times)
            gbig[:, sel] = g_columns(nodes[sel], label, b, endpoints, times)
    return fbig, gbig, nodes, weights, comp_ids, vec_ids, node_ids


def _x_mask(system, comp_ids):
    """Boolean per slot: does the slot live on the X contour."""
    on_x = np.array([g.component.label in _X_LABELS for g in system.grids])
    return on_x[comp_ids]


def iiks_operator(endpoints, times, system=None, m=80, delta=0.5,
                  symmetrized=True):
    """Discretized integrable Pearcey operator."""
    t = validate_times(times)
    if system is None:
        system = build_pearcey_system(
            t, delta=delta, m=m, endpoint_scale=endpoints.max_abs_endpoint())
    fbig, gbig, nodes, weights, comp_ids, vec_ids, node_ids = _slot_fg(
        endpoints, times, system)
    num = fbig.T @ gbig
    den = nodes[:, None] - nodes[None, :]
    coincident = node_ids[:, None] == node_ids[None, :]
    den[coincident] = 1.0
    kmat = num / den / TWO_PI_I
    xx = _x_mask(system, comp_ids)
    kmat[np.ix_(xx, xx)] = 0.0  # the (X, X) block vanishes identically
    # removable diagonal on the shared vertical line
    rr, cc = np.nonzero(coincident)
    for r, c in zip(rr, cc):
        i, j = int(vec_ids[r]), int(vec_ids[c])
        if xx[r] or i >= j:
            kmat[r, c] = 0.0
        else:
            kmat[r, c] = _diag_limit(i, j, nodes[r], endpoints, times) \
                / TWO_PI_I
    meta = dict(system.meta)
    meta.update({"process": "pearcey", "p": endpoints.p})
    return DiscreteOperator.from_kernel_matrix(
        kmat, nodes, weights, comp_ids, vec_ids,
        symmetrized=symmetrized, meta=meta)


def iiks_tangent_operator(endpoints, times, system, i, ell,
                          symmetrized=True):
    """Endpoint derivative d K / d a_i^(ell) on the same slots."""
    t = validate_times(times)
    fbig, gbig, nodes, weights, comp_ids, vec_ids, node_ids = _slot_fg(
        endpoints, times, system)
    a_row = endpoints.row_index(i, ell)
    dfbig = np.zeros_like(fbig)
    dgbig = np.zeros_like(gbig)
    xx = _x_mask(system, comp_ids)
    sel_f = (~xx) & (vec_ids == i)
    dfbig[a_row, sel_f] = nodes[sel_f] * fbig[a_row, sel_f]
    sel_gx = xx & (vec_ids == i)
    dgbig[a_row, sel_gx] = -nodes[sel_gx] * gbig[a_row, sel_gx]
    sel_gl = (~xx) & (vec_ids > i)
    dgbig[a_row, sel_gl] = -nodes[sel_gl] * gbig[a_row, sel_gl]
    num = dfbig.T @ gbig + fbig.T @ dgbig
    den = nodes[:, None] - nodes[None, :]
    coincident = node_ids[:, None] == node_ids[None, :]
    den[coincident] = 1.0
    kmat = num / den / TWO_PI_I
    kmat[np.ix_(xx, xx)] = 0.0
    sign = (-1.0) ** ell
    rr, cc = np.nonzero(coincident)
    for r, c in zip(rr, cc):
        vi, vj = int(vec_ids[r]), int(vec_ids[c])
        if xx[r] or vi >= vj or vi != i:
            kmat[r, c] = 0.0
        else:
            # d/da of the L'Hopital limit e^{dt lam^2/2} sum (-1)^l a_l
            dt = t[vj] - t[vi]
            kmat[r, c] = sign * np.exp(dt * nodes[r] ** 2 / 2.0) / TWO_PI_I
    return DiscreteOperator.from_kernel_matrix(
        kmat, nodes, weights, comp_ids, vec_ids,
        symmetrized=symmetrized, meta={"tangent": ("a", i, ell)})


# ---------------------------------------------------------------------------
# physical kernel
# ---------------------------------------------------------------------------

def _x_nodes(system):
    gr, gl = system.grid("gamma_R"), system.grid("gamma_L")
    return (np.concatenate([gr.nodes, gl.nodes]),
            np.concatenate([gr.weights, gl.weights]))


def physical_block(i, j, xs, ys, system, times):
    """Matrix of kernel entries P_ij(x, y) over node arrays xs, ys."""
    t = validate_times(times)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    mu, wmu = _x_nodes(system)
    line = system.grid("iR")
    lam, wlam = line.nodes, line.weights
    den = lam[None, :] - mu[:, None]
    d = (wmu[:, None] * wlam[None, :]) / den
    u = np.exp(phase(i, xs[None, :], mu[:, None], times))
    v = np.exp(-phase(j, ys[None, :], lam[:, None], times))
    p_tilde = (u.T @ d @ v) / TWO_PI_I ** 2
    return p_tilde - heat_kernel(i, j, xs[:, None], ys[None, :], times)


def physical_entry(i, j, x, y, system, times):
    """Single kernel entry P_ij(x, y)."""
    return complex(physical_block(i, j, [x], [y], system, times)[0, 0])


def physical_operator(endpoints, times, system=None, m=80, delta=0.5,
                      density=7.0, symmetrized=True):
    """Nystrom discretization of the physical operator chi P chi."""
    from .airy import interval_grid  # same real-interval quadrature

    t = validate_times(times)
    grids = [interval_grid(e, density=density) for e in endpoints.per_time]
    all_x = np.concatenate([x for x, _ in grids])
    x_scale = float(np.abs(all_x).max()) if len(all_x) else 0.0
    if system is None:
        system = build_pearcey_system(t, delta=delta, m=m,
                                      endpoint_scale=x_scale)
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
                physical_block(i, j, grids[i][0], grids[j][0], system, t)
    meta = {"process": "pearcey", "representation": "physical", "m": m,
            "delta": system.meta.get("delta")}
    return DiscreteOperator.from_kernel_matrix(
        kmat, nodes, weights, comp_ids, comp_ids.copy(),
        symmetrized=symmetrized, meta=meta)
