"""Oriented contours in the complex plane and quadrature rules on them.

All integration contours used by the Airy and Pearcey pipelines are built
from two primitives: a pair of rays sharing an apex, and a (truncated)
vertical line.  Each component carries a composite Gauss-Legendre grid
whose complex weights include the local unit direction, so that a plain
weighted sum realizes the oriented line integral.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

#: decay weights smaller than this at the truncation point are neglected
DEFAULT_TAIL_EPS = 1e-16

_RAY_PANELS = 5
_PANEL_RATIO = 2.0


class ContourError(ValueError):
    """Invalid contour geometry or parameters."""


def gauss_legendre_panels(breaks, n_nodes):
    """Composite Gauss-Legendre rule on the panels defined by ``breaks``.

    ``n_nodes`` nodes are distributed over the panels as evenly as an
    exact total allows.  Returns real nodes and positive weights.
    """
    breaks = np.asarray(breaks, dtype=float)
    n_panels = len(breaks) - 1
    if n_panels < 1:
        raise ContourError("need at least one panel")
    counts = np.full(n_panels, n_nodes // n_panels, dtype=int)
    counts[: n_nodes - counts.sum()] += 1
    xs, ws = [], []
    for (a, b), cnt in zip(zip(breaks[:-1], breaks[1:]), counts):
        if cnt == 0:
            continue
        x, w = np.polynomial.legendre.leggauss(cnt)
        xs.append(0.5 * (b - a) * x + 0.5 * (b + a))
        ws.append(0.5 * (b - a) * w)
    return np.concatenate(xs), np.concatenate(ws)


def geometric_breaks(radius, n_panels=_RAY_PANELS, ratio=_PANEL_RATIO):
    """Panel boundaries on [0, radius], graded toward 0 with the given ratio."""
    edges = radius / ratio ** np.arange(n_panels, -1, -1, dtype=float)
    edges[0] = 0.0
    return edges


@dataclass(frozen=True)
class ContourComponent:
    """One oriented contour component.

    The path runs from ``apex + inf*e^{i*angles[0]}`` through ``apex`` to
    ``apex + inf*e^{i*angles[1]}``, truncated at ``truncation_radius``.
    A vertical line is the special case ``angles = (-pi/2, pi/2)``.
    """

    kind: str  # "ray-pair" | "vertical-line"
    apex: complex
    angles: tuple  # (incoming angle, outgoing angle), radians
    truncation_radius: float
    label: str

    def __post_init__(self):
        if self.kind not in ("ray-pair", "vertical-line"):
            raise ContourError(f"unknown component kind {self.kind!r}")
        if not self.truncation_radius > 0:
            raise ContourError("truncation radius must be positive")

    @property
    def conjugation_symmetric(self):
        """True when the node set is closed under complex conjugation."""
        return abs(self.apex.imag) < 1e-14 and abs(
            abs(self.angles[0]) - abs(self.angles[1])
        ) < 1e-14


@dataclass(frozen=True)
class QuadratureGrid:
    """Complex nodes and direction-bearing weights for one component."""

    nodes: np.ndarray
    weights: np.ndarray
    component: ContourComponent

    def __len__(self):
        return len(self.nodes)


def build_grid(component, m, n_panels=_RAY_PANELS, ratio=_PANEL_RATIO):
    """Quadrature grid with exactly ``m`` nodes on ``component``.

    Each of the two legs receives m/2 nodes on geometrically graded
    panels (clustered toward the apex, where the integrands peak).
    """
    if m < 4:
        raise ContourError("need m >= 4 nodes per component")
    if m % 2:
        m += 1
    half = m // 2
    r, w = gauss_legendre_panels(
        geometric_breaks(component.truncation_radius, n_panels, ratio), half
    )
    phi_in, phi_out = component.angles
    d_in, d_out = np.exp(1j * phi_in), np.exp(1j * phi_out)
    # incoming leg traversed from far to apex, outgoing from apex to far
    nodes = np.concatenate([component.apex + r[::-1] * d_in,
                            component.apex + r * d_out])
    weights = np.concatenate([-w[::-1] * d_in, w * d_out])
    return QuadratureGrid(nodes=nodes, weights=weights, component=component)


@dataclass(frozen=True)
class ContourSystem:
    """A family of pairwise disjoint contour components with grids."""

    grids: tuple  # of QuadratureGrid
    meta: dict = field(default_factory=dict)

    @property
    def labels(self):
        return tuple(g.component.label for g in self.grids)

    def grid(self, label):
        for g in self.grids:
            if g.component.label == label:
                return g
        raise KeyError(label)

    def min_pairwise_distance(self):
        """Smallest distance between nodes of distinct components."""
        best = np.inf
        for i, gi in enumerate(self.grids):
            for gj in self.grids[i + 1:]:
                d = np.abs(gi.nodes[:, None] - gj.nodes[None, :]).min()
                best = min(best, d)
        return best


def _check_disjoint(system):
    if len(system.grids) > 1 and not system.min_pairwise_distance() > 0:
        raise ContourError("contour components collide")
    return system


def solve_radius(exponent, target, r_max=200.0):
    """Smallest r with exponent(r) >= target, by bracketing + bisection.

    ``exponent`` is the decay exponent of the slowest weight on the
    component, i.e. the weight is exp(-exponent(r)).
    """
    lo, hi = 1e-3, 2.0
    while exponent(hi) < target:
        hi *= 2.0
        if hi > r_max:
            return r_max
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if exponent(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def validate_times(times):
    """Strictly increasing process times as a float array (n >= 1)."""
    t = np.atleast_1d(np.asarray(times, dtype=float))
    if t.ndim != 1 or len(t) < 1:
        raise ContourError("need at least one time")
    if len(t) > 1 and not np.all(np.diff(t) > 0):
        raise ContourError("times must be strictly increasing (no duplicates)")
    return t


def build_airy_system(times, C=None, deform=True, radius=None, m=80,
                      eps=DEFAULT_TAIL_EPS, endpoint_scale=0.0):
    """Contour system for the Airy integrable kernel.

    One right component gamma_R (rays from apex C at angles +-pi/3,
    traversed downward) plus one component per time: the vertical line
    through tau_j (``deform=False``) or a left ray pair at apex tau_j
    with angles +-2pi/3 (``deform=True``).  ``endpoint_scale`` feeds the
    slowest linear growth (from interval endpoints) into the truncation
    rule; ``radius`` overrides the rule for every component.
    """
    t = validate_times(times)
    if C is None:
        C = float(t.max()) + 1.0
    if not C > t.max():
        raise ContourError(f"need C > max(times); got C={C}, max={t.max()}")
    L = np.log(1.0 / eps)
    a = abs(endpoint_scale)
    dt_min = np.diff(t).min() if len(t) > 1 else None

    r_right = radius or solve_radius(lambda r: r ** 3 / 6 - a * r / 2, L)
    grids = [build_grid(
        ContourComponent("ray-pair", complex(C), (np.pi / 3, -np.pi / 3),
                         r_right, "gamma_R"), m)]
    for j, tau in enumerate(t):
        if deform:
            # cubic decay of the slowest row-1 factor, Gaussian from the
            # cross-time blocks when n >= 2
            r_cub = solve_radius(lambda r: r ** 3 / 3 - a * r, L)
            r_j = r_cub
            if dt_min is not None:
                r_j = max(r_j, solve_radius(
                    lambda r: dt_min * r ** 2 / 2 - a * r, L))
            comp = ContourComponent("ray-pair", complex(tau),
                                    (-2 * np.pi / 3, 2 * np.pi / 3),
                                    radius or r_j, f"line_{j + 1}")
        else:
            if dt_min is not None:
                r_j = solve_radius(lambda r: dt_min * r ** 2 / 2 - a * r, L)
            else:
                r_j = 12.0  # no decaying weight on a single undeformed line
            comp = ContourComponent("vertical-line", complex(tau),
                                    (-np.pi / 2, np.pi / 2),
                                    radius or r_j, f"line_{j + 1}")
        grids.append(build_grid(comp, m))
    meta = {"C": C, "deform": deform, "m": m, "eps": eps,
            "radii": {g.component.label: g.component.truncation_radius
                      for g in grids}}
    return _check_disjoint(ContourSystem(grids=tuple(grids), meta=meta))


def build_pearcey_system(times, delta=0.5, radius=None, m=80,
                         eps=DEFAULT_TAIL_EPS, endpoint_scale=0.0,
                         tau_scale=None):
    """Contour system for the Pearcey kernel.

    gamma_R: rays at apex +delta, angles +-pi/4, traversed downward
    (incoming from the upper right, like the Airy right contour).
    gamma_L = -gamma_R: rays at apex -delta, angles +-3pi/4, traversed
    upward, so that gamma_L and gamma_R form the X-shaped Pearcey
    contour.  iR: the vertical line through 0, traversed upward.  No
    deformation is needed; every weight already decays.  This is the
    orientation for which determinants are probabilities in (0, 1] and
    the one-point density is positive.
    """
    t = validate_times(times)
    if not delta > 0:
        raise ContourError("need delta > 0")
    L = np.log(1.0 / eps)
    a = abs(endpoint_scale)
    tmax = abs(t).max() if tau_scale is None else abs(tau_scale)
    dt_min = np.diff(t).min() if len(t) > 1 else None

    r_x = radius or solve_radius(
        lambda r: r ** 4 / 8 - tmax * r ** 2 / 2 - a * r, L)
    # quartic phase on iR, Gaussian heat factors across time pairs
    r_line = radius or solve_radius(
        lambda r: r ** 4 / 4 - tmax * r ** 2 / 2 - a * r, L)
    if radius is None and dt_min is not None:
        r_line = max(r_line, solve_radius(
            lambda r: dt_min * r ** 2 / 2 - a * r, L))

    comps = [
        ContourComponent("ray-pair", complex(delta),
                         (np.pi / 4, -np.pi / 4), r_x, "gamma_R"),
        ContourComponent("ray-pair", complex(-delta),
                         (-3 * np.pi / 4, 3 * np.pi / 4), r_x, "gamma_L"),
        ContourComponent("vertical-line", 0j,
                         (-np.pi / 2, np.pi / 2), r_line, "iR"),
    ]
    meta = {"delta": delta, "m": m, "eps": eps,
            "radii": {c.label: c.truncation_radius for c in comps}}
    return _check_disjoint(
        ContourSystem(grids=tuple(build_grid(c, m) for c in comps), meta=meta))


def integrate(grid, fn):
    """Oriented line integral sum(w * fn(nodes)) over one grid.

    The caller divides by 2*pi*i when the measure requires it.  ``fn``
    may be vectorized over a complex array or accept scalars.
    """
    try:
        vals = np.asarray(fn(grid.nodes), dtype=complex)
        if vals.shape != grid.nodes.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([fn(z) for z in grid.nodes], dtype=complex)
    return complex(np.sum(grid.weights * vals))
