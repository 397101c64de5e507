"""Nystrom discretization and the Fredholm determinant engine.

A kernel sampled at quadrature nodes becomes a dense complex matrix M
with the weights folded in, so that det(I - M) approximates the
Fredholm determinant.  Both the weighted form M[r,c] = K(r,c) w_c and
the symmetrized form sqrt(w_r) K sqrt(w_c) are supported; they are
related by a diagonal similarity and share the same determinant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

__all__ = [
    "DiscreteOperator",
    "DetResult",
    "NearSingularOperatorError",
    "assemble",
    "det",
    "det2",
    "solve_resolvent",
    "logdet_derivative",
]


class NearSingularOperatorError(RuntimeError):
    """The discretized operator I - M is numerically singular."""


@dataclass(frozen=True)
class DiscreteOperator:
    """Dense discretization of a matrix-valued kernel.

    Row/column r corresponds to one slot: a quadrature node together
    with one active vector component.  ``matrix`` already contains the
    quadrature weights according to ``symmetrized``.
    """

    matrix: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray
    comp_ids: np.ndarray
    block_ids: np.ndarray
    symmetrized: bool = True
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_kernel_matrix(cls, kmat, nodes, weights, comp_ids, block_ids,
                           symmetrized=True, meta=None):
        """Fold quadrature weights into a raw kernel sample matrix."""
        kmat = np.asarray(kmat, dtype=complex)
        if not np.all(np.isfinite(kmat)):
            raise ValueError("kernel sample contains non-finite entries")
        if symmetrized:
            s = np.sqrt(np.asarray(weights, dtype=complex))
            m = s[:, None] * kmat * s[None, :]
        else:
            m = kmat * np.asarray(weights, dtype=complex)[None, :]
        return cls(matrix=m, nodes=np.asarray(nodes, dtype=complex),
                   weights=np.asarray(weights, dtype=complex),
                   comp_ids=np.asarray(comp_ids, dtype=int),
                   block_ids=np.asarray(block_ids, dtype=int),
                   symmetrized=symmetrized, meta=dict(meta or {}))

    @property
    def n(self):
        return self.matrix.shape[0]

    def scale_to_values(self, x):
        """Map solution slots of the symmetrized system back to values."""
        if not self.symmetrized:
            return x
        s = np.sqrt(np.asarray(self.weights, dtype=complex))
        return x / (s if x.ndim == 1 else s[:, None])

    def scale_from_values(self, x):
        if not self.symmetrized:
            return x
        s = np.sqrt(np.asarray(self.weights, dtype=complex))
        return x * (s if x.ndim == 1 else s[:, None])


@dataclass(frozen=True)
class DetResult:
    """Determinant value with diagnostics.

    ``exp(log_value) == value`` up to rounding; overflow shows up only
    in ``log_value``.
    """

    value: complex
    log_value: complex
    diagnostics: dict = field(default_factory=dict)

    @property
    def real(self):
        return self.value.real


def assemble(sampler, system, active=None, symmetrized=True, meta=None):
    """Discretize a pointwise matrix-kernel sampler on a contour system.

    ``sampler(lam, mu, i, j)`` returns the (i, j) kernel entry at
    (lam, mu); ``active`` maps component labels to the tuple of vector
    components living there (default: the single component 0).  Meant
    for small generic kernels; the Airy/Pearcey assemblies use
    vectorized builders.
    """
    nodes, weights, comp_ids, block_ids = [], [], [], []
    for cid, grid in enumerate(system.grids):
        comps = (active or {}).get(grid.component.label, (0,))
        for b in comps:
            nodes.append(grid.nodes)
            weights.append(grid.weights)
            comp_ids.append(np.full(len(grid), cid))
            block_ids.append(np.full(len(grid), b))
    nodes = np.concatenate(nodes)
    weights = np.concatenate(weights)
    comp_ids = np.concatenate(comp_ids)
    block_ids = np.concatenate(block_ids)
    n = len(nodes)
    kmat = np.empty((n, n), dtype=complex)
    for r in range(n):
        for c in range(n):
            kmat[r, c] = sampler(nodes[r], nodes[c],
                                 int(block_ids[r]), int(block_ids[c]))
    return DiscreteOperator.from_kernel_matrix(
        kmat, nodes, weights, comp_ids, block_ids,
        symmetrized=symmetrized, meta=meta)


def _lu_logdet(a):
    """(lu, piv, log det, rcond) of a dense complex matrix."""
    anorm = np.abs(a).sum(axis=0).max() if a.size else 0.0
    lu, piv = sla.lu_factor(a, check_finite=False)
    d = np.diag(lu)
    if np.any(d == 0):
        return lu, piv, complex(-np.inf, 0.0), 0.0
    swaps = int(np.sum(piv != np.arange(len(piv)))) % 2
    log_value = complex(np.sum(np.log(np.abs(d))),
                        np.sum(np.angle(d)) + np.pi * swaps)
    gecon = sla.get_lapack_funcs(("gecon",), (a,))[0]
    rcond, _ = gecon(lu, anorm)
    return lu, piv, log_value, float(rcond)


def det(op):
    """Fredholm determinant det(I - M) via pivoted LU."""
    if op.n == 0:
        return DetResult(1.0 + 0j, 0.0 + 0j, {"rcond": 1.0, "n": 0})
    a = np.eye(op.n, dtype=complex) - op.matrix
    _, _, log_value, rcond = _lu_logdet(a)
    value = np.exp(log_value) if log_value.real < 700 else complex(np.inf)
    diag = {"rcond": rcond, "n": op.n,
            "max_abs_imag": abs(value.imag) if np.isfinite(value.real) else np.nan}
    diag.update(op.meta)
    return DetResult(complex(value), log_value, diag)


def det2(op):
    """Carleman regularized determinant det2(I - M) = det(I - M) e^{tr M}.

    For the diagonal-free contour kernels used here det2 coincides with
    det; the trace factor matters for kernels with a genuine diagonal.
    """
    base = det(op)
    tr = complex(np.trace(op.matrix))
    log_value = base.log_value + tr
    value = np.exp(log_value) if log_value.real < 700 else complex(np.inf)
    diag = dict(base.diagnostics)
    diag["trace"] = tr
    return DetResult(complex(value), log_value, diag)


def solve_resolvent(op, rhs, rcond_min=1e-13):
    """Solve (I - M) F = f for node values F.

    ``rhs`` holds plain kernel-side values at the slots (one column per
    right-hand side); scaling for the symmetrized form is internal.
    """
    rhs = np.asarray(rhs, dtype=complex)
    a = np.eye(op.n, dtype=complex) - op.matrix
    lu, piv, _, rcond = _lu_logdet(a)
    if rcond < rcond_min:
        raise NearSingularOperatorError(
            f"operator nearly singular (rcond={rcond:.2e})")
    b = op.scale_from_values(rhs)
    x = sla.lu_solve((lu, piv), b, check_finite=False)
    x += sla.lu_solve((lu, piv), b - a @ x, check_finite=False)
    resid = np.linalg.norm(a @ x - b) / max(np.linalg.norm(b), 1e-300)
    if resid > 1e-10:
        raise NearSingularOperatorError(
            f"resolvent residual {resid:.2e} exceeds 1e-10")
    return op.scale_to_values(x)


def logdet_derivative(op, dop, rcond_min=1e-13):
    """Jacobi's formula: d log det(I - M) = -tr((I - M)^{-1} dM).

    ``dop`` must be assembled with the same slots, weights and
    symmetrization as ``op``.
    """
    if dop.n != op.n or dop.symmetrized != op.symmetrized:
        raise ValueError("operator and derivative sampler are incompatible")
    a = np.eye(op.n, dtype=complex) - op.matrix
    lu, piv, _, rcond = _lu_logdet(a)
    if rcond < rcond_min:
        raise NearSingularOperatorError(
            f"operator nearly singular (rcond={rcond:.2e})")
    x = sla.lu_solve((lu, piv), dop.matrix, check_finite=False)
    return -complex(np.trace(x))
