"""Finite-difference PDE machinery tests (cheap configurations)."""

import numpy as np
import pytest

from gapdet import pdecheck
from gapdet.gap import airy_gap_probability


def _synthetic_grid(fn, center=(1.0, 0.2, 0.1), step=0.05, radius=2):
    offs = step * np.arange(-radius, radius + 1)
    vals = np.empty((2 * radius + 1,) * 3)
    for it, dt in enumerate(offs):
        for ie, de in enumerate(offs):
            for iw, dw in enumerate(offs):
                vals[it, ie, iw] = fn(center[0] + dt, center[1] + de,
                                      center[2] + dw)
    return pdecheck.LogDetGrid(center=center, step=step, radius=radius,
                               values=vals)


def test_constant_grid_zero_residual():
    g = _synthetic_grid(lambda t, e, w: -0.7)
    r = pdecheck.avm_residual(g)
    assert r["lhs"] == 0 and r["rhs"] == 0 and r["residual"] == 0


def test_linear_grid_zero_residual():
    g = _synthetic_grid(lambda t, e, w: e)
    r = pdecheck.avm_residual(g)
    assert abs(r["lhs"]) < 1e-12 and abs(r["rhs"]) < 1e-12


def test_stencils_exact_on_cubic_polynomials():
    g = _synthetic_grid(lambda t, e, w: t ** 3 + e ** 3 * w + t * e * w)
    t0, e0, w0 = g.center
    assert pdecheck.derivative(g, (3, 0, 0)) == pytest.approx(6.0)
    assert pdecheck.derivative(g, (0, 3, 0)) == pytest.approx(6.0 * w0)
    assert pdecheck.derivative(g, (0, 2, 1)) == pytest.approx(6.0 * e0)
    assert pdecheck.derivative(g, (1, 1, 1)) == pytest.approx(1.0)


def test_mixed_partial_orderings_commute():
    g = _synthetic_grid(lambda t, e, w: np.sin(t) * np.exp(0.3 * e - 0.2 * w))
    # d3/(dtau dE dW) via the tensor stencil equals the dW(dE(dtau)) chain
    direct = pdecheck.derivative(g, (1, 1, 1))
    h = g.step
    c = g.radius
    v = g.values
    chain = ((v[c + 1, c + 1, c + 1] - v[c - 1, c + 1, c + 1]
              - v[c + 1, c - 1, c + 1] + v[c - 1, c - 1, c + 1])
             - (v[c + 1, c + 1, c - 1] - v[c - 1, c + 1, c - 1]
                - v[c + 1, c - 1, c - 1] + v[c - 1, c - 1, c - 1])) \
        / (8.0 * h ** 3)
    assert direct == pytest.approx(chain, rel=1e-12)


def test_two_time_logdet_matches_driver():
    direct = airy_gap_probability([0.0, 1.0], [[0.3], [0.1]],
                                  m=60).log_value.real
    via = pdecheck.two_time_logdet(1.0, 0.2, 0.1, m=60)
    assert via == pytest.approx(direct, rel=1e-12)


def test_degenerate_radius_zero_grid():
    g = pdecheck.build_grid((1.0, 0.2, 0.1), radius=0, m=60)
    assert g.values.shape == (1, 1, 1)
    assert g.values[0, 0, 0] == pytest.approx(
        pdecheck.two_time_logdet(1.0, 0.2, 0.1, m=60), rel=1e-12)


def test_grid_values_are_log_probabilities_and_w_symmetric():
    g = pdecheck.build_grid((1.0, 0.0, 0.0), step=0.05, radius=1, m=110)
    assert np.all(g.values <= 1e-12)
    # exchanging the two intervals reflects W (time reversal of the
    # stationary two-time process); needs resolved determinants
    assert np.allclose(g.values, g.values[:, :, ::-1], atol=1e-7)


def test_rejects_nonpositive_tau():
    with pytest.raises(ValueError):
        pdecheck.two_time_logdet(0.0, 0.1, 0.1, m=48)
