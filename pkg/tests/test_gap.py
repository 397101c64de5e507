"""High-level driver tests: probability properties, determinism."""

import numpy as np
import pytest

from gapdet import airy, fredholm
from gapdet.gap import (
    airy_gap_probability,
    equivalence_report,
    pearcey_gap_probability,
)


def test_empty_intervals_give_unit_determinant():
    res = airy_gap_probability([0.0, 1.0], [[], []], m=40)
    assert res.value == pytest.approx(1.0, abs=1e-14)
    resp = pearcey_gap_probability([0.0], [[]], m=40)
    assert resp.value == pytest.approx(1.0, abs=1e-14)


def test_airy_single_time_against_physical():
    rep = equivalence_report("airy", [0.0], [[0.0]], m=100)
    assert rep["abs_difference"] < 1e-7


def test_determinant_is_probability():
    res = airy_gap_probability([0.0, 1.0], [[-0.5], [0.0]], m=80)
    assert abs(res.value.imag) < 1e-8
    assert 0.0 < res.value.real <= 1.0 + 1e-8


def test_nested_intervals_monotone():
    # shrinking the interval raises the gap probability toward 1
    vals = []
    for c in (1.0, 0.6, 0.3, 0.1):
        vals.append(pearcey_gap_probability([0.0], [[-c, c]], m=80).value.real)
    assert all(b >= a - 1e-10 for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1.0 + 1e-10


def test_rerun_is_bit_stable():
    a = airy_gap_probability([0.0, 1.0], [[0.2], [0.4]], m=60).value
    b = airy_gap_probability([0.0, 1.0], [[0.2], [0.4]], m=60).value
    assert a == b
    c = pearcey_gap_probability([0.0], [[-1.0, 1.0]], m=60).value
    d = pearcey_gap_probability([0.0], [[-1.0, 1.0]], m=60).value
    assert c == d


def test_symmetrization_choice_matches():
    kw = dict(times=[0.0], intervals=[[0.0]], m=80)
    a = airy_gap_probability(symmetrized=True, **kw).value
    b = airy_gap_probability(symmetrized=False, **kw).value
    assert abs(a - b) < 1e-12


def test_airy_semi_infinite_tail_cut_insensitive():
    a = airy_gap_probability([0.0], [[0.0]], m=100,
                             representation="physical", t_cut=12.0).value
    b = airy_gap_probability([0.0], [[0.0]], m=100,
                             representation="physical", t_cut=16.0).value
    assert abs(a - b) < 1e-9


def test_multi_interval_airy_runs():
    res = airy_gap_probability([0.0], [[-1.0, 0.0, 1.0]], m=100)
    assert 0.0 < res.value.real <= 1.0
    assert abs(res.value.imag) < 1e-8


def test_carleman_bookkeeping_chain_on_physical_operator():
    # det" (Fredholm expansion) = det2 * e^{-tr}: the bridge part is
    # diagonal-free so the trace is carried by the double-integral part
    ep = airy.AiryEndpoints([[0.0], [0.5]])
    t = [0.0, 1.0]
    op = airy.physical_operator(ep, t, m=80)
    plain = fredholm.det(op)
    reg = fredholm.det2(op)
    tr = np.trace(op.matrix)
    assert plain.value == pytest.approx(
        reg.value * np.exp(-tr), rel=1e-10)
    # the diagonal of the sampled kernel carries no bridge term
    bridge_diag = [airy.gaussian_bridge(i, i, 0.1, 0.1, t) for i in range(2)]
    assert bridge_diag == [0.0, 0.0]
