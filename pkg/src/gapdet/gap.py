"""High-level gap-probability drivers.

Each driver builds the requested representation (physical interval
kernel or integrable contour kernel), discretizes it and returns the
Fredholm determinant with diagnostics.  The two representations of the
same configuration agree up to quadrature error; ``equivalence_report``
computes both and the difference.
"""

from __future__ import annotations

from . import airy, pearcey
from .contour import build_airy_system, build_pearcey_system, validate_times
from .fredholm import det


def airy_gap_probability(times, intervals, representation="iiks", m=80,
                         deform=True, gauge=True, C=None, radius=None,
                         t_cut=airy.DEFAULT_TAIL_CUT, density=7.0,
                         symmetrized=True):
    """Gap probability of the multi-time Airy process.

    ``intervals`` lists the sorted endpoints per time; an odd count
    makes the last interval semi-infinite.  Returns a DetResult whose
    value is real up to quadrature error.
    """
    t = validate_times(times)
    ep = intervals if isinstance(intervals, airy.AiryEndpoints) \
        else airy.AiryEndpoints(intervals)
    if representation == "iiks":
        system = build_airy_system(
            t, C=C, deform=deform, radius=radius, m=m,
            endpoint_scale=ep.max_abs_endpoint())
        op = airy.iiks_operator(ep, t, system, gauge=gauge,
                                symmetrized=symmetrized)
    elif representation == "physical":
        op = airy.physical_operator(ep, t, m=m, t_cut=t_cut, C=C,
                                    density=density, radius=radius,
                                    symmetrized=symmetrized)
    else:
        raise ValueError(f"unknown representation {representation!r}")
    return det(op)


def pearcey_gap_probability(times, intervals, representation="iiks", m=80,
                            delta=0.5, radius=None, density=7.0,
                            symmetrized=True):
    """Gap probability of the multi-time Pearcey process.

    Every time needs an even endpoint count (finite intervals only).
    """
    t = validate_times(times)
    ep = intervals if isinstance(intervals, pearcey.PearceyEndpoints) \
        else pearcey.PearceyEndpoints(intervals)
    system = build_pearcey_system(
        t, delta=delta, m=m, radius=radius,
        endpoint_scale=ep.max_abs_endpoint())
    if representation == "iiks":
        op = pearcey.iiks_operator(ep, t, system, symmetrized=symmetrized)
    elif representation == "physical":
        op = pearcey.physical_operator(ep, t, system=system, m=m,
                                       delta=delta, density=density,
                                       symmetrized=symmetrized)
    else:
        raise ValueError(f"unknown representation {representation!r}")
    return det(op)


def equivalence_report(process, times, intervals, m=80, **kw):
    """Both representations of one configuration and their difference."""
    fn = airy_gap_probability if process == "airy" else pearcey_gap_probability
    phys = fn(times, intervals, representation="physical", m=m, **kw)
    iiks = fn(times, intervals, representation="iiks", m=m, **kw)
    return {
        "det_physical": phys.value,
        "det_iiks": iiks.value,
        "abs_difference": abs(phys.value - iiks.value),
        "diagnostics": {"physical": phys.diagnostics,
                        "iiks": iiks.diagnostics},
    }
