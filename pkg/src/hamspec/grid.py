"""Layered wavefront construction of the encoded series in polynomial time.

Depth 1 starts each vertex at its own oscillation e^{i v t}; every further
depth sums the incoming neighbor series and multiplies by the vertex's
oscillation, so after depth d wire l holds the sum of e^{iWt} over all
d-walks ending at l. The final sum over wires is shifted so the shared
path frequency sits at zero, then the time axis is scaled.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .graph import Graph, hamiltonian_frequency, vertex_numbers
from .numerics import (
    NormalizedSeries,
    cfrom_int,
    exp_series,
    series_add,
    series_mul,
    series_scale_time,
    zero_series,
)
from .schedule import PipelineProfile


def _vertex_oscillations(g: Graph, m: int, p: int) -> list:
    numbers = vertex_numbers(g.n)
    return [exp_series(cfrom_int(0, numbers[l - 1], p), m, p) for l in range(1, g.n + 1)]


def _advance_wire(g, wires, osc, l, m):
    incoming = None
    for j in g.neighbors(l):
        s = wires[j - 1]
        incoming = s if incoming is None else series_add(incoming, s)
    if incoming is None:
        return zero_series(m, wires[0].precision)
    return series_mul(incoming, osc[l - 1], m)


def _propagate(g: Graph, m: int, p: int, depth: int, threads: int = 1) -> list:
    """Wire series after `depth` layers (depth >= 1)."""
    osc = _vertex_oscillations(g, m, p)
    wires = list(osc)
    for _ in range(2, depth + 1):
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                wires = list(
                    pool.map(
                        lambda l: _advance_wire(g, wires, osc, l, m),
                        range(1, g.n + 1),
                    )
                )
        else:
            wires = [_advance_wire(g, wires, osc, l, m) for l in range(1, g.n + 1)]
    return wires


def grid_intermediate(
    g: Graph, profile: PipelineProfile, depth: int, threads: int = 1
) -> list:
    """The n wire series at a given depth, for cross-checks and debugging."""
    if not 1 <= depth <= g.n:
        raise ValueError(f"depth {depth} outside 1..{g.n}")
    return _propagate(g, profile.n_d1, profile.p_1, depth, threads)


def grid_series(g: Graph, profile: PipelineProfile, threads: int = 1) -> NormalizedSeries:
    """Encoded series at degree n_d1, precision p_1: propagate to depth n,
    sum the wires, shift by the shared path frequency, scale time by c."""
    if profile.n != g.n:
        raise ValueError(f"profile n={profile.n} does not match graph n={g.n}")
    c = profile.require_c()
    m, p = profile.n_d1, profile.p_1
    wires = _propagate(g, m, p, g.n, threads)
    total = wires[0]
    for w in wires[1:]:
        total = series_add(total, w)
    a_h = hamiltonian_frequency(g)
    shifted = series_mul(total, exp_series(cfrom_int(0, -a_h, p), m, p), m)
    return series_scale_time(shifted, c)
