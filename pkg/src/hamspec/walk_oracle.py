"""Exponential-time ground truth: walk enumeration, spectra, exact counts.

Everything here is exact integer arithmetic; nothing is shared with the
polynomial-pipeline code paths it is used to verify.
"""

from __future__ import annotations

from collections import Counter
from itertools import permutations

from .graph import Graph, hamiltonian_frequency, vertex_numbers
from .numerics import NormalizedSeries, cadd, cfrom_int, cmul, cmul_int

DEFAULT_ORACLE_LIMIT = 7


class OracleLimitError(RuntimeError):
    """Refused: enumeration would be exponential beyond the configured limit."""


def _check_limit(g: Graph, limit: int):
    if g.n > limit:
        raise OracleLimitError(
            f"graph has n={g.n} > oracle limit {limit}; "
            f"raise the limit explicitly to enumerate ~n^n walks"
        )


def enumerate_n_walks(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT):
    """Yield every walk with exactly n vertex visits, lexicographic order."""
    _check_limit(g, limit)
    n = g.n
    walk = [0] * n

    def extend(depth):
        if depth == n:
            yield tuple(walk)
            return
        for nxt in g.neighbors(walk[depth - 1]):
            walk[depth] = nxt
            yield from extend(depth + 1)

    for start in range(1, n + 1):
        walk[0] = start
        yield from extend(1)


def count_hamiltonian_paths(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """Directed count: vertex orderings with consecutive adjacency.

    Independent of the walk enumeration (permutation scan), so the two can
    cross-check each other. Each undirected path is counted once per
    direction; n=1 counts the single trivial path.
    """
    _check_limit(g, limit)
    if g.n == 1:
        return 1
    count = 0
    for perm in permutations(range(1, g.n + 1)):
        if all(perm[i + 1] in g.neighbors(perm[i]) for i in range(g.n - 1)):
            count += 1
    return count


def walk_spectrum(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> dict:
    """Multiplicity of each walk-number over all n-walks."""
    numbers = vertex_numbers(g.n)
    spectrum = Counter()
    for walk in enumerate_n_walks(g, limit):
        spectrum[sum(numbers[v - 1] for v in walk)] += 1
    return dict(spectrum)


def total_walks(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    return sum(walk_spectrum(g, limit).values())


def matrix_walk_count(g: Graph) -> int:
    """sum_{u,v} (A^{n-1})_{u,v} with exact integers; independent route to n_p."""
    n = g.n
    A = [[1 if (j + 1) in g.neighbors(i + 1) else 0 for j in range(n)] for i in range(n)]
    M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(n - 1):
        M = [
            [sum(M[i][k] * A[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return sum(sum(row) for row in M)


def check_visit_pair_uniqueness(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT):
    """True iff all n-walks sharing a walk-number share the visit multiset.

    Returns (ok, witness) where witness is a pair of offending walks when
    ok is False.
    """
    numbers = vertex_numbers(g.n)
    seen = {}
    for walk in enumerate_n_walks(g, limit):
        wn = sum(numbers[v - 1] for v in walk)
        pair = frozenset(Counter(walk).items())
        if wn in seen:
            prev_pair, prev_walk = seen[wn]
            if prev_pair != pair:
                return False, (prev_walk, walk)
        else:
            seen[wn] = (pair, walk)
    return True, None


def oracle_series(
    g: Graph, c: int, m: int, p: int, limit: int = DEFAULT_ORACLE_LIMIT
) -> NormalizedSeries:
    """Direct-sum ground truth for the encoded series:
    a_k = sum over walk-numbers W of mult(W) * (i*c*(W - a_h))^k.

    Accumulated at doubled precision, then rounded to p; spectrum keys in
    ascending order for a fixed reduction order.
    """
    spectrum = walk_spectrum(g, limit)
    a_h = hamiltonian_frequency(g)
    p2 = 2 * p
    coeffs = [cfrom_int(0, 0, p2) for _ in range(m + 1)]
    for wn in sorted(spectrum):
        mult = spectrum[wn]
        lam = cfrom_int(0, c * (wn - a_h), p2)
        power = cfrom_int(1, 0, p2)
        for k in range(m + 1):
            if k:
                power = cmul(power, lam, p2)
            coeffs[k] = cadd(coeffs[k], cmul_int(power, mult, p2), p2)
    return NormalizedSeries(coeffs, p2).reround(p)
