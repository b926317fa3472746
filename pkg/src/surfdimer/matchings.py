"""Dimer configurations and the brute-force oracles built on them."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    EmptyPartition,
    NoMatchingExists,
    NonpositiveTemperature,
    NonpositiveWeight,
    NotAMatching,
)
from .surface_map import DartWalk, HomologyBasis, SurfaceMap, class_of

# a perfect matching: sorted tuple of edge ids
DimerConfiguration = tuple[int, ...]


class WeightSystem(tuple):
    """Positive edge weights, indexed by edge id.

    Values are exact :class:`~fractions.Fraction` objects.  Floating inputs
    are converted exactly via ``Fraction(float)``.
    """

    def __new__(cls, values: Iterable) -> "WeightSystem":
        ws = tuple(Fraction(v) for v in values)
        for e, x in enumerate(ws):
            if x <= 0:
                raise NonpositiveWeight(f"weight of edge {e} is {x}")
        return super().__new__(cls, ws)

    @classmethod
    def uniform(cls, m: SurfaceMap, value=1) -> "WeightSystem":
        return cls([value] * m.n_edges)

    @classmethod
    def from_energies(cls, energies: Sequence[float], temperature: float) -> "WeightSystem":
        return cls(boltzmann_weight(x, temperature) for x in energies)


def boltzmann_weight(energy: float, temperature: float) -> float:
    if not temperature > 0:
        raise NonpositiveTemperature(f"temperature must be positive, got {temperature}")
    return math.exp(-energy / temperature)


def check_matching(m: SurfaceMap, edges: Iterable[int]) -> DimerConfiguration:
    """Validate and canonicalize a perfect matching."""
    D = tuple(sorted(set(edges)))
    covered = [0] * m.n_vertices
    for e in D:
        u, v = m.endpoints[e]
        if u == v:
            raise NotAMatching(f"edge {e} is a loop")
        covered[u] += 1
        covered[v] += 1
    if any(c != 1 for c in covered):
        raise NotAMatching(f"{D} does not cover every vertex exactly once")
    return D


def weight(D: Iterable[int], w: Sequence) -> Fraction:
    out = Fraction(1)
    for e in D:
        out *= w[e]
    return out


def _incidence(m: SurfaceMap) -> list[list[tuple[int, int]]]:
    inc: list[list[tuple[int, int]]] = [[] for _ in range(m.n_vertices)]
    for e, (u, v) in enumerate(m.endpoints):
        if u != v:
            inc[u].append((e, v))
            inc[v].append((e, u))
    for lst in inc:
        lst.sort()
    return inc


def _extend(inc, matched: list[bool], chosen: list[int], out: list) -> None:
    try:
        v = matched.index(False)
    except ValueError:
        out.append(tuple(sorted(chosen)))
        return
    matched[v] = True
    for e, y in inc[v]:
        if not matched[y]:
            matched[y] = True
            chosen.append(e)
            _extend(inc, matched, chosen, out)
            chosen.pop()
            matched[y] = False
    matched[v] = False


def _subtree(inc, n: int, first: tuple[int, int, int]) -> list:
    v, e, y = first
    matched = [False] * n
    matched[v] = matched[y] = True
    out: list = []
    _extend(inc, matched, [e], out)
    return out


def matching_list(m: SurfaceMap, workers: int = 1) -> list[DimerConfiguration]:
    """All perfect matchings, sorted lexicographically by edge ids.

    Backtracks on the lowest unmatched vertex.  With ``workers > 1`` the
    branches at vertex 0 are explored in parallel; the result is identical.
    """
    n = m.n_vertices
    if n == 0:
        return [()]
    if n % 2:
        return []
    inc = _incidence(m)
    roots = [(0, e, y) for e, y in inc[0]]
    if workers > 1 and len(roots) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: _subtree(inc, n, r), roots))
    else:
        parts = [_subtree(inc, n, r) for r in roots]
    out = [D for part in parts for D in part]
    out.sort()
    return out


def enumerate_matchings(m: SurfaceMap, workers: int = 1) -> Iterator[DimerConfiguration]:
    yield from matching_list(m, workers)


def composition_cycles(m: SurfaceMap, D: Sequence[int], D2: Sequence[int]) -> list[DartWalk]:
    """Components of the symmetric difference as alternating closed walks.

    Each walk starts at its lowest vertex with the ``D2`` edge, then
    alternates ``D2`` / ``D`` edges.
    """
    partner_d: dict[int, int] = {}
    partner_d2: dict[int, int] = {}
    diff = set(D) ^ set(D2)
    for e in diff:
        u, v = m.endpoints[e]
        target = partner_d if e in D else partner_d2
        target[u] = e
        target[v] = e
    cycles = []
    seen: set[int] = set()
    for start in sorted(partner_d2):
        if start in seen:
            continue
        walk = []
        x = start
        use_d2 = True
        while True:
            seen.add(x)
            e = partner_d2[x] if use_d2 else partner_d[x]
            d = 2 * e if m.vertex_of[2 * e] == x else 2 * e + 1
            walk.append(d)
            x = m.vertex_of[d ^ 1]
            use_d2 = not use_d2
            if x == start and use_d2:
                break
        cycles.append(tuple(walk))
    return cycles


def composition_delta(
    m: SurfaceMap, basis: HomologyBasis, D: Sequence[int], D2: Sequence[int]
) -> tuple[list[DartWalk], int]:
    """Composition cycles of ``(D, D2)`` and their total homology class."""
    cycles = composition_cycles(m, D, D2)
    chain = 0
    for e in set(D) ^ set(D2):
        chain |= 1 << e
    return cycles, class_of(m, basis, chain)


def delta(m: SurfaceMap, basis: HomologyBasis, D: Sequence[int], D2: Sequence[int]) -> int:
    chain = 0
    for e in set(D) ^ set(D2):
        chain |= 1 << e
    return class_of(m, basis, chain)


@dataclass(frozen=True)
class ClassResolvedPartition:
    """Partition function split by homology class relative to a base matching.

    ``table`` maps class coordinates (bitmask) to ``Z_alpha``; classes that
    receive no matching are absent and read as zero through :meth:`get`.
    """

    base: DimerConfiguration
    table: dict
    total: Fraction

    def get(self, alpha: int) -> Fraction:
        return self.table.get(alpha, Fraction(0))


def partition_bruteforce(
    m: SurfaceMap,
    basis: HomologyBasis,
    w: Sequence,
    D0: Sequence[int] | None = None,
    workers: int = 1,
) -> ClassResolvedPartition:
    matchings = matching_list(m, workers)
    if not matchings:
        raise NoMatchingExists()
    D0 = matchings[0] if D0 is None else check_matching(m, D0)
    table: dict[int, Fraction] = {}
    total = Fraction(0)
    for D in matchings:
        a = delta(m, basis, D0, D)
        x = weight(D, w)
        table[a] = table.get(a, Fraction(0)) + x
        total += x
    return ClassResolvedPartition(D0, dict(sorted(table.items())), total)


def partition_total(m: SurfaceMap, w: Sequence, workers: int = 1) -> Fraction:
    return sum((weight(D, w) for D in matching_list(m, workers)), Fraction(0))


def correlation_bruteforce(
    m: SurfaceMap, w: Sequence, edges: Sequence[int], matchings: Sequence | None = None
) -> Fraction:
    """``<sigma_e1 ... sigma_ek>`` by direct summation over matchings."""
    if matchings is None:
        matchings = matching_list(m)
    Z = sum((weight(D, w) for D in matchings), Fraction(0))
    if Z == 0:
        raise EmptyPartition("partition function vanishes")
    need = set(edges)
    part = sum((weight(D, w) for D in matchings if need.issubset(D)), Fraction(0))
    return part / Z
