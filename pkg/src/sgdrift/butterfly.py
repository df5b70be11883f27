"""Burst-tumbled bipartite window and young-butterfly enumeration.

The window accumulates deduplicated edges between burst boundaries and is
cleared entirely after each projection. A butterfly is a (2,2)-biclique;
it is *young* when both of its right-partition vertices were last touched
at a timestamp inside the most recent x-fraction of seen unique timestamps
(x = 25% by default). Enumeration is wedge-based: every pair of young
j-vertices contributes one butterfly per pair of common i-neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations


@dataclass(frozen=True, order=True)
class ButterflyKey:
    """Canonical identity of one (2,2)-biclique {i_lo,i_hi} x {j_lo,j_hi}."""

    i_lo: str
    i_hi: str
    j_lo: str
    j_hi: str

    @classmethod
    def make(cls, i1: str, i2: str, j1: str, j2: str) -> "ButterflyKey":
        if i1 == i2 or j1 == j2:
            raise ValueError("butterfly vertices must be distinct within a partition")
        i_lo, i_hi = (i1, i2) if i1 < i2 else (i2, i1)
        j_lo, j_hi = (j1, j2) if j1 < j2 else (j2, j1)
        return cls(i_lo, i_hi, j_lo, j_hi)

    @property
    def j_vertices(self) -> tuple[str, str]:
        return (self.j_lo, self.j_hi)


class BipartiteWindow:
    """Edge set of the current burst window, with per-j touch timestamps.

    ``add`` deduplicates (i, j) pairs but records every touch: the last
    timestamp at which a j-vertex appeared in any record decides its youth.
    For every j present in the window that last touch necessarily happened
    inside the window, so the map doubles as the stream-history view.
    """

    def __init__(self) -> None:
        self.edges: set[tuple[str, str]] = set()
        self.j_last_tau: dict[str, int] = {}
        self._i_of_j: dict[str, set[str]] = {}

    def __len__(self) -> int:
        return len(self.edges)

    def add(self, i: str, j: str, tau: int) -> bool:
        """Record one arriving edge; returns True when the pair is new."""
        self.j_last_tau[j] = tau
        if (i, j) in self.edges:
            return False
        self.edges.add((i, j))
        self._i_of_j.setdefault(j, set()).add(i)
        return True

    def i_neighbors(self, j: str) -> set[str]:
        return self._i_of_j.get(j, set())

    def clear(self) -> None:
        self.edges.clear()
        self.j_last_tau.clear()
        self._i_of_j.clear()


def young_timestamps(ordered_unique: list[int], x: float) -> set[int]:
    """Suffix of ceil(x*n) timestamps from the first-seen-order history.

    The ceiling is taken over the decimal value of ``x`` exactly, so
    fractions like 0.07 never overshoot by one at multiples of n.
    """
    if not 0.0 < x <= 1.0:
        raise ValueError("x must be in (0, 1]")
    n = len(ordered_unique)
    if n == 0:
        return set()
    fraction = Fraction(str(x))
    k = -((-n * fraction.numerator) // fraction.denominator)
    return set(ordered_unique[-k:])


def enumerate_young(window: BipartiteWindow, young: set[int]) -> list[ButterflyKey]:
    """List every young butterfly in a closed window, in canonical order.

    For each pair of young j-vertices, the common i-neighbourhood is
    intersected and every i-pair inside it yields one key. The output is
    sorted and duplicate-free by construction.
    """
    young_js = sorted(j for j, tau in window.j_last_tau.items()
                      if tau in young and j in window._i_of_j)
    found: list[ButterflyKey] = []
    for j1, j2 in combinations(young_js, 2):
        common = window.i_neighbors(j1) & window.i_neighbors(j2)
        if len(common) < 2:
            continue
        for i1, i2 in combinations(sorted(common), 2):
            found.append(ButterflyKey.make(i1, i2, j1, j2))
    found.sort()
    return found
