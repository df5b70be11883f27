"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import math
import random
from itertools import combinations

from sgdrift.butterfly import BipartiteWindow, ButterflyKey

# Worked-example window: solid edges form eight butterflies connected
# through j-vertices; dotted edges participate in none (the two j0 edges
# would add two more butterflies, but j0 is stale). Vertex ids are padded
# so canonical enumeration order matches the narrative order v1..v8.
FIG5_SOLID = [
    ("i02", "j1"), ("i02", "j2"), ("i03", "j1"), ("i03", "j2"),
    ("i04", "j1"), ("i04", "j2"), ("i05", "j2"), ("i05", "j3"),
    ("i06", "j2"), ("i06", "j3"), ("i07", "j4"), ("i07", "j5"),
    ("i08", "j4"), ("i08", "j5"), ("i09", "j5"), ("i09", "j6"),
    ("i10", "j5"), ("i10", "j6"), ("i11", "j6"), ("i11", "j7"),
    ("i12", "j6"), ("i12", "j7"), ("i13", "j8"), ("i13", "j9"),
    ("i14", "j8"), ("i14", "j9"),
]
FIG5_DOTTED = [("i13", "j7"), ("i07", "j3"), ("i02", "j0"), ("i03", "j0")]

FIG5_STALE_TAU = 1
FIG5_YOUNG_TAU = 2

FIG5_BUTTERFLIES = [
    ButterflyKey.make("i02", "i03", "j1", "j2"),
    ButterflyKey.make("i02", "i04", "j1", "j2"),
    ButterflyKey.make("i03", "i04", "j1", "j2"),
    ButterflyKey.make("i05", "i06", "j2", "j3"),
    ButterflyKey.make("i07", "i08", "j4", "j5"),
    ButterflyKey.make("i09", "i10", "j5", "j6"),
    ButterflyKey.make("i11", "i12", "j6", "j7"),
    ButterflyKey.make("i13", "i14", "j8", "j9"),
]

# Expected projection: (v index pair, weight) per the worked example.
FIG5_EDGES = {
    (0, 1): 2, (0, 2): 3, (1, 2): 3,
    (0, 3): 4, (1, 3): 4, (2, 3): 4,
    (4, 5): 2, (5, 6): 2,
}


def fig5_window() -> tuple[BipartiteWindow, set[int]]:
    window = BipartiteWindow()
    for i, j in FIG5_SOLID:
        window.add(i, j, FIG5_YOUNG_TAU)
    for i, j in FIG5_DOTTED:
        window.add(i, j, FIG5_STALE_TAU if j == "j0" else FIG5_YOUNG_TAU)
    return window, {FIG5_YOUNG_TAU}


def brute_force_butterflies(edges: set[tuple[str, str]],
                            young_js: set[str]) -> list[ButterflyKey]:
    """Oracle: test every (i-pair, j-pair) four-subset for biclique closure."""
    i_vertices = sorted({i for i, _ in edges})
    j_vertices = sorted({j for _, j in edges})
    found = []
    for i1, i2 in combinations(i_vertices, 2):
        for j1, j2 in combinations(j_vertices, 2):
            if j1 not in young_js or j2 not in young_js:
                continue
            if ((i1, j1) in edges and (i1, j2) in edges
                    and (i2, j1) in edges and (i2, j2) in edges):
                found.append(ButterflyKey.make(i1, i2, j1, j2))
    found.sort()
    return found


def random_bipartite_window(rng: random.Random, max_side: int = 15,
                            density_lo: float = 0.1,
                            density_hi: float = 0.5) -> BipartiteWindow:
    """Random window with <= 2*max_side vertices and a random youth split."""
    ni = rng.randint(2, max_side)
    nj = rng.randint(2, max_side)
    density = rng.uniform(density_lo, density_hi)
    window = BipartiteWindow()
    for a in range(ni):
        for b in range(nj):
            if rng.random() < density:
                # half the j-vertices are stamped stale
                window.add(f"i{a:02d}", f"j{b:02d}", 2 if b % 2 == 0 else 1)
    return window


def rk4_reference(thetas: list[float], omegas: list[float],
                  weights: list[list[float]], h: float) -> list[float]:
    """Straight-line staged integrator over an adjacency matrix.

    Spells out the four stage equations one by one; independent of the
    graph-based implementation it checks.
    """
    n = len(thetas)

    k1 = [omegas[v] + sum(weights[v][u] * math.sin(thetas[u] - thetas[v])
                          for u in range(n) if weights[v][u])
          for v in range(n)]
    k2 = [omegas[v] + sum(weights[v][u] * math.sin(
            thetas[u] + 0.5 * h * k1[u] - thetas[v] - 0.5 * h * k1[v])
            for u in range(n) if weights[v][u])
          for v in range(n)]
    k3 = [omegas[v] + sum(weights[v][u] * math.sin(
            thetas[u] + 0.5 * h * k2[u] - thetas[v] - 0.5 * h * k2[v])
            for u in range(n) if weights[v][u])
          for v in range(n)]
    k4 = [omegas[v] + sum(weights[v][u] * math.sin(
            thetas[u] + h * k3[u] - thetas[v] - h * k3[v])
            for u in range(n) if weights[v][u])
          for v in range(n)]
    return [(h / 6.0) * (k1[v] + 2.0 * k2[v] + 2.0 * k3[v] + k4[v])
            for v in range(n)]


def order_parameter_oracle(phases) -> float:
    """Magnitude of the mean unit phasor, via complex arithmetic."""
    values = list(phases)
    total = sum(complex(math.cos(p), math.sin(p)) for p in values)
    return abs(total) / len(values)


def taus_to_records(taus, rng: random.Random | None = None):
    """Wrap a timestamp sequence into records with arbitrary payloads."""
    from sgdrift.stream_model import SGR
    rng = rng or random.Random(0)
    return [SGR(f"u{rng.randint(0, 50)}", f"v{rng.randint(0, 50)}",
                round(rng.uniform(0.1, 5.0), 3), tau, t)
            for t, tau in enumerate(taus, start=1)]
