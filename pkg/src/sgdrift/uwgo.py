"""Weighted graph of phase oscillators built from young butterflies.

Each young butterfly becomes a vertex carrying a phase, a natural
frequency, and a fixed-width integer identifier derived from its canonical
key. Vertices persist across windows (the graph is cumulative; only the
bipartite window tumbles). Two vertices are linked when their butterflies
share a j-vertex, with a static weight equal to the size of the sharing
neighbourhood at link time. Phases embed neighbourhoods: the phase of a
vertex is the sum of its neighbours' identifiers reduced modulo 2*pi, so
identical neighbourhoods hash to identical phases and isolated vertices
sit at phase zero.

One coupled-oscillator integration step per window predicts the phase
changes. The coupling follows the attractive convention sin(theta_n -
theta_v), which is the form the staged integrator equations spell out.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass

from .butterfly import BipartiteWindow, ButterflyKey, enumerate_young

TWO_PI = 2.0 * math.pi


def butterfly_ident(key: ButterflyKey) -> int:
    """Fixed 32-bit identifier of a canonical butterfly key.

    Seed-free and stable across runs and platforms; distinct keys may
    collide, which is tolerated (identifiers only feed the phase embedding).
    """
    payload = "\x1f".join((key.i_lo, key.i_hi, key.j_lo, key.j_hi)).encode("utf-8")
    return int.from_bytes(hashlib.blake2b(payload, digest_size=4).digest(), "big")


@dataclass
class Oscillator:
    """One vertex: identifier, phase in [0, 2*pi), sampled frequency."""

    key: ButterflyKey
    ident: int
    theta: float = 0.0
    omega: float = 0.0


class OscillatorGraph:
    """Undirected weighted graph of oscillators, keyed by butterfly."""

    def __init__(self) -> None:
        self.vertices: dict[ButterflyKey, Oscillator] = {}
        self.adjacency: dict[ButterflyKey, dict[ButterflyKey, int]] = {}
        self._by_j: dict[str, set[ButterflyKey]] = {}
        self._sorted_keys: list[ButterflyKey] | None = None

    def __len__(self) -> int:
        return len(self.vertices)

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency.values()) // 2

    def neighbors(self, key: ButterflyKey) -> dict[ButterflyKey, int]:
        return self.adjacency.get(key, {})

    def sorted_keys(self) -> list[ButterflyKey]:
        """Vertices in canonical order; cached between insertions."""
        if self._sorted_keys is None:
            self._sorted_keys = sorted(self.vertices)
        return self._sorted_keys

    def _add_vertex(self, key: ButterflyKey) -> Oscillator:
        osc = Oscillator(key, butterfly_ident(key))
        self.vertices[key] = osc
        self.adjacency[key] = {}
        self._sorted_keys = None
        for j in key.j_vertices:
            self._by_j.setdefault(j, set()).add(key)
        return osc

    def _add_edge(self, u: ButterflyKey, v: ButterflyKey, weight: int) -> None:
        self.adjacency[u][v] = weight
        self.adjacency[v][u] = weight

    def dump_edges(self, out) -> None:
        """Debug dump: one 'v_id u_id weight' line per edge."""
        seen: set[tuple[ButterflyKey, ButterflyKey]] = set()
        for u in sorted(self.adjacency):
            for v, w in sorted(self.adjacency[u].items()):
                pair = (u, v) if u < v else (v, u)
                if pair in seen:
                    continue
                seen.add(pair)
                out.write(f"{self.vertices[pair[0]].ident} {self.vertices[pair[1]].ident} {w}\n")


def project(window: BipartiteWindow, graph: OscillatorGraph,
            young: set[int]) -> list[ButterflyKey]:
    """Fold a closed window's young butterflies into the oscillator graph.

    Butterflies are processed in canonical enumeration order. For each one,
    L is the set of butterflies already present in the graph that share at
    least one j-vertex with it, plus the butterfly itself; it is linked to
    every other member of L with static weight |L|. Existing edges keep the
    weight they were created with, and a butterfly re-derived from an
    identical key maps to its existing vertex. The window is discarded
    entirely afterwards (tumbling).
    """
    keys = enumerate_young(window, young)
    for key in keys:
        sharers: set[ButterflyKey] = set()
        for j in key.j_vertices:
            sharers |= graph._by_j.get(j, set())
        sharers.add(key)
        size = len(sharers)
        if key not in graph.vertices:
            graph._add_vertex(key)
        # Sorted so adjacency insertion order (and with it floating-point
        # summation order downstream) never depends on hash seeding.
        for other in sorted(sharers):
            if other == key:
                continue
            if other not in graph.adjacency[key]:
                graph._add_edge(key, other, size)
    window.clear()
    return keys


def assign_phases(graph: OscillatorGraph, rng: random.Random,
                  sigma: float = 1.0) -> None:
    """Set every vertex's phase from its neighbourhood and resample frequencies.

    The phase is the exact integer sum of neighbour identifiers reduced
    modulo 2*pi into [0, 2*pi); isolated vertices get phase 0. Frequencies
    are drawn from a zero-mean Gaussian with standard deviation ``sigma``,
    in canonical vertex order so runs are reproducible for a given seed.
    """
    for key in graph.sorted_keys():
        osc = graph.vertices[key]
        total = sum(graph.vertices[n].ident for n in graph.adjacency[key])
        theta = math.fmod(float(total), TWO_PI)
        if theta < 0.0:
            theta += TWO_PI
        osc.theta = theta
        osc.omega = rng.gauss(0.0, sigma)


def order_parameter(phases) -> float:
    """Global phase-coherence measure in [0, 1].

    1 means all phases coincide; symmetric phase arrangements cancel to 0.
    Undefined on an empty collection.
    """
    values = list(phases)
    n = len(values)
    if n == 0:
        raise ValueError("order parameter is undefined for zero phases")
    s = sum(math.sin(v) for v in values)
    c = sum(math.cos(v) for v in values)
    r = math.hypot(s, c) / n
    return min(r, 1.0)


def rk4_step(graph: OscillatorGraph, h: float = 0.01) -> dict[ButterflyKey, float]:
    """One classical 4th-order step of the coupled phase dynamics.

    d theta_v / dt = omega_v + sum_n w_vn * sin(theta_n - theta_v)

    Returns the predicted per-vertex phase change over one step of size
    ``h`` without mutating the graph's phases.
    """
    if h <= 0.0:
        raise ValueError("step size must be positive")
    keys = graph.sorted_keys()
    position = {k: a for a, k in enumerate(keys)}
    theta0 = [graph.vertices[k].theta for k in keys]
    omega = [graph.vertices[k].omega for k in keys]
    links = [[(position[n], w) for n, w in graph.adjacency[k].items()]
             for k in keys]
    sin = math.sin

    def deriv(theta: list[float]) -> list[float]:
        out = []
        for v, (base, edges) in enumerate(zip(omega, links)):
            tv = theta[v]
            for u, w in edges:
                base += w * sin(theta[u] - tv)
            out.append(base)
        return out

    half = 0.5 * h
    k1 = deriv(theta0)
    k2 = deriv([t + half * k for t, k in zip(theta0, k1)])
    k3 = deriv([t + half * k for t, k in zip(theta0, k2)])
    k4 = deriv([t + h * k for t, k in zip(theta0, k3)])
    sixth = h / 6.0
    return {k: sixth * (k1[v] + 2.0 * k2[v] + 2.0 * k3[v] + k4[v])
            for v, k in enumerate(keys)}
