"""Drift detection from butterfly interconnectivity.

Each burst boundary closes the bipartite window, projects its young
butterflies into the cumulative oscillator graph, re-derives phases from
neighbourhood identifiers, and resamples frequencies. Two series are then
appended: the phase coherence of the graph (O1) and the coherence of the
phase changes predicted by one integration step (O2). A drift is signalled
when the phase structure is steady while the predicted changes show a
local extremum, and the last signal lies more than ten windows back:

  C1: |mean(last S' values of O1 before window W) - O1[W]| < 10**-(d+2)
  C2: among the last S values of O2 before window W, at least S' are
      strictly greater than O2[W] or at least S' are strictly less
  C3: W - last signalled window > 10

S adapts to the burst-size extremes and S' shrinks as detections
accumulate (default strategy max(1, ceil(S/d))). The ``literal`` strategy
keeps the raw (1-d)*S expression for audit purposes; it makes the O1
suffix empty for every d >= 1, so C1 can never hold and that strategy
never signals.

Windows that close while the graph is still empty carry the previous O1/O2
values forward (0 for the first) so the series stay aligned with the
window counter.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from statistics import fmean

from .butterfly import BipartiteWindow, young_timestamps
from .sgdp import suffix_size
from .signals import DriftSignal, now_ms
from .stream_model import BurstProfile, SGR, ingest
from .uwgo import OscillatorGraph, assign_phases, order_parameter, project, rk4_step

SPRIME_STRATEGIES = ("decreasing", "literal")


@dataclass
class SgddConfig:
    x: float = 0.25
    sigma: float = 1.0
    seed: int | None = None
    step: float = 0.01
    variant: str = "default"
    sprime_strategy: str = "decreasing"

    def __post_init__(self) -> None:
        if not 0.0 < self.x <= 1.0:
            raise ValueError("youth fraction x must be in (0, 1]")
        if self.sprime_strategy not in SPRIME_STRATEGIES:
            raise ValueError(f"unknown S' strategy: {self.sprime_strategy!r}")


@dataclass
class SgddState:
    """Detector state for one stream."""

    config: SgddConfig = field(default_factory=SgddConfig)
    profile: BurstProfile = field(default_factory=BurstProfile)
    window_graph: BipartiteWindow = field(default_factory=BipartiteWindow)
    graph: OscillatorGraph = field(default_factory=OscillatorGraph)
    o1: list[float] = field(default_factory=list)
    o2: list[float] = field(default_factory=list)
    drift_windows: list[int] = field(default_factory=lambda: [0])
    window: int = 1
    t: int = 0
    rng: random.Random = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.rng is None:
            self.rng = random.Random(self.config.seed)


def sprime_length(s: int, d: int, strategy: str) -> int:
    """Shorter suffix length for the steadiness and extremum conditions."""
    if strategy == "literal":
        return (1 - d) * s
    return max(1, -(-s // d))


def cdc_butterfly(average: float, maximum: float, o1: list[float], o2: list[float],
                  t: int, window: int, drift_windows: list[int],
                  variant: str = "default",
                  sprime_strategy: str = "decreasing") -> DriftSignal | None:
    """Drift check over the coherence series for the current window.

    ``o1``/``o2`` are indexed by window (element 0 belongs to window 1);
    the values at window W are the comparison anchors and the suffixes are
    drawn from the windows before W. Fewer than S preceding windows is
    insufficient evidence, not an error. On a signal the window is
    appended to the drift log, which tightens C1 (the precision exponent
    is d+2) for later checks.
    """
    d = len(drift_windows)
    s = suffix_size(maximum, average, d, variant)
    sprime = sprime_length(s, d, sprime_strategy)
    prior_o1 = o1[:window - 1]
    prior_o2 = o2[:window - 1]
    if len(prior_o2) < s or len(prior_o1) < max(sprime, 0):
        return None
    current_o1 = o1[window - 1]
    current_o2 = o2[window - 1]
    o1_suffix = prior_o1[-sprime:] if sprime >= 1 else []
    suffix = prior_o2[-s:]
    more = sum(1 for v in suffix if v > current_o2)
    less = sum(1 for v in suffix if v < current_o2)
    alpha = d + 2
    extremum = less >= sprime or more >= sprime
    if not o1_suffix:
        steady = False
        mu1 = math.nan
    else:
        mu1 = fmean(o1_suffix)
        steady = abs(mu1 - current_o1) < 10.0 ** (-alpha)
    spaced = window - drift_windows[-1] > 10
    if extremum and steady and spaced:
        drift_windows.append(window)
        return DriftSignal(
            mode="sgdd", t=t, window=window, wall_ms=now_ms(),
            params={"alpha": alpha, "S": s, "S_prime": sprime, "mu1": mu1,
                    "more": more, "less": less, "O1": current_o1, "O2": current_o2},
        )
    return None


def sgdd_step(state: SgddState, r: SGR) -> DriftSignal | None:
    """Advance the detector by one record.

    The record's edge joins the window before the boundary test, so a
    closed window includes the first record of the burst that closed it.
    The boundary timestamp is recorded before projection and therefore
    participates in the young suffix.
    """
    state.t += 1
    event = ingest(state.profile, r)
    state.window_graph.add(r.i, r.j, r.tau)
    if not event.starts_window:
        return None
    young = young_timestamps(state.profile.order, state.config.x)
    project(state.window_graph, state.graph, young)
    assign_phases(state.graph, state.rng, state.config.sigma)
    if state.graph.vertices:
        keys = state.graph.sorted_keys()
        o1_value = order_parameter([state.graph.vertices[k].theta for k in keys])
        delta = rk4_step(state.graph, state.config.step)
        o2_value = order_parameter([delta[k] for k in keys])
    else:
        o1_value = state.o1[-1] if state.o1 else 0.0
        o2_value = state.o2[-1] if state.o2 else 0.0
    state.o1.append(o1_value)
    state.o2.append(o2_value)
    signal = cdc_butterfly(state.profile.average, state.profile.maximum,
                           state.o1, state.o2, state.t, state.window,
                           state.drift_windows, state.config.variant,
                           state.config.sprime_strategy)
    state.window += 1
    return signal


def run_sgdd(records, config: SgddConfig | None = None) -> list[DriftSignal]:
    """Run the detector over an iterable of records."""
    state = SgddState(config=config or SgddConfig())
    out: list[DriftSignal] = []
    for r in records:
        signal = sgdd_step(state, r)
        if signal is not None:
            out.append(signal)
    return out
