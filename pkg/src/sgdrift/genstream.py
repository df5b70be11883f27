"""Synthetic bursty bipartite stream generator with injected drifts.

The generator emits bursts of edges, one fresh timestamp per burst. Each
burst's size and wiring depend on two regime parameters: the connection
probability rho and the random-walk length range [l_min, l_max]. With
probability rho a burst move stamps a complete (2,2)-biclique whose
j-vertices are found by a short wedge walk over the recently generated
graph (closing wedges into butterflies inside the burst); otherwise a
fresh vertex is attached. Larger rho and longer walks give larger bursts
and denser butterfly closure.

The first ``prefix_len`` records are generated under a distinct regime 0,
standing in for a real-world prefix, so the switch to the schedule's first
regime is a genuine generative change and counts as the first drift. Later
drifts happen where the schedule switches parameters, at multiples of the
drift interval; a burst never straddles a boundary. Ground truth lists the
index of the last record generated under each outgoing regime.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .stream_model import SGR

PATTERNS = ("gradual", "recurring")

# Parameter plateaus the schedules alternate between, and the regime-0
# defaults used for the stand-in prefix.
BASE_PARAMS = (0.4, 1, 4)
RAISED_PARAMS = (0.6, 3, 4)
PREFIX_PARAMS = (0.3, 1, 2)


@dataclass(frozen=True)
class GeneratorConfig:
    """Regime-0 parameters plus the knobs shared by every regime.

    ``beta`` is the recency horizon (bursts) for walk targets and ``m`` the
    per-burst batch size feeding the burst-size draw; both shift scale, not
    the characteristic patterns.
    """

    rho: float = PREFIX_PARAMS[0]
    l_min: int = PREFIX_PARAMS[1]
    l_max: int = PREFIX_PARAMS[2]
    beta: int = 5
    m: int = 10
    seed: int = 0
    prefix_len: int = 1000

    def __post_init__(self) -> None:
        if not 0.0 < self.rho < 1.0:
            raise ValueError("rho must be in (0, 1)")
        if not 1 <= self.l_min <= self.l_max:
            raise ValueError("walk range must satisfy 1 <= l_min <= l_max")
        if self.beta < 1 or self.m < 1:
            raise ValueError("beta and m must be positive")
        if self.prefix_len < 0:
            raise ValueError("prefix_len must be non-negative")


@dataclass(frozen=True)
class Regime:
    start: int
    rho: float
    l_min: int
    l_max: int


@dataclass(frozen=True)
class DriftSchedule:
    """Parameter regimes over the record index axis.

    Boundaries sit at multiples of the drift interval: the gradual pattern
    changes parameters at 2, 3, and 4 intervals; the recurring pattern at
    2 and 3 (switch to the raised plateau, then back).
    """

    pattern: str
    delta_r: int
    regimes: tuple[Regime, ...]

    @classmethod
    def make(cls, pattern: str, delta_r: int) -> "DriftSchedule":
        if pattern not in PATTERNS:
            raise ValueError(f"unknown drift pattern: {pattern!r}")
        if delta_r <= 0:
            raise ValueError("drift interval must be positive")
        plateaus = [BASE_PARAMS, RAISED_PARAMS, BASE_PARAMS]
        if pattern == "gradual":
            plateaus.append(RAISED_PARAMS)
        regimes = [Regime(0, *plateaus[0])]
        for k, params in enumerate(plateaus[1:], start=2):
            regimes.append(Regime(k * delta_r, *params))
        return cls(pattern, delta_r, tuple(regimes))

    def boundaries(self) -> list[int]:
        return [r.start for r in self.regimes[1:]]


@dataclass(frozen=True)
class GroundTruth:
    """Drift positions: record indices and the timestamps at those indices."""

    cd_indices: tuple[int, ...]
    cd_timestamps: tuple[int, ...]


def schedule_params(schedule: DriftSchedule, index: int) -> tuple[float, int, int]:
    """Active (rho, l_min, l_max) at a record index (prefix not considered)."""
    if index < 0:
        raise ValueError("index must be non-negative")
    active = schedule.regimes[0]
    for regime in schedule.regimes[1:]:
        if regime.start <= index:
            active = regime
        else:
            break
    return (active.rho, active.l_min, active.l_max)


class _RecentGraph:
    """Edges of the last ``beta`` bursts, with adjacency for wedge walks."""

    def __init__(self, beta: int) -> None:
        self._bursts: deque[list[tuple[str, str]]] = deque(maxlen=beta)
        self.i_of_j: dict[str, list[str]] = {}
        self.j_of_i: dict[str, list[str]] = {}
        self.edges: list[tuple[str, str]] = []

    def open_burst(self) -> None:
        self._bursts.append([])
        self._rebuild()

    def add(self, i: str, j: str) -> None:
        self._bursts[-1].append((i, j))
        self.edges.append((i, j))
        self.i_of_j.setdefault(j, []).append(i)
        self.j_of_i.setdefault(i, []).append(j)

    def _rebuild(self) -> None:
        self.edges = [e for burst in self._bursts for e in burst]
        self.i_of_j = {}
        self.j_of_i = {}
        for i, j in self.edges:
            self.i_of_j.setdefault(j, []).append(i)
            self.j_of_i.setdefault(i, []).append(j)


class _Emitter:
    def __init__(self, config: GeneratorConfig, schedule: DriftSchedule, n: int):
        self.config = config
        self.schedule = schedule
        self.n = n
        self.rng = random.Random(config.seed)
        self.recent = _RecentGraph(config.beta)
        self.next_i = 0
        self.next_j = 0
        self.cut_points = self._cut_points()
        self.mark_set = self._mark_set()
        self.cd_marks: list[tuple[int, int]] = []

    def _cut_points(self) -> list[int]:
        cuts = {self.config.prefix_len, self.n}
        cuts.update(b for b in self.schedule.boundaries() if b < self.n)
        return sorted(c for c in cuts if 0 < c <= self.n)

    def _mark_set(self) -> set[int]:
        marks = {self.config.prefix_len}
        marks.update(b for b in self.schedule.boundaries()
                     if self.config.prefix_len < b < self.n)
        return {m for m in marks if 0 < m < self.n}

    def _params_at(self, index: int) -> tuple[float, int, int]:
        if index < self.config.prefix_len:
            return (self.config.rho, self.config.l_min, self.config.l_max)
        return schedule_params(self.schedule, index)

    def _fresh_i(self) -> str:
        self.next_i += 1
        return f"u{self.next_i}"

    def _fresh_j(self) -> str:
        self.next_j += 1
        return f"v{self.next_j}"

    def _walk_j(self, start_j: str, length: int) -> str:
        current = start_j
        for _ in range(length):
            fans = self.recent.i_of_j.get(current)
            if not fans:
                break
            anchor = self.rng.choice(fans)
            current = self.rng.choice(self.recent.j_of_i[anchor])
        return current

    def _stamp_edges(self, rho: float, l_min: int, l_max: int) -> list[tuple[str, str]]:
        # Complete biclique between two i-vertices and two walk-related
        # j-vertices; emitted inside one burst so the motif is whole within
        # a single detector window.
        if self.recent.edges:
            i_a, j_a = self.rng.choice(self.recent.edges)
            if self.rng.random() >= rho:
                i_a = self._fresh_i()
            j_b = self._walk_j(j_a, self.rng.randint(l_min, l_max))
            if j_b == j_a:
                j_b = self._fresh_j()
        else:
            i_a, j_a, j_b = self._fresh_i(), self._fresh_j(), self._fresh_j()
        i_b = self._fresh_i()
        return [(i_a, j_a), (i_a, j_b), (i_b, j_a), (i_b, j_b)]

    def _attach_edge(self) -> tuple[str, str]:
        i = self._fresh_i()
        js = list(self.recent.i_of_j)
        if js and self.rng.random() < 0.5:
            return (i, self.rng.choice(js))
        return (i, self._fresh_j())

    def records(self):
        rng = self.rng
        t = 0
        tau = 0
        cuts = list(self.cut_points)
        while t < self.n:
            rho, l_min, l_max = self._params_at(t)
            size = 1 + sum(rng.random() < rho for _ in range(self.config.m)) \
                + rng.randint(l_min, l_max)
            while cuts and cuts[0] <= t:
                cuts.pop(0)
            if cuts:
                size = min(size, cuts[0] - t)
            tau += 1
            self.recent.open_burst()
            budget = size
            while budget > 0:
                if rng.random() < rho:
                    edges = self._stamp_edges(rho, l_min, l_max)[:budget]
                else:
                    edges = [self._attach_edge()]
                for i, j in edges:
                    t += 1
                    budget -= 1
                    self.recent.add(i, j)
                    if t in self.mark_set:
                        self.cd_marks.append((t, tau))
                    yield SGR(i, j, 1.0, tau, t)

    def run(self, sink) -> GroundTruth:
        for record in self.records():
            sink(record)
        self.cd_marks.sort()
        return GroundTruth(tuple(i for i, _ in self.cd_marks),
                           tuple(ts for _, ts in self.cd_marks))


def generate(config: GeneratorConfig, schedule: DriftSchedule,
             n: int) -> tuple[list[SGR], GroundTruth]:
    """Generate ``n`` records in memory along with their ground truth.

    Drift indices are the prefix length plus every schedule boundary that
    falls strictly inside the generated range; boundaries at or below the
    prefix are suppressed. Output is a pure function of (config, schedule,
    n).
    """
    if n <= config.prefix_len:
        raise ValueError("n must exceed the prefix length")
    records: list[SGR] = []
    truth = _Emitter(config, schedule, n).run(records.append)
    return records, truth


def format_sgr(record: SGR, delimiter: str = ",") -> str:
    omega = repr(record.omega)
    return f"{record.i}{delimiter}{record.j}{delimiter}{omega}{delimiter}{record.tau}"


def generate_to_files(config: GeneratorConfig, schedule: DriftSchedule, n: int,
                      stream_path, truth_path, delimiter: str = ",") -> GroundTruth:
    """Stream ``n`` generated records to a text file plus a truth file.

    The stream file holds one record per line in the parseable text format;
    the truth file holds one ``index<delimiter>tau`` line per drift.
    """
    if n <= config.prefix_len:
        raise ValueError("n must exceed the prefix length")
    with open(stream_path, "w", encoding="utf-8") as stream:
        emitter = _Emitter(config, schedule, n)
        truth = emitter.run(lambda r: stream.write(format_sgr(r, delimiter) + "\n"))
    with open(truth_path, "w", encoding="utf-8") as out:
        for index, ts in zip(truth.cd_indices, truth.cd_timestamps):
            out.write(f"{index}{delimiter}{ts}\n")
    return truth


def read_ground_truth(path, delimiter: str = ",") -> GroundTruth:
    indices: list[int] = []
    timestamps: list[int] = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            index_s, tau_s = line.split(delimiter)
            indices.append(int(index_s))
            timestamps.append(int(tau_s))
    return GroundTruth(tuple(indices), tuple(timestamps))
