"""Streaming graph records and the online burstiness profile.

A stream is an unbounded sequence of timestamped weighted edges. Records
carrying the same source timestamp arrive together as a burst; the profile
tracks the current burst size, the running average and maximum of closed
burst sizes, and the set of timestamps seen so far. Both detectors drive
their burst-adaptive windows off the events this module emits.

One deliberate quirk is preserved from the underlying update rule: the
average folds in a closed burst only when a *new* timestamp arrives, so the
final partial burst at stream end is never folded in (there is no flush).
A late arrival of an already-seen timestamp increments the current burst
counter rather than reopening the original burst.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class SgrParseError(ValueError):
    """Raised when a stream line cannot be parsed into a record."""


@dataclass(frozen=True)
class SGR:
    """One streaming graph record: an edge plus its source timestamp.

    ``i`` and ``j`` are opaque vertex tokens from the left and right
    partitions. ``tau`` is assigned by the data source and may repeat,
    decrease, or jump (late arrivals are legal). ``t`` is the 1-based
    arrival index assigned at ingestion and strictly increases.
    """

    i: str
    j: str
    omega: float
    tau: int
    t: int


@dataclass(frozen=True)
class BurstStats:
    """Immutable snapshot of the burstiness counters."""

    current: int
    average: float
    maximum: int
    closed: int


@dataclass(frozen=True)
class IngestEvent:
    """Outcome of feeding one record to the profile.

    ``starts_window`` is true when the record's timestamp is unseen and at
    least two timestamps were already known, i.e. a burst boundary that both
    detectors treat as a window close. ``starts_window`` implies
    ``new_timestamp``.
    """

    new_timestamp: bool
    starts_window: bool
    stats: BurstStats


@dataclass
class Burst:
    """A maximal group of records sharing one (tau, arrival-time) pair."""

    tau: int
    arrival: int
    records: list[SGR]


@dataclass
class BurstProfile:
    """Online burstiness state, mutated by :func:`ingest`.

    ``seen`` holds every timestamp observed; ``order`` keeps the unique
    timestamps in first-seen order, which the young-butterfly filter
    indexes. Both grow without bound by default; :meth:`compact` trims them
    at the cost of treating re-arrivals of dropped timestamps as new bursts.
    """

    current: int = 1
    average: float = 0.0
    maximum: int = 0
    closed: int = 0
    seen: set[int] = field(default_factory=set)
    order: list[int] = field(default_factory=list)

    def stats(self) -> BurstStats:
        return BurstStats(self.current, self.average, self.maximum, self.closed)

    def compact(self, keep: int) -> None:
        """Keep only the ``keep`` most recent unique timestamps.

        Off the ingestion path by default. After compaction a late arrival
        of a dropped timestamp opens a new burst instead of extending the
        current one.
        """
        if keep < 0:
            raise ValueError("keep must be non-negative")
        if len(self.order) > keep:
            self.order = self.order[-keep:] if keep else []
            self.seen = set(self.order)


def ingest_timestamp(profile: BurstProfile, tau: int) -> IngestEvent:
    """Advance the profile with one record's timestamp.

    Follows the per-record update literally: the membership test and the
    burst count are evaluated against the pre-insert timestamp set, the
    average folds the current burst only on a new timestamp, and the
    timestamp is recorded afterwards in both branches.
    """
    closed_pre = len(profile.seen)
    is_new = tau not in profile.seen
    if not is_new:
        profile.current += 1
    else:
        profile.average = (profile.average * closed_pre + profile.current) / (closed_pre + 1)
        profile.current = 1
    if profile.current > profile.maximum:
        profile.maximum = profile.current
    starts_window = is_new and closed_pre > 1
    profile.seen.add(tau)
    if is_new:
        profile.order.append(tau)
    profile.closed = len(profile.seen)
    return IngestEvent(is_new, starts_window, profile.stats())


def ingest(profile: BurstProfile, r: SGR) -> IngestEvent:
    """Feed one record to the profile. Only its timestamp is read."""
    return ingest_timestamp(profile, r.tau)


def parse_sgr(line: str, t: int, delimiter: str = ",") -> SGR | None:
    """Parse one delimited stream line into a record with arrival index ``t``.

    Returns None for blank lines (skip signal). Raises :class:`SgrParseError`
    naming the offending field otherwise.
    """
    stripped = line.strip()
    if not stripped:
        return None
    parts = stripped.split(delimiter)
    if len(parts) != 4:
        raise SgrParseError(f"expected 4 fields, got {len(parts)}")
    i, j, omega_s, tau_s = (p.strip() for p in parts)
    if not i:
        raise SgrParseError("field 1 (i) is empty")
    if not j:
        raise SgrParseError("field 2 (j) is empty")
    try:
        omega = float(omega_s)
    except ValueError:
        raise SgrParseError(f"field 3 (omega) is not a real number: {omega_s!r}") from None
    try:
        tau = int(tau_s)
    except ValueError:
        raise SgrParseError(f"field 4 (tau) is not an integer: {tau_s!r}") from None
    return SGR(i, j, omega, tau, t)


def parse_labeled_sgr(line: str, t: int, delimiter: str = ",") -> tuple[SGR, int] | None:
    """Parse the offline oracle format, which appends an arrival-time field."""
    stripped = line.strip()
    if not stripped:
        return None
    parts = stripped.split(delimiter)
    if len(parts) != 5:
        raise SgrParseError(f"expected 5 fields, got {len(parts)}")
    record = parse_sgr(delimiter.join(parts[:4]), t, delimiter)
    assert record is not None
    try:
        arrival = int(parts[4].strip())
    except ValueError:
        raise SgrParseError(f"field 5 (arrival) is not an integer: {parts[4]!r}") from None
    return record, arrival


def read_sgr_stream(lines, delimiter: str = ","):
    """Yield records from an iterable of text lines, skipping blank lines.

    Arrival indices are assigned 1, 2, ... in line order. Parse errors
    propagate with the 1-based line number attached.
    """
    t = 0
    for lineno, line in enumerate(lines, start=1):
        try:
            record = parse_sgr(line, t + 1, delimiter)
        except SgrParseError as exc:
            raise SgrParseError(f"line {lineno}: {exc}") from None
        if record is None:
            continue
        t += 1
        yield record


def segment_bursts(records) -> list[Burst]:
    """Offline oracle: group (record, arrival) pairs into bursts.

    A burst is the maximal set of records sharing both the source timestamp
    and the arrival time; bursts are ordered by their first member's
    position in the input.
    """
    bursts: dict[tuple[int, int], Burst] = {}
    for record, arrival in records:
        key = (record.tau, arrival)
        burst = bursts.get(key)
        if burst is None:
            bursts[key] = Burst(record.tau, arrival, [record])
        else:
            burst.records.append(record)
    return list(bursts.values())
