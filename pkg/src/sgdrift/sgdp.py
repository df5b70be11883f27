"""Payload-free drift prediction from the burst-size time-series.

The predictor reads nothing but the generation timestamp of each record.
Every new timestamp closes a burst, appends the updated average burst size
to a series, and opens a window; the drift check then compares the current
average against the suffix of values that preceded it, whose length S
adapts to the seen burst sizes. A signal fires when enough of those
preceding values sit strictly above or strictly below the current average,
where "enough" is the dynamic threshold ceil(S * f).

A gate keeps signals apart: a window may only be checked when its distance
from the last signalled window exceeds the current average burst size. The
gate is re-read before each threshold factor, so one window emits at most
one signal even with the full factor schedule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .signals import DriftSignal, now_ms
from .stream_model import BurstProfile, ingest_timestamp

# Factor schedule from the reference procedure; in practice almost all
# signals fire at f=0.3, which is the shipped default.
FULL_F_SCHEDULE: tuple[float, ...] = (1.0, 0.1, 0.9, 0.2, 0.8, 0.3, 0.7, 0.4, 0.6, 0.5)
DEFAULT_F_SCHEDULE: tuple[float, ...] = (0.3,)

VARIANTS = ("default", "appendix")


def _digits_floor_log10(x: float) -> int:
    # floor(log10(x)) for x >= 1, computed exactly via the decimal digit count
    return len(str(int(x))) - 1


def suffix_size(maximum: float, average: float, d: int, variant: str = "default") -> int:
    """Adaptive suffix length from the burst-size extremes.

    The base ratio is floor(log10(max(maximum, 100))) over
    floor(log10(max(average, 10))). The ``default`` variant raises it to
    (-1)**(d+1) and the ``appendix`` variant to (-1)**d, where ``d`` is the
    size of the drift-window log; the result is rounded up and clamped to
    at least 1.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown suffix-size variant: {variant!r}")
    if d < 1:
        raise ValueError("d must be at least 1")
    num = _digits_floor_log10(max(maximum, 100))
    den = _digits_floor_log10(max(average, 10))
    flipped = (d % 2 == 0) if variant == "default" else (d % 2 == 1)
    if flipped:
        num, den = den, num
    return max(1, -(-num // den))


def count_threshold(s: int, f: float) -> int:
    """ceil(S * f), computed exactly for decimal threshold factors."""
    frac = Fraction(str(f))
    return -((-s * frac.numerator) // frac.denominator)


@dataclass
class SgdpConfig:
    f_schedule: tuple[float, ...] = DEFAULT_F_SCHEDULE
    variant: str = "default"

    def __post_init__(self) -> None:
        if not self.f_schedule or not all(0.0 < f <= 1.0 for f in self.f_schedule):
            raise ValueError("threshold factors must lie in (0, 1]")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown suffix-size variant: {self.variant!r}")


@dataclass
class SgdpState:
    """Predictor state for one stream."""

    config: SgdpConfig = field(default_factory=SgdpConfig)
    profile: BurstProfile = field(default_factory=BurstProfile)
    series: list[float] = field(default_factory=list)
    drift_windows: list[int] = field(default_factory=lambda: [0])
    window: int = 1
    t: int = 0


def cds_bursts(maximum: float, average: float, series: list[float], window: int,
               t: int, drift_windows: list[int], f: float,
               variant: str = "default") -> DriftSignal | None:
    """Drift check over the burst-size series for one threshold factor.

    The series' newest element is the current average, appended by the
    caller just before the check; the examined suffix is the S values that
    precede it. Counts how many suffix elements are strictly greater and
    strictly less than the current average (ties count toward neither). If
    either count reaches ceil(S * f) a signal is emitted and the window is
    appended to the drift log. Fewer than S preceding values is
    insufficient evidence, not an error.
    """
    d = len(drift_windows)
    s = suffix_size(maximum, average, d, variant)
    prior = series[:-1]
    if len(prior) < s:
        return None
    suffix = prior[-s:]
    greater = sum(1 for x in suffix if x > average)
    less = sum(1 for x in suffix if x < average)
    threshold = count_threshold(s, f)
    if greater >= threshold or less >= threshold:
        drift_windows.append(window)
        return DriftSignal(
            mode="sgdp", t=t, window=window, wall_ms=now_ms(),
            params={"f": f, "S": s, "threshold": threshold,
                    "greater": greater, "less": less, "average": average},
        )
    return None


def sgdp_step(state: SgdpState, tau: int) -> list[DriftSignal]:
    """Advance the predictor by one record, identified by its timestamp only.

    On a burst boundary the updated average is appended to the series, then
    each threshold factor runs the drift check provided the window gate
    W - last_signal_window > average holds. The gate is re-read after each
    factor so a signal blocks the remaining factors for this window.
    """
    state.t += 1
    event = ingest_timestamp(state.profile, tau)
    fired: list[DriftSignal] = []
    if event.starts_window:
        state.series.append(state.profile.average)
        for f in state.config.f_schedule:
            if state.window - state.drift_windows[-1] > state.profile.average:
                signal = cds_bursts(state.profile.maximum, state.profile.average,
                                    state.series, state.window, state.t,
                                    state.drift_windows, f, state.config.variant)
                if signal is not None:
                    fired.append(signal)
        state.window += 1
    return fired


def run_sgdp(taus, config: SgdpConfig | None = None) -> list[DriftSignal]:
    """Run the predictor over an iterable of timestamps."""
    state = SgdpState(config=config or SgdpConfig())
    out: list[DriftSignal] = []
    for tau in taus:
        out.extend(sgdp_step(state, tau))
    return out
