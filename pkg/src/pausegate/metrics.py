"""Per-recording feature summaries: pause statistics and F0 statistics.

Pause metrics are the decision inputs. F0 statistics are reported for
transparency but excluded from the default decision rule; the F0 estimate
is simply the strongest in-band frequency per frame, which is crude but
matches the rest of the band-limited analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .audio_io import AudioSignal
from .pause_detection import SegmentList
from .spectral import BandConfig, WindowPlan, default_plan, windowed_scan

_TOL = 1e-9


def _close(a: float, b: float, scale: float = 1.0) -> bool:
    return abs(a - b) <= _TOL * max(1.0, abs(scale))


@dataclass(frozen=True)
class PauseMetrics:
    """Pause counts and durations over a trimmed utterance."""

    pause_count: int
    pause_total_s: float
    speech_total_s: float
    utterance_s: float
    pause_pct: float
    mean_pause_s: float

    def __post_init__(self) -> None:
        if self.pause_count < 0:
            raise ValueError("pause_count must be >= 0")
        for name in ("pause_total_s", "speech_total_s", "utterance_s"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be >= 0")
        if not _close(
            self.pause_total_s + self.speech_total_s, self.utterance_s, self.utterance_s
        ):
            raise ValueError("pause_total_s + speech_total_s must equal utterance_s")
        if not -_TOL <= self.pause_pct <= 100.0 + _TOL:
            raise ValueError("pause_pct must lie in [0, 100]")
        if (self.pause_count == 0) != (self.pause_total_s == 0.0):
            raise ValueError("pause_count is zero exactly when pause_total_s is zero")
        if self.utterance_s > 0.0:
            if not _close(
                self.pause_pct, 100.0 * self.pause_total_s / self.utterance_s, 100.0
            ):
                raise ValueError("pause_pct inconsistent with durations")
        elif self.pause_pct != 0.0:
            raise ValueError("pause_pct must be 0 for an empty utterance")
        if self.pause_count == 0:
            if self.mean_pause_s != 0.0:
                raise ValueError("mean_pause_s must be 0 when there are no pauses")
        elif not _close(
            self.mean_pause_s, self.pause_total_s / self.pause_count, self.mean_pause_s
        ):
            raise ValueError("mean_pause_s inconsistent with pause_total_s")


@dataclass(frozen=True)
class F0Stats:
    """Mean and population standard deviation of the per-frame F0 track."""

    mean_f0_hz: float | None
    std_f0_hz: float | None
    voiced_frames: int

    def __post_init__(self) -> None:
        if self.voiced_frames < 0:
            raise ValueError("voiced_frames must be >= 0")
        if self.voiced_frames == 0:
            if self.mean_f0_hz is not None or self.std_f0_hz is not None:
                raise ValueError("stats must be absent when no frames are voiced")
        else:
            if self.mean_f0_hz is None or self.std_f0_hz is None:
                raise ValueError("stats must be present when frames are voiced")
            if self.mean_f0_hz <= 0.0:
                raise ValueError("mean_f0_hz must be positive")
            if self.std_f0_hz < 0.0:
                raise ValueError("std_f0_hz must be >= 0")


def pause_metrics(segments: SegmentList) -> PauseMetrics:
    """Summarize a SegmentList into pause counts, durations, and percentage.

    An empty SegmentList yields all-zero metrics with pause_pct defined
    as 0.
    """
    pauses = segments.pauses()
    pause_total = float(sum(p.duration_s for p in pauses))
    utterance = (
        0.0 if segments.is_empty else segments.trimmed_end_s - segments.trimmed_start_s
    )
    # Derive speech from the exact span so the parts always sum to the whole.
    speech_total = utterance - pause_total
    return PauseMetrics(
        pause_count=len(pauses),
        pause_total_s=pause_total,
        speech_total_s=speech_total,
        utterance_s=utterance,
        pause_pct=100.0 * pause_total / utterance if utterance > 0.0 else 0.0,
        mean_pause_s=pause_total / len(pauses) if pauses else 0.0,
    )


def f0_track(
    signal: AudioSignal,
    segments: SegmentList,
    band: BandConfig = BandConfig(),
    plan: WindowPlan | None = None,
) -> list[float]:
    """Dominant in-band frequency for every frame fully inside speech.

    Frames with no dominant peak are skipped; an empty track is allowed.
    """
    if plan is None:
        plan = default_plan(signal.sample_rate_hz)
    if segments.is_empty:
        return []
    window_s = plan.window_len_samples / signal.sample_rate_hz
    speech = segments.speech()
    track: list[float] = []
    for feature in windowed_scan(signal, plan, band):
        if feature.max_freq_hz is None:
            continue
        inside = any(
            feature.start_s >= seg.start_s - _TOL
            and feature.start_s + window_s <= seg.end_s + _TOL
            for seg in speech
        )
        if inside:
            track.append(feature.max_freq_hz)
    return track


def f0_stats(track: Sequence[float]) -> F0Stats:
    """Arithmetic mean and population standard deviation of a track."""
    if not track:
        return F0Stats(mean_f0_hz=None, std_f0_hz=None, voiced_frames=0)
    values = np.asarray(track, dtype=np.float64)
    return F0Stats(
        mean_f0_hz=float(values.mean()),
        std_f0_hz=float(values.std()),
        voiced_frames=len(track),
    )
