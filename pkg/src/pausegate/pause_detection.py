"""Noise-referenced speech/pause segmentation.

The detector fingerprints the background noise intensity in the analysis
band, labels a frame as speech whenever its band energy rises a fixed
ratio above that floor, and then smooths the labels into alternating
speech/pause segments: too-short speech bursts are rejected as clicks,
too-short silence gaps are absorbed into speech (hangover), and leading
and trailing silence is trimmed so only within-utterance gaps count as
pauses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .audio_io import AudioSignal
from .errors import SignalTooShort
from .spectral import BandConfig, FrameFeature, WindowPlan, default_plan, windowed_scan

# A robust noise fingerprint needs at least a few frames to take a median over.
MIN_NOISE_FRAMES = 3

_TOL_S = 1e-9


@dataclass(frozen=True)
class VadConfig:
    """Thresholds for the speech/pause decision.

    energy_ratio_threshold is the factor by which a frame's band energy
    must exceed the noise floor to count as speech; a ratio (rather than
    an absolute increase) makes the labeling invariant to recording gain.
    """

    energy_ratio_threshold: float = 4.0
    min_speech_s: float = 0.10
    min_pause_s: float = 0.20
    noise_head_s: float = 0.30
    absolute_floor: float = 1e-10

    def __post_init__(self) -> None:
        if self.energy_ratio_threshold <= 1.0:
            raise ValueError("energy_ratio_threshold must be > 1")
        for name in ("min_speech_s", "min_pause_s", "noise_head_s"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0")
        if self.absolute_floor <= 0.0:
            raise ValueError("absolute_floor must be > 0")


@dataclass(frozen=True)
class NoiseFingerprint:
    """Estimated background intensity in the analysis band."""

    noise_floor_energy: float
    frames_used: int
    band: BandConfig


@dataclass(frozen=True)
class FrameLabel:
    start_s: float
    is_speech: bool


@dataclass(frozen=True)
class Segment:
    kind: str  # "speech" or "pause"
    start_s: float
    end_s: float

    def __post_init__(self) -> None:
        if self.kind not in ("speech", "pause"):
            raise ValueError(f"unknown segment kind {self.kind!r}")
        if not self.end_s > self.start_s:
            raise ValueError(f"segment [{self.start_s}, {self.end_s}) is empty")

    @property
    def duration_s(self) -> float:
        return self.end_s - self.start_s


@dataclass(frozen=True)
class SegmentList:
    """Alternating speech/pause segments covering a trimmed utterance.

    Segments are contiguous and exactly cover [trimmed_start_s,
    trimmed_end_s]; kinds strictly alternate and the first and last
    segments are speech. An empty list (no speech at all) has equal
    trimmed bounds.
    """

    segments: tuple[Segment, ...]
    trimmed_start_s: float
    trimmed_end_s: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        validate_segment_list(self)

    @property
    def is_empty(self) -> bool:
        return not self.segments

    def pauses(self) -> tuple[Segment, ...]:
        return tuple(s for s in self.segments if s.kind == "pause")

    def speech(self) -> tuple[Segment, ...]:
        return tuple(s for s in self.segments if s.kind == "speech")


def validate_segment_list(
    seglist: SegmentList,
    min_speech_s: float | None = None,
    min_pause_s: float | None = None,
) -> None:
    """Raise ValueError unless ``seglist`` satisfies its invariants.

    Structural checks (alternation, contiguity, coverage, speech at both
    ends) always run; minimum-duration checks run when the corresponding
    threshold is given.
    """
    segs = seglist.segments
    if not segs:
        if abs(seglist.trimmed_start_s - seglist.trimmed_end_s) > _TOL_S:
            raise ValueError("empty SegmentList must have equal trimmed bounds")
        return
    if segs[0].kind != "speech" or segs[-1].kind != "speech":
        raise ValueError("first and last segments must be speech")
    for left, right in zip(segs, segs[1:]):
        if left.kind == right.kind:
            raise ValueError("segment kinds must strictly alternate")
        if abs(left.end_s - right.start_s) > _TOL_S:
            raise ValueError(
                f"gap between segments at {left.end_s} and {right.start_s}"
            )
    if abs(segs[0].start_s - seglist.trimmed_start_s) > _TOL_S:
        raise ValueError("first segment must start at trimmed_start_s")
    if abs(segs[-1].end_s - seglist.trimmed_end_s) > _TOL_S:
        raise ValueError("last segment must end at trimmed_end_s")
    for seg in segs:
        if seg.kind == "speech" and min_speech_s is not None:
            if seg.duration_s < min_speech_s - _TOL_S:
                raise ValueError(f"speech segment shorter than {min_speech_s} s")
        if seg.kind == "pause" and min_pause_s is not None:
            if seg.duration_s < min_pause_s - _TOL_S:
                raise ValueError(f"pause segment shorter than {min_pause_s} s")


def fingerprint_noise(
    signal: AudioSignal,
    cfg: VadConfig = VadConfig(),
    band: BandConfig = BandConfig(),
    plan: WindowPlan | None = None,
    noise_segment: tuple[float, float] | None = None,
) -> NoiseFingerprint:
    """Estimate the background noise floor in the analysis band.

    By default the floor is the median band energy over all frames that
    fit entirely inside the leading ``noise_head_s`` of the signal; pass
    ``noise_segment`` as (start_s, end_s) to fingerprint an explicit
    stretch of background instead (for recordings that begin mid-speech).
    The median resists contamination if the speaker starts talking early,
    and the result is floored at ``absolute_floor`` so digital silence
    still yields a usable reference.
    """
    if plan is None:
        plan = default_plan(signal.sample_rate_hz)
    if noise_segment is not None:
        start_s, end_s = noise_segment
        region = signal.slice(start_s, end_s)
    else:
        window_s = plan.window_len_samples / signal.sample_rate_hz
        if signal.duration_s < cfg.noise_head_s + window_s:
            raise SignalTooShort(
                f"{signal.duration_s:.3f} s signal cannot cover the "
                f"{cfg.noise_head_s} s noise head plus one window"
            )
        region = signal.slice(0.0, cfg.noise_head_s)
    if region.samples.size < plan.window_len_samples:
        raise SignalTooShort("noise region shorter than one analysis window")
    features = windowed_scan(region, plan, band)
    if len(features) < MIN_NOISE_FRAMES:
        raise SignalTooShort(
            f"noise region yields {len(features)} frames; need at least "
            f"{MIN_NOISE_FRAMES} for a fingerprint"
        )
    floor = max(
        float(np.median([f.band_energy for f in features])), cfg.absolute_floor
    )
    return NoiseFingerprint(noise_floor_energy=floor, frames_used=len(features), band=band)


def classify_frames(
    features: Sequence[FrameFeature],
    fingerprint: NoiseFingerprint,
    cfg: VadConfig = VadConfig(),
) -> list[FrameLabel]:
    """Label each frame speech iff its band energy strictly exceeds
    ``energy_ratio_threshold`` times the noise floor."""
    if not features:
        raise ValueError("no frames to classify")
    threshold = cfg.energy_ratio_threshold * fingerprint.noise_floor_energy
    return [FrameLabel(f.start_s, f.band_energy > threshold) for f in features]


def _merge_runs(runs: list[tuple[bool, float, float]]) -> list[tuple[bool, float, float]]:
    merged: list[tuple[bool, float, float]] = []
    for is_speech, start, end in runs:
        if merged and merged[-1][0] == is_speech:
            merged[-1] = (is_speech, merged[-1][1], end)
        else:
            merged.append((is_speech, start, end))
    return merged


def smooth_runs(
    runs: Iterable[tuple[bool, float, float]],
    min_speech_s: float,
    min_pause_s: float,
) -> SegmentList:
    """Turn contiguous (is_speech, start_s, end_s) runs into a SegmentList.

    Applies, in order: click rejection (speech runs shorter than
    min_speech_s become silence), hangover (internal silence runs shorter
    than min_pause_s are absorbed into speech), and trimming of leading
    and trailing silence. The synthetic-signal generator reuses this to
    derive ground truth with identical semantics.
    """
    merged = _merge_runs(list(runs))
    merged = _merge_runs(
        [
            (is_speech and (end - start) >= min_speech_s - _TOL_S, start, end)
            for is_speech, start, end in merged
        ]
    )
    if len(merged) >= 3:
        absorbed = []
        last = len(merged) - 1
        for i, (is_speech, start, end) in enumerate(merged):
            short = (end - start) < min_pause_s - _TOL_S
            if not is_speech and 0 < i < last and short:
                absorbed.append((True, start, end))
            else:
                absorbed.append((is_speech, start, end))
        merged = _merge_runs(absorbed)
    while merged and not merged[0][0]:
        merged.pop(0)
    while merged and not merged[-1][0]:
        merged.pop()
    if not merged:
        return SegmentList((), 0.0, 0.0)
    segments = tuple(
        Segment("speech" if is_speech else "pause", start, end)
        for is_speech, start, end in merged
    )
    result = SegmentList(segments, merged[0][1], merged[-1][2])
    validate_segment_list(result, min_speech_s=min_speech_s, min_pause_s=min_pause_s)
    return result


def segment(
    labels: Sequence[FrameLabel],
    frame_hop_s: float,
    cfg: VadConfig = VadConfig(),
) -> SegmentList:
    """Merge time-ordered frame labels into a smoothed SegmentList.

    Each label covers [start_s, start_s + frame_hop_s). All-silence input
    yields an empty SegmentList.
    """
    if not labels:
        raise ValueError("no labels to segment")
    runs: list[tuple[bool, float, float]] = []
    current_kind = labels[0].is_speech
    current_start = labels[0].start_s
    for label in labels[1:]:
        if label.is_speech != current_kind:
            runs.append((current_kind, current_start, label.start_s))
            current_kind = label.is_speech
            current_start = label.start_s
    runs.append((current_kind, current_start, labels[-1].start_s + frame_hop_s))
    return smooth_runs(runs, cfg.min_speech_s, cfg.min_pause_s)


def detect_pauses(
    signal: AudioSignal,
    cfg: VadConfig = VadConfig(),
    band: BandConfig = BandConfig(),
    plan: WindowPlan | None = None,
    noise_segment: tuple[float, float] | None = None,
) -> SegmentList:
    """Full detector: fingerprint noise, classify frames, segment labels."""
    if plan is None:
        plan = default_plan(signal.sample_rate_hz)
    fingerprint = fingerprint_noise(signal, cfg, band, plan, noise_segment)
    features = windowed_scan(signal, plan, band)
    labels = classify_frames(features, fingerprint, cfg)
    hop_s = plan.hop_len_samples / signal.sample_rate_hz
    return segment(labels, hop_s, cfg)
