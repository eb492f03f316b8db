"""Per-speaker baseline profiles and the baseline-relative decision rule.

A speaker is flagged when the pause percentage of the current recording
exceeds their own enrolled mean by more than ``k_sigma`` baseline standard
deviations; a floor on the standard deviation keeps a near-constant
baseline from flagging every small increase.

Profiles persist as a single strict, versioned JSON document::

    {"version": 1,
     "profiles": [{"speaker_id": ...,
                   "enrollments": [{"recorded_at": <ISO-8601 UTC>,
                                    "pause_count": int,
                                    "pause_total_s": real,
                                    "speech_total_s": real,
                                    "utterance_s": real,
                                    "pause_pct": real,
                                    "mean_pause_s": real,
                                    "f0": {"mean_hz": real,
                                           "std_hz": real,
                                           "voiced_frames": int} | null}]}]}

Unknown fields are rejected rather than preserved, so format evolution is
always explicit. Writes go to a temp file in the same directory followed
by an atomic rename.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from .errors import (
    EmptyProfile,
    FileUnreadable,
    InvalidSpeakerId,
    StoreCorrupt,
    StoreWriteFailure,
)
from .metrics import F0Stats, PauseMetrics

STORE_VERSION = 1

SPEAKER_ID_PATTERN = re.compile(r"^[A-Za-z0-9_-]{1,64}$")

_ENROLLMENT_KEYS = (
    "recorded_at",
    "pause_count",
    "pause_total_s",
    "speech_total_s",
    "utterance_s",
    "pause_pct",
    "mean_pause_s",
    "f0",
)
_F0_KEYS = ("mean_hz", "std_hz", "voiced_frames")


@dataclass(frozen=True)
class Enrollment:
    recorded_at: str
    metrics: PauseMetrics
    f0: F0Stats | None = None


@dataclass
class SpeakerProfile:
    speaker_id: str
    enrollments: list[Enrollment] = field(default_factory=list)


@dataclass
class ProfileStore:
    profiles: dict[str, SpeakerProfile] = field(default_factory=dict)


@dataclass(frozen=True)
class BaselineStats:
    """Mean/std of the enrolled pause metrics (population statistics).

    The F0-variability aggregates are filled from enrollments that carry
    F0 statistics; they stay None when no enrollment does.
    """

    n: int
    mean_pause_pct: float
    std_pause_pct: float
    mean_pause_count_per_min: float
    std_pause_count_per_min: float
    f0_n: int = 0
    mean_f0_std_hz: float | None = None
    std_f0_std_hz: float | None = None


@dataclass(frozen=True)
class DecisionConfig:
    k_sigma: float = 2.0
    min_enrollments: int = 3
    std_floor_pct: float = 2.0
    use_f0_variability: bool = False
    f0_std_floor_hz: float = 5.0

    def __post_init__(self) -> None:
        if self.k_sigma <= 0.0:
            raise ValueError("k_sigma must be > 0")
        if self.min_enrollments < 1:
            raise ValueError("min_enrollments must be >= 1")
        if self.std_floor_pct <= 0.0:
            raise ValueError("std_floor_pct must be > 0")
        if self.f0_std_floor_hz <= 0.0:
            raise ValueError("f0_std_floor_hz must be > 0")


@dataclass(frozen=True)
class Decision:
    """Verdict plus the standardized exceedance score that produced it."""

    verdict: str  # "sober" | "intoxicated" | "insufficient_data"
    score: float
    threshold_used: float
    current: PauseMetrics
    baseline: BaselineStats | None
    f0_score: float | None = None


def _parse_utc(timestamp: str) -> datetime:
    try:
        parsed = datetime.fromisoformat(timestamp.replace("Z", "+00:00"))
    except (ValueError, AttributeError, TypeError) as exc:
        raise ValueError(f"not an ISO-8601 timestamp: {timestamp!r}") from exc
    if parsed.tzinfo is None or parsed.utcoffset() != timedelta(0):
        raise ValueError(f"timestamp must be UTC: {timestamp!r}")
    return parsed


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def enroll(
    store: ProfileStore,
    speaker_id: str,
    metrics: PauseMetrics,
    f0: F0Stats | None = None,
    recorded_at: str | None = None,
) -> SpeakerProfile:
    """Append one enrollment to the speaker's profile, creating it if new.

    F0 stats with zero voiced frames carry no information and are stored
    as absent. Enrollments must stay time-ordered; an out-of-order
    ``recorded_at`` raises ValueError.
    """
    if not SPEAKER_ID_PATTERN.match(speaker_id or ""):
        raise InvalidSpeakerId(
            f"speaker id {speaker_id!r} must match [A-Za-z0-9_-]{{1,64}}"
        )
    if recorded_at is None:
        recorded_at = utc_now_iso()
    timestamp = _parse_utc(recorded_at)
    if f0 is not None and f0.voiced_frames == 0:
        f0 = None
    profile = store.profiles.setdefault(speaker_id, SpeakerProfile(speaker_id))
    if profile.enrollments:
        last = _parse_utc(profile.enrollments[-1].recorded_at)
        if timestamp < last:
            raise ValueError(
                f"recorded_at {recorded_at} precedes the last enrollment at "
                f"{profile.enrollments[-1].recorded_at}"
            )
    profile.enrollments.append(Enrollment(recorded_at, metrics, f0))
    return profile


def baseline_stats(profile: SpeakerProfile) -> BaselineStats:
    """Aggregate a profile's enrollments into baseline mean/std values.

    pause_count is normalized per minute of utterance (count * 60 /
    utterance_s) so recordings of different lengths are comparable.
    """
    if not profile.enrollments:
        raise EmptyProfile(f"speaker {profile.speaker_id!r} has no enrollments")
    pcts = np.array([e.metrics.pause_pct for e in profile.enrollments])
    per_min = np.array(
        [
            e.metrics.pause_count * 60.0 / e.metrics.utterance_s
            if e.metrics.utterance_s > 0.0
            else 0.0
            for e in profile.enrollments
        ]
    )
    f0_stds = [
        e.f0.std_f0_hz for e in profile.enrollments if e.f0 is not None
    ]
    return BaselineStats(
        n=len(profile.enrollments),
        mean_pause_pct=float(pcts.mean()),
        std_pause_pct=float(pcts.std()),
        mean_pause_count_per_min=float(per_min.mean()),
        std_pause_count_per_min=float(per_min.std()),
        f0_n=len(f0_stds),
        mean_f0_std_hz=float(np.mean(f0_stds)) if f0_stds else None,
        std_f0_std_hz=float(np.std(f0_stds)) if f0_stds else None,
    )


def decide(
    current: PauseMetrics,
    baseline: BaselineStats | None,
    cfg: DecisionConfig = DecisionConfig(),
    current_f0: F0Stats | None = None,
) -> Decision:
    """Compare the current recording against the speaker's baseline.

    score = (current.pause_pct - mean) / max(std, std_floor_pct); the
    verdict is intoxicated when score > k_sigma, insufficient_data when
    fewer than min_enrollments are on file (baseline None counts as zero).
    With ``use_f0_variability`` enabled, an analogous score over the
    enrolled F0 standard deviations can also trip the intoxicated verdict.
    """
    n = 0 if baseline is None else baseline.n
    if baseline is None:
        score = 0.0
    else:
        spread = max(baseline.std_pause_pct, cfg.std_floor_pct)
        score = (current.pause_pct - baseline.mean_pause_pct) / spread
    f0_score = None
    if (
        cfg.use_f0_variability
        and baseline is not None
        and baseline.f0_n >= cfg.min_enrollments
        and baseline.mean_f0_std_hz is not None
        and current_f0 is not None
        and current_f0.std_f0_hz is not None
    ):
        f0_spread = max(baseline.std_f0_std_hz, cfg.f0_std_floor_hz)
        f0_score = (current_f0.std_f0_hz - baseline.mean_f0_std_hz) / f0_spread
    if n < cfg.min_enrollments:
        verdict = "insufficient_data"
    elif score > cfg.k_sigma or (f0_score is not None and f0_score > cfg.k_sigma):
        verdict = "intoxicated"
    else:
        verdict = "sober"
    return Decision(
        verdict=verdict,
        score=float(score),
        threshold_used=cfg.k_sigma,
        current=current,
        baseline=baseline,
        f0_score=f0_score,
    )


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------


def metrics_to_dict(metrics: PauseMetrics) -> dict:
    return {
        "pause_count": metrics.pause_count,
        "pause_total_s": metrics.pause_total_s,
        "speech_total_s": metrics.speech_total_s,
        "utterance_s": metrics.utterance_s,
        "pause_pct": metrics.pause_pct,
        "mean_pause_s": metrics.mean_pause_s,
    }


def f0_to_dict(f0: F0Stats | None) -> dict | None:
    if f0 is None or f0.voiced_frames == 0:
        return None
    return {
        "mean_hz": f0.mean_f0_hz,
        "std_hz": f0.std_f0_hz,
        "voiced_frames": f0.voiced_frames,
    }


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise StoreCorrupt(message)


def _number(value, where: str) -> float:
    _require(
        isinstance(value, (int, float)) and not isinstance(value, bool),
        f"{where}: expected a number, got {value!r}",
    )
    return float(value)


def _integer(value, where: str) -> int:
    _require(
        isinstance(value, int) and not isinstance(value, bool),
        f"{where}: expected an integer, got {value!r}",
    )
    return value


def _enrollment_from_dict(obj, where: str) -> Enrollment:
    _require(isinstance(obj, dict), f"{where}: enrollment must be an object")
    _require(
        tuple(sorted(obj)) == tuple(sorted(_ENROLLMENT_KEYS)),
        f"{where}: enrollment keys must be exactly {sorted(_ENROLLMENT_KEYS)}",
    )
    recorded_at = obj["recorded_at"]
    _require(isinstance(recorded_at, str), f"{where}: recorded_at must be a string")
    try:
        _parse_utc(recorded_at)
    except ValueError as exc:
        raise StoreCorrupt(f"{where}: {exc}") from exc
    try:
        metrics = PauseMetrics(
            pause_count=_integer(obj["pause_count"], where),
            pause_total_s=_number(obj["pause_total_s"], where),
            speech_total_s=_number(obj["speech_total_s"], where),
            utterance_s=_number(obj["utterance_s"], where),
            pause_pct=_number(obj["pause_pct"], where),
            mean_pause_s=_number(obj["mean_pause_s"], where),
        )
    except ValueError as exc:
        raise StoreCorrupt(f"{where}: invalid metrics ({exc})") from exc
    raw_f0 = obj["f0"]
    f0 = None
    if raw_f0 is not None:
        _require(isinstance(raw_f0, dict), f"{where}: f0 must be an object or null")
        _require(
            tuple(sorted(raw_f0)) == tuple(sorted(_F0_KEYS)),
            f"{where}: f0 keys must be exactly {sorted(_F0_KEYS)}",
        )
        voiced = _integer(raw_f0["voiced_frames"], where)
        _require(voiced >= 1, f"{where}: stored f0 must have voiced_frames >= 1")
        try:
            f0 = F0Stats(
                mean_f0_hz=_number(raw_f0["mean_hz"], where),
                std_f0_hz=_number(raw_f0["std_hz"], where),
                voiced_frames=voiced,
            )
        except ValueError as exc:
            raise StoreCorrupt(f"{where}: invalid f0 stats ({exc})") from exc
    return Enrollment(recorded_at, metrics, f0)


def load_store(path) -> ProfileStore:
    """Load and strictly validate a profile store file.

    Raises FileUnreadable when the path cannot be read and StoreCorrupt
    on any parse failure, schema deviation, or version mismatch.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadable(f"cannot read store {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise StoreCorrupt(f"{path}: not valid JSON ({exc})") from exc
    _require(isinstance(doc, dict), f"{path}: top level must be an object")
    _require(
        tuple(sorted(doc)) == ("profiles", "version"),
        f"{path}: top-level keys must be exactly ['profiles', 'version']",
    )
    version = doc["version"]
    _require(
        isinstance(version, int) and not isinstance(version, bool)
        and version == STORE_VERSION,
        f"{path}: unsupported store version {version!r} (expected {STORE_VERSION})",
    )
    _require(isinstance(doc["profiles"], list), f"{path}: profiles must be a list")
    store = ProfileStore()
    for raw_profile in doc["profiles"]:
        _require(isinstance(raw_profile, dict), f"{path}: profile must be an object")
        _require(
            tuple(sorted(raw_profile)) == ("enrollments", "speaker_id"),
            f"{path}: profile keys must be exactly ['enrollments', 'speaker_id']",
        )
        speaker_id = raw_profile["speaker_id"]
        _require(
            isinstance(speaker_id, str) and bool(SPEAKER_ID_PATTERN.match(speaker_id)),
            f"{path}: invalid speaker_id {speaker_id!r}",
        )
        _require(
            speaker_id not in store.profiles,
            f"{path}: duplicate speaker_id {speaker_id!r}",
        )
        _require(
            isinstance(raw_profile["enrollments"], list),
            f"{path}: enrollments must be a list",
        )
        profile = SpeakerProfile(speaker_id)
        previous = None
        for i, raw_enrollment in enumerate(raw_profile["enrollments"]):
            where = f"{path}: {speaker_id}[{i}]"
            enrollment = _enrollment_from_dict(raw_enrollment, where)
            current_ts = _parse_utc(enrollment.recorded_at)
            if previous is not None:
                _require(
                    current_ts >= previous,
                    f"{where}: enrollments must be time-ordered",
                )
            previous = current_ts
            profile.enrollments.append(enrollment)
        store.profiles[speaker_id] = profile
    return store


def save_store(store: ProfileStore, path) -> None:
    """Write the store as versioned JSON via temp-file-then-rename."""
    doc = {
        "version": STORE_VERSION,
        "profiles": [
            {
                "speaker_id": speaker_id,
                "enrollments": [
                    {
                        "recorded_at": e.recorded_at,
                        **metrics_to_dict(e.metrics),
                        "f0": f0_to_dict(e.f0),
                    }
                    for e in profile.enrollments
                ],
            }
            for speaker_id, profile in sorted(store.profiles.items())
        ],
    }
    target = Path(path)
    tmp = target.with_name(target.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, target)
    except OSError as exc:
        raise StoreWriteFailure(f"cannot write store {path}: {exc}") from exc
