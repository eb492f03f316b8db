"""Deterministic test-signal generator with ground-truth segments.

Scripts describe a sequence of tone ("speech"), silence, and seeded white
noise ("background") events. Rendering is sample-exact, and the returned
ground truth applies the same trim and minimum-duration semantics as the
pause detector, so a script doubles as the expected answer for it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .audio_io import AudioSignal, write_wav  # noqa: F401  (write_wav re-exported)
from .errors import InvalidScript
from .pause_detection import SegmentList, VadConfig, smooth_runs

# Ground truth is expressed in the detector's own segment type.
GroundTruth = SegmentList


@dataclass(frozen=True)
class ToneEvent:
    freq_hz: float
    amplitude: float
    duration_s: float


@dataclass(frozen=True)
class SilenceEvent:
    duration_s: float


@dataclass(frozen=True)
class NoiseEvent:
    amplitude: float
    duration_s: float


Event = ToneEvent | SilenceEvent | NoiseEvent


@dataclass(frozen=True)
class Script:
    """Ordered event list, sample rate, and the seed for noise events."""

    sample_rate_hz: int
    events: tuple[Event, ...]
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))
        if self.sample_rate_hz < 8000:
            raise InvalidScript("sample_rate_hz must be at least 8000")
        if not self.events:
            raise InvalidScript("script has no events")
        nyquist = self.sample_rate_hz / 2.0
        for i, event in enumerate(self.events):
            if event.duration_s <= 0.0:
                raise InvalidScript(f"event {i}: duration must be > 0")
            if isinstance(event, ToneEvent):
                if not 0.0 < event.freq_hz < nyquist:
                    raise InvalidScript(
                        f"event {i}: tone at {event.freq_hz} Hz outside (0, {nyquist})"
                    )
            if isinstance(event, (ToneEvent, NoiseEvent)):
                if not 0.0 < event.amplitude <= 1.0:
                    raise InvalidScript(f"event {i}: amplitude must be in (0, 1]")


def _event_samples(event: Event, rate: int, rng: np.random.Generator) -> np.ndarray:
    n = int(round(event.duration_s * rate))
    if n < 1:
        raise InvalidScript(f"event of {event.duration_s} s is shorter than one sample")
    if isinstance(event, ToneEvent):
        # Phase restarts at zero for every event.
        t = np.arange(n) / rate
        return event.amplitude * np.sin(2.0 * np.pi * event.freq_hz * t)
    if isinstance(event, NoiseEvent):
        return event.amplitude * rng.uniform(-1.0, 1.0, n)
    return np.zeros(n)


def render(
    script: Script, vad_cfg: VadConfig = VadConfig()
) -> tuple[AudioSignal, GroundTruth]:
    """Render a script into a signal plus its expected SegmentList.

    Rendering is deterministic for identical (script, seed). Ground-truth
    boundaries sit at the exact event edges, then pass through the same
    smoothing rules the detector applies (tones count as speech, silence
    and noise as background).
    """
    rng = np.random.default_rng(script.seed)
    rate = script.sample_rate_hz
    chunks = []
    runs: list[tuple[bool, float, float]] = []
    position = 0
    for event in script.events:
        chunk = _event_samples(event, rate, rng)
        chunks.append(chunk)
        start = position / rate
        position += chunk.size
        runs.append((isinstance(event, ToneEvent), start, position / rate))
    signal = AudioSignal(np.concatenate(chunks), rate)
    truth = smooth_runs(runs, vad_cfg.min_speech_s, vad_cfg.min_pause_s)
    return signal, truth


# ---------------------------------------------------------------------------
# JSON script form (mirrors the Script type; used by the CLI synth command)
# ---------------------------------------------------------------------------

_EVENT_KEYS = {
    "tone": {"kind", "freq_hz", "amplitude", "duration_s"},
    "silence": {"kind", "duration_s"},
    "noise": {"kind", "amplitude", "duration_s"},
}


def _script_number(obj: dict, key: str, where: str) -> float:
    value = obj.get(key)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise InvalidScript(f"{where}: {key} must be a number")
    return float(value)


def script_from_json(doc) -> Script:
    """Build a Script from its JSON object form, validating strictly."""
    if not isinstance(doc, dict):
        raise InvalidScript("script must be a JSON object")
    allowed = {"sample_rate_hz", "events", "seed"}
    unknown = set(doc) - allowed
    if unknown:
        raise InvalidScript(f"unknown script keys: {sorted(unknown)}")
    if "sample_rate_hz" not in doc or "events" not in doc:
        raise InvalidScript("script needs sample_rate_hz and events")
    rate = doc["sample_rate_hz"]
    if not isinstance(rate, int) or isinstance(rate, bool):
        raise InvalidScript("sample_rate_hz must be an integer")
    seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise InvalidScript("seed must be an integer")
    if not isinstance(doc["events"], list):
        raise InvalidScript("events must be a list")
    events: list[Event] = []
    for i, raw in enumerate(doc["events"]):
        where = f"event {i}"
        if not isinstance(raw, dict):
            raise InvalidScript(f"{where}: must be an object")
        kind = raw.get("kind")
        if kind not in _EVENT_KEYS:
            raise InvalidScript(f"{where}: kind must be one of {sorted(_EVENT_KEYS)}")
        if set(raw) != _EVENT_KEYS[kind]:
            raise InvalidScript(
                f"{where}: keys for {kind} must be exactly {sorted(_EVENT_KEYS[kind])}"
            )
        duration = _script_number(raw, "duration_s", where)
        if kind == "tone":
            events.append(
                ToneEvent(
                    freq_hz=_script_number(raw, "freq_hz", where),
                    amplitude=_script_number(raw, "amplitude", where),
                    duration_s=duration,
                )
            )
        elif kind == "noise":
            events.append(
                NoiseEvent(
                    amplitude=_script_number(raw, "amplitude", where),
                    duration_s=duration,
                )
            )
        else:
            events.append(SilenceEvent(duration_s=duration))
    return Script(sample_rate_hz=rate, events=tuple(events), seed=seed)


def script_from_path(path) -> Script:
    """Load a Script from a JSON file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidScript(f"cannot read script {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise InvalidScript(f"{path}: not valid JSON ({exc})") from exc
    return script_from_json(doc)
