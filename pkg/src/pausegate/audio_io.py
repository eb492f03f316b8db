"""WAV loading, slicing, and writing for the canonical mono signal type.

Only 16-bit PCM RIFF/WAVE is accepted; anything else is rejected loudly so
the numeric path stays auditable. Stereo input is averaged to mono.
"""

from __future__ import annotations

import math
import wave
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyAudio,
    FileUnreadable,
    InvalidRange,
    SampleRateTooLow,
    UnsupportedFormat,
    WriteFailure,
)

MIN_SAMPLE_RATE_HZ = 8000

# 16-bit full scale: sample / 32768 maps the int16 range onto [-1.0, 1.0).
PCM_SCALE = 32768.0


@dataclass(frozen=True, eq=False)
class AudioSignal:
    """Mono sample buffer plus its sample rate.

    ``samples`` holds float64 amplitudes in [-1.0, 1.0]. The sample rate
    must be at least 8000 Hz so the 80-300 Hz analysis band always sits
    far below Nyquist.
    """

    samples: np.ndarray
    sample_rate_hz: int

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError(f"mono signal expected, got shape {samples.shape}")
        if samples.size == 0:
            raise EmptyAudio("signal has no samples")
        rate = int(self.sample_rate_hz)
        if rate < MIN_SAMPLE_RATE_HZ:
            raise SampleRateTooLow(
                f"sample rate {rate} Hz below the {MIN_SAMPLE_RATE_HZ} Hz floor"
            )
        peak = float(np.max(np.abs(samples)))
        if peak > 1.0:
            raise ValueError(f"samples exceed [-1, 1] (peak {peak:.6g})")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate_hz", rate)

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate_hz

    def _index(self, t_s: float) -> int:
        # floor(t * rate); the tiny epsilon absorbs float round-off so that
        # e.g. slice(0, duration_s) keeps the final sample.
        return int(math.floor(t_s * self.sample_rate_hz + 1e-9))

    def slice(self, start_s: float, end_s: float) -> AudioSignal:
        """Return the sub-signal covering [start_s, end_s) at the same rate.

        Sample indices map as floor(t * rate). Raises InvalidRange unless
        0 <= start_s < end_s <= duration_s.
        """
        if not 0.0 <= start_s < end_s or end_s > self.duration_s + 1e-9:
            raise InvalidRange(
                f"[{start_s}, {end_s}) is not a valid range of a "
                f"{self.duration_s:.6g} s signal"
            )
        i0 = self._index(start_s)
        i1 = self._index(end_s)
        if i1 <= i0:
            raise InvalidRange(f"[{start_s}, {end_s}) maps to an empty sample range")
        return AudioSignal(self.samples[i0:i1], self.sample_rate_hz)

    def scaled(self, gain: float) -> AudioSignal:
        """Return a copy with every sample multiplied by ``gain``."""
        return AudioSignal(self.samples * gain, self.sample_rate_hz)


def load_wav(path) -> AudioSignal:
    """Load a 16-bit PCM WAV file as a normalized mono AudioSignal.

    Samples are scaled by 1/32768 into [-1, 1); stereo channels are
    averaged sample by sample.

    Raises:
        FileUnreadable: the path cannot be opened or read.
        UnsupportedFormat: not PCM WAV, bit depth != 16, or channels > 2.
        SampleRateTooLow: sample rate below 8000 Hz.
        EmptyAudio: the file holds zero frames.
    """
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise FileUnreadable(f"cannot open {path}: {exc}") from exc
    with fh:
        try:
            reader = wave.open(fh)
        except (wave.Error, EOFError) as exc:
            raise UnsupportedFormat(f"{path}: not a PCM WAV file ({exc})") from exc
        with reader:
            channels = reader.getnchannels()
            sample_width = reader.getsampwidth()
            rate = reader.getframerate()
            declared_frames = reader.getnframes()
            if sample_width != 2:
                raise UnsupportedFormat(
                    f"{path}: {8 * sample_width}-bit samples, expected 16-bit PCM"
                )
            if channels not in (1, 2):
                raise UnsupportedFormat(f"{path}: {channels} channels, expected 1 or 2")
            if rate < MIN_SAMPLE_RATE_HZ:
                raise SampleRateTooLow(
                    f"{path}: {rate} Hz below the {MIN_SAMPLE_RATE_HZ} Hz floor"
                )
            raw = reader.readframes(declared_frames)
    frame_size = 2 * channels
    n_frames = len(raw) // frame_size
    if n_frames == 0:
        raise EmptyAudio(f"{path}: no audio frames")
    data = np.frombuffer(raw[: n_frames * frame_size], dtype="<i2")
    if channels == 2:
        data = data.reshape(-1, 2).mean(axis=1)
    samples = np.asarray(data, dtype=np.float64) / PCM_SCALE
    return AudioSignal(samples, rate)


def write_wav(signal: AudioSignal, path) -> None:
    """Write ``signal`` as canonical 16-bit little-endian PCM mono WAV.

    Quantization is round-to-nearest at 1/32768 steps, so a reload agrees
    with the original within 1/32768 per sample.
    """
    quantized = np.clip(np.rint(signal.samples * PCM_SCALE), -32768, 32767)
    payload = quantized.astype("<i2").tobytes()
    try:
        fh = open(path, "wb")
    except OSError as exc:
        raise WriteFailure(f"cannot write {path}: {exc}") from exc
    with fh:
        try:
            with wave.open(fh) as writer:
                writer.setnchannels(1)
                writer.setsampwidth(2)
                writer.setframerate(signal.sample_rate_hz)
                writer.writeframes(payload)
        except OSError as exc:
            raise WriteFailure(f"cannot write {path}: {exc}") from exc
