"""Windowed real-FFT analysis: band-limited energy and dominant frequency.

The building blocks here generalize a single idea: take a window of the
time series, compute the magnitude spectrum of its real-input DFT, and
look only at the bins that fall between the configured low and high
cutoffs (80-300 Hz by default). Everything downstream (speech/pause
labeling, pitch statistics) is built from these per-window features.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .audio_io import AudioSignal
from .errors import BandAboveNyquist, EmptyBand, SignalTooShort, WindowTooShort

DEFAULT_LOW_CUTOFF_HZ = 80.0
DEFAULT_HIGH_CUTOFF_HZ = 300.0

# 32 ms windows hold >= 2 periods of 80 Hz; 16 ms hops keep pause-boundary
# resolution at or under one hop.
DEFAULT_WINDOW_S = 0.032
DEFAULT_HOP_S = 0.016

MIN_WINDOW_LEN = 64

# A band whose every magnitude is below this (times the window length) is
# treated as silent: no dominant peak is reported.
SILENCE_MAGNITUDE_PER_SAMPLE = 1e-12


@dataclass(frozen=True)
class BandConfig:
    """Frequency band of interest, defaulting to the 80-300 Hz voice band."""

    low_cutoff_hz: float = DEFAULT_LOW_CUTOFF_HZ
    high_cutoff_hz: float = DEFAULT_HIGH_CUTOFF_HZ

    def __post_init__(self) -> None:
        if not 0.0 < self.low_cutoff_hz < self.high_cutoff_hz:
            raise ValueError(
                f"need 0 < low < high, got ({self.low_cutoff_hz}, {self.high_cutoff_hz})"
            )


@dataclass(frozen=True)
class WindowPlan:
    """Window and hop lengths, in samples, for a short-time scan."""

    window_len_samples: int
    hop_len_samples: int

    def __post_init__(self) -> None:
        if self.window_len_samples < MIN_WINDOW_LEN:
            raise ValueError(
                f"window of {self.window_len_samples} samples is below the "
                f"{MIN_WINDOW_LEN}-sample minimum"
            )
        if not 1 <= self.hop_len_samples <= self.window_len_samples:
            raise ValueError("hop must be in [1, window_len_samples]")


def default_plan(sample_rate_hz: int) -> WindowPlan:
    """The default 32 ms window / 16 ms hop plan at the given rate."""
    return WindowPlan(
        window_len_samples=int(round(DEFAULT_WINDOW_S * sample_rate_hz)),
        hop_len_samples=int(round(DEFAULT_HOP_S * sample_rate_hz)),
    )


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Magnitude spectrum of a real window: bins 0..M/2, bin k at k * bin_width_hz."""

    magnitudes: np.ndarray
    bin_width_hz: float


@dataclass(frozen=True)
class FrameFeature:
    """Per-window measurement produced by :func:`windowed_scan`."""

    start_s: float
    band_energy: float
    max_freq_hz: float | None


def _window_array(window) -> np.ndarray:
    arr = np.asarray(window, dtype=np.float64)
    if arr.ndim != 1:
        raise WindowTooShort(f"1-D window expected, got shape {arr.shape}")
    if arr.size < 2:
        raise WindowTooShort(f"window of {arr.size} samples, need at least 2")
    return arr


def real_spectrum(window, sample_rate_hz: float) -> Spectrum:
    """Magnitudes of the real-input DFT of ``window``.

    Deterministic for identical input. The window is used as-is
    (rectangular taper), matching the rest of the analysis chain.
    """
    arr = _window_array(window)
    return Spectrum(
        magnitudes=np.abs(np.fft.rfft(arr)),
        bin_width_hz=sample_rate_hz / arr.size,
    )


def band_bins(cfg: BandConfig, sample_rate_hz: float, window_len: int) -> tuple[int, int]:
    """Map the band cutoffs onto inclusive DFT bin indices.

    Uses ceil for the low edge and floor for the high edge, so every
    returned bin maps to a frequency inside [low, high]; the band is
    never silently widened.

    Raises:
        BandAboveNyquist: high cutoff at or above sample_rate / 2.
        EmptyBand: no bin falls inside the band (window too short).
    """
    nyquist = sample_rate_hz / 2.0
    if cfg.high_cutoff_hz >= nyquist:
        raise BandAboveNyquist(
            f"high cutoff {cfg.high_cutoff_hz} Hz not below Nyquist {nyquist} Hz"
        )
    low_bin = math.ceil(cfg.low_cutoff_hz * window_len / sample_rate_hz)
    high_bin = math.floor(cfg.high_cutoff_hz * window_len / sample_rate_hz)
    if low_bin > high_bin:
        raise EmptyBand(
            f"no DFT bin inside [{cfg.low_cutoff_hz}, {cfg.high_cutoff_hz}] Hz "
            f"for a {window_len}-sample window at {sample_rate_hz} Hz"
        )
    return low_bin, high_bin


def max_frequency_in_band(
    window, sample_rate_hz: float, cfg: BandConfig = BandConfig()
) -> float | None:
    """Frequency of the strongest DFT bin inside the band, or None.

    Ties break toward the lowest bin. Returns None when every band
    magnitude is below 1e-12 times the window length, i.e. the band is
    genuinely silent rather than merely quiet.
    """
    arr = _window_array(window)
    low_bin, high_bin = band_bins(cfg, sample_rate_hz, arr.size)
    magnitudes = np.abs(np.fft.rfft(arr))
    band = magnitudes[low_bin : high_bin + 1]
    if np.all(band < SILENCE_MAGNITUDE_PER_SAMPLE * arr.size):
        return None
    return float((low_bin + int(np.argmax(band))) * sample_rate_hz / arr.size)


def band_energy(window, sample_rate_hz: float, cfg: BandConfig = BandConfig()) -> float:
    """Sum of squared band magnitudes, divided by the window length."""
    arr = _window_array(window)
    low_bin, high_bin = band_bins(cfg, sample_rate_hz, arr.size)
    magnitudes = np.abs(np.fft.rfft(arr))
    band = magnitudes[low_bin : high_bin + 1]
    return float(np.sum(band * band) / arr.size)


def windowed_scan(
    signal: AudioSignal,
    plan: WindowPlan | None = None,
    cfg: BandConfig = BandConfig(),
) -> list[FrameFeature]:
    """Run the window across the signal and collect per-frame band features.

    One FrameFeature per hop position; a trailing partial window is
    discarded, so the frame count is floor((N - window_len) / hop) + 1.

    Raises SignalTooShort when the signal is shorter than one window.
    """
    if plan is None:
        plan = default_plan(signal.sample_rate_hz)
    rate = signal.sample_rate_hz
    window_len = plan.window_len_samples
    if signal.samples.size < window_len:
        raise SignalTooShort(
            f"{signal.samples.size} samples cannot fill one {window_len}-sample window"
        )
    low_bin, high_bin = band_bins(cfg, rate, window_len)
    frames = sliding_window_view(signal.samples, window_len)[:: plan.hop_len_samples]
    magnitudes = np.abs(np.fft.rfft(frames, axis=1))
    band = magnitudes[:, low_bin : high_bin + 1]
    energies = np.sum(band * band, axis=1) / window_len
    peak_offsets = np.argmax(band, axis=1)
    silent = np.max(band, axis=1) < SILENCE_MAGNITUDE_PER_SAMPLE * window_len
    bin_width = rate / window_len
    features = []
    for i in range(frames.shape[0]):
        freq = None if silent[i] else float((low_bin + peak_offsets[i]) * bin_width)
        features.append(
            FrameFeature(
                start_s=i * plan.hop_len_samples / rate,
                band_energy=float(energies[i]),
                max_freq_hz=freq,
            )
        )
    return features
