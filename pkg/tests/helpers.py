"""Shared test utilities: independent oracles and script builders.

The DFT oracle here is deliberately the direct O(M^2) transform written
from the definition (complex exponential matrix times the signal), so it
shares no code path with the FFT-based implementation it checks.
"""

from __future__ import annotations

import math

import numpy as np

from pausegate import NoiseEvent, Script, SilenceEvent, ToneEvent


def naive_dft_magnitudes(window) -> np.ndarray:
    """Direct real-input DFT magnitudes, bins 0..M//2."""
    x = np.asarray(window, dtype=np.float64)
    m = x.size
    k = np.arange(m // 2 + 1)
    n = np.arange(m)
    basis = np.exp(-2j * np.pi * np.outer(k, n) / m)
    return np.abs(basis @ x)


def naive_band_energy(window, sample_rate_hz: float, low_hz: float, high_hz: float) -> float:
    """Band energy computed from the naive DFT and the ceil/floor bin mapping."""
    x = np.asarray(window, dtype=np.float64)
    m = x.size
    mags = naive_dft_magnitudes(x)
    low_bin = math.ceil(low_hz * m / sample_rate_hz)
    high_bin = math.floor(high_hz * m / sample_rate_hz)
    return float(np.sum(mags[low_bin : high_bin + 1] ** 2) / m)


def sine(freq_hz: float, n_samples: int, rate: int, amplitude: float = 1.0,
         phase: float = 0.0) -> np.ndarray:
    t = np.arange(n_samples) / rate
    return amplitude * np.sin(2.0 * np.pi * freq_hz * t + phase)


def gap_script(gap_s: float, utterance_s: float = 10.0, rate: int = 16000,
               freq_hz: float = 150.0, amplitude: float = 0.8,
               edge_s: float = 0.5) -> Script:
    """Silence / tone / gap / tone / silence, with utterance = tones + gap.

    True pause percentage is 100 * gap_s / utterance_s; the detector
    recovers it within well under a percentage point at the default plan.
    """
    half = (utterance_s - gap_s) / 2.0
    return Script(
        rate,
        (
            SilenceEvent(edge_s),
            ToneEvent(freq_hz, amplitude, half),
            SilenceEvent(gap_s),
            ToneEvent(freq_hz, amplitude, half),
            SilenceEvent(edge_s),
        ),
    )


def random_detection_script(rng: np.random.Generator, rate: int = 16000) -> Script:
    """Random tones separated by background, for detector recovery tests.

    2-8 tones of 0.3-2.0 s at band-internal frequencies, gaps >= 0.4 s,
    and either digital silence or low white noise as background (noise
    amplitude keeps the tone SNR above 20 dB).
    """
    n_tones = int(rng.integers(2, 9))
    noisy = bool(rng.integers(0, 2))
    bg_amp = float(rng.uniform(0.01, 0.05)) if noisy else 0.0

    def background(duration: float):
        if noisy:
            return NoiseEvent(bg_amp, duration)
        return SilenceEvent(duration)

    events = [background(float(rng.uniform(0.45, 0.8)))]
    for i in range(n_tones):
        if i:
            events.append(background(float(rng.uniform(0.4, 1.2))))
        events.append(
            ToneEvent(
                freq_hz=float(rng.uniform(100.0, 280.0)),
                amplitude=float(rng.uniform(0.5, 0.9)),
                duration_s=float(rng.uniform(0.3, 2.0)),
            )
        )
    events.append(background(float(rng.uniform(0.45, 0.8))))
    return Script(rate, tuple(events), seed=int(rng.integers(0, 2**63 - 1)))


def boundaries(seglist) -> list[float]:
    """Flat list of all segment boundary times."""
    out = []
    for seg in seglist.segments:
        out.append(seg.start_s)
    if seglist.segments:
        out.append(seglist.segments[-1].end_s)
    return out
