"""Windowed band analysis on a synthetic signal.

Builds half a second of a 150 Hz tone framed by silence, then walks the
default 32 ms window across it and prints the band energy and dominant
in-band frequency per frame. The energy jumps by many orders of magnitude
the moment the window overlaps the tone, which is exactly the contrast the
pause detector thresholds on.
"""

from pausegate import (
    Script,
    SilenceEvent,
    ToneEvent,
    default_plan,
    render,
    windowed_scan,
)

script = Script(
    sample_rate_hz=16000,
    events=(
        SilenceEvent(0.2),
        ToneEvent(freq_hz=150.0, amplitude=0.8, duration_s=0.5),
        SilenceEvent(0.2),
    ),
)
signal, _ = render(script)
plan = default_plan(signal.sample_rate_hz)

print(f"signal: {signal.duration_s:.2f} s at {signal.sample_rate_hz} Hz")
print(f"plan: window {plan.window_len_samples} samples, hop {plan.hop_len_samples}")
print()
print(f"{'start_s':>8}  {'band_energy':>12}  {'max_freq_hz':>11}")
for feature in windowed_scan(signal, plan):
    freq = "-" if feature.max_freq_hz is None else f"{feature.max_freq_hz:.1f}"
    print(f"{feature.start_s:8.3f}  {feature.band_energy:12.4e}  {freq:>11}")
