"""F0 track and statistics on steady versus varying material.

A steady 150 Hz tone produces a flat track (std near zero); a recording
that jumps from 120 Hz to 240 Hz produces a bimodal track whose standard
deviation reflects the spread. The screening decision ignores F0 by
default, but the statistics ride along in every analysis report.
"""

from pausegate import (
    Script,
    SilenceEvent,
    ToneEvent,
    detect_pauses,
    f0_stats,
    f0_track,
    render,
)


def analyze(name, events):
    signal, _ = render(Script(16000, events))
    segments = detect_pauses(signal)
    stats = f0_stats(f0_track(signal, segments))
    print(f"{name}:")
    print(f"  voiced frames {stats.voiced_frames}")
    print(f"  mean F0       {stats.mean_f0_hz:.2f} Hz")
    print(f"  F0 std        {stats.std_f0_hz:.2f} Hz")
    print()


analyze(
    "steady 150 Hz",
    (SilenceEvent(0.5), ToneEvent(150.0, 0.8, 2.0), SilenceEvent(0.5)),
)
analyze(
    "120 Hz then 240 Hz",
    (SilenceEvent(0.5), ToneEvent(120.0, 0.8, 2.0), ToneEvent(240.0, 0.8, 2.0),
     SilenceEvent(0.5)),
)
