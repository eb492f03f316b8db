"""End-to-end pause detection against known ground truth.

Synthesizes three tone bursts over a low white-noise background, runs the
detector, and prints the recovered segments next to the scripted truth.
Boundaries land within one window plus one hop of the true edit points;
the pause count matches exactly.
"""

from pausegate import (
    NoiseEvent,
    Script,
    ToneEvent,
    detect_pauses,
    pause_metrics,
    render,
)

script = Script(
    sample_rate_hz=16000,
    seed=42,
    events=(
        NoiseEvent(amplitude=0.02, duration_s=0.6),
        ToneEvent(freq_hz=140.0, amplitude=0.8, duration_s=1.2),
        NoiseEvent(amplitude=0.02, duration_s=0.5),
        ToneEvent(freq_hz=180.0, amplitude=0.7, duration_s=0.9),
        NoiseEvent(amplitude=0.02, duration_s=0.8),
        ToneEvent(freq_hz=220.0, amplitude=0.8, duration_s=1.0),
        NoiseEvent(amplitude=0.02, duration_s=0.6),
    ),
)
signal, truth = render(script)
detected = detect_pauses(signal)


def show(tag, segments):
    print(tag)
    for seg in segments.segments:
        print(f"  {seg.kind:6} [{seg.start_s:6.3f}, {seg.end_s:6.3f})  "
              f"{seg.duration_s:.3f} s")


show("ground truth:", truth)
show("detected:", detected)

print()
print("metrics (detected):")
metrics = pause_metrics(detected)
print(f"  pauses        {metrics.pause_count}")
print(f"  pause total   {metrics.pause_total_s:.3f} s")
print(f"  utterance     {metrics.utterance_s:.3f} s")
print(f"  pause pct     {metrics.pause_pct:.2f} %")

truth_metrics = pause_metrics(truth)
print(f"  (truth pct    {truth_metrics.pause_pct:.2f} %)")
