"""Enrollment and the baseline-relative decision rule.

Enrolls three synthetic recordings whose pause percentages sit near 10,
12, and 14 percent, then judges two probes: one that matches the baseline
and one with roughly double the pausing. The score is the standardized
exceedance (current - mean) / max(std, floor); the verdict flips to
intoxicated when it passes k_sigma = 2.
"""

import tempfile
from pathlib import Path

from pausegate import (
    Script,
    SilenceEvent,
    ToneEvent,
    baseline_stats,
    decide,
    detect_pauses,
    enroll,
    load_store,
    pause_metrics,
    render,
    save_store,
)
from pausegate import ProfileStore


def recording(gap_s):
    """10 s of speech-plus-gap: pause pct is roughly 10 * gap_s."""
    half = (10.0 - gap_s) / 2.0
    script = Script(16000, (
        SilenceEvent(0.5), ToneEvent(150.0, 0.8, half), SilenceEvent(gap_s),
        ToneEvent(150.0, 0.8, half), SilenceEvent(0.5)))
    signal, _ = render(script)
    return pause_metrics(detect_pauses(signal))


store = ProfileStore()
for i, gap in enumerate([1.0, 1.2, 1.4]):
    metrics = recording(gap)
    profile = enroll(store, "alice", metrics, None,
                     f"2026-02-01T10:0{i}:00+00:00")
    print(f"enrolled recording {i + 1}: pause_pct {metrics.pause_pct:.2f}")

stats = baseline_stats(store.profiles["alice"])
print(f"\nbaseline: mean {stats.mean_pause_pct:.2f}, std {stats.std_pause_pct:.2f} "
      f"(n = {stats.n})")

for name, gap in [("baseline-like probe", 1.2), ("heavy-pause probe", 2.5)]:
    metrics = recording(gap)
    decision = decide(metrics, stats)
    print(f"\n{name}: pause_pct {metrics.pause_pct:.2f}")
    print(f"  score {decision.score:+.2f} vs threshold {decision.threshold_used}")
    print(f"  verdict: {decision.verdict}")

# the store round-trips through its JSON file form
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "profiles.json"
    save_store(store, path)
    assert load_store(path) == store
    print(f"\nstore round-tripped through {path.name} "
          f"({path.stat().st_size} bytes)")
