"""Tests for profiles, baseline statistics, the decision rule, and persistence."""

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pausegate import (
    BaselineStats,
    DecisionConfig,
    EmptyProfile,
    F0Stats,
    FileUnreadable,
    InvalidSpeakerId,
    PauseMetrics,
    ProfileStore,
    StoreCorrupt,
    baseline_stats,
    decide,
    enroll,
    load_store,
    save_store,
)


def metrics_with_pct(pct: float, utterance_s: float = 10.0, pause_count: int = 1) -> PauseMetrics:
    pause_total = pct * utterance_s / 100.0
    if pause_total == 0.0:  # includes pct tiny enough to underflow
        pause_count = 0
    return PauseMetrics(
        pause_count=pause_count,
        pause_total_s=pause_total,
        speech_total_s=utterance_s - pause_total,
        utterance_s=utterance_s,
        pause_pct=100.0 * pause_total / utterance_s,
        mean_pause_s=pause_total / pause_count if pause_count else 0.0,
    )


def stamp(i: int) -> str:
    return f"2026-02-01T10:{i // 60:02d}:{i % 60:02d}+00:00"


@st.composite
def profiles(draw):
    store = ProfileStore()
    speaker = draw(st.from_regex(r"[A-Za-z0-9_-]{1,64}", fullmatch=True))
    n = draw(st.integers(1, 6))
    for i in range(n):
        pct = draw(st.floats(0.0, 80.0))
        count = draw(st.integers(1, 8))
        utterance = draw(st.floats(2.0, 120.0))
        with_f0 = draw(st.booleans())
        f0 = None
        if with_f0:
            f0 = F0Stats(
                mean_f0_hz=draw(st.floats(80.0, 300.0)),
                std_f0_hz=draw(st.floats(0.0, 80.0)),
                voiced_frames=draw(st.integers(1, 500)),
            )
        enroll(store, speaker, metrics_with_pct(pct, utterance, count), f0, stamp(i))
    return store


class TestEnroll:
    def test_new_speaker(self):
        store = ProfileStore()
        profile = enroll(store, "alice", metrics_with_pct(10.0), None, stamp(0))
        assert profile.speaker_id == "alice"
        assert len(profile.enrollments) == 1
        assert store.profiles["alice"] is profile

    def test_three_enrollments_accumulate(self):
        store = ProfileStore()
        for i, pct in enumerate([10.0, 12.0, 14.0]):
            profile = enroll(store, "bob", metrics_with_pct(pct), None, stamp(i))
        assert len(profile.enrollments) == 3
        assert baseline_stats(profile).n == 3

    @pytest.mark.parametrize("bad", ["a b!", "", "x" * 65, "naïve", "semi;colon"])
    def test_invalid_speaker_id(self, bad):
        with pytest.raises(InvalidSpeakerId):
            enroll(ProfileStore(), bad, metrics_with_pct(10.0), None, stamp(0))

    def test_zero_voiced_f0_stored_as_absent(self):
        store = ProfileStore()
        profile = enroll(
            store, "carol", metrics_with_pct(5.0), F0Stats(None, None, 0), stamp(0)
        )
        assert profile.enrollments[0].f0 is None

    def test_out_of_order_timestamp_rejected(self):
        store = ProfileStore()
        enroll(store, "dan", metrics_with_pct(5.0), None, stamp(5))
        with pytest.raises(ValueError):
            enroll(store, "dan", metrics_with_pct(6.0), None, stamp(1))

    def test_non_utc_timestamp_rejected(self):
        with pytest.raises(ValueError):
            enroll(ProfileStore(), "eve", metrics_with_pct(5.0), None,
                   "2026-02-01T10:00:00+02:00")


class TestBaselineStats:
    def test_three_point_population_std(self):
        store = ProfileStore()
        for i, pct in enumerate([10.0, 12.0, 14.0]):
            profile = enroll(store, "s", metrics_with_pct(pct), None, stamp(i))
        stats = baseline_stats(profile)
        assert stats.mean_pause_pct == pytest.approx(12.0)
        assert stats.std_pause_pct == pytest.approx(math.sqrt(8.0 / 3.0), abs=1e-9)
        assert stats.std_pause_pct == pytest.approx(1.633, abs=1e-3)

    def test_single_enrollment(self):
        store = ProfileStore()
        profile = enroll(store, "s", metrics_with_pct(10.0), None, stamp(0))
        stats = baseline_stats(profile)
        assert stats.mean_pause_pct == pytest.approx(10.0)
        assert stats.std_pause_pct == 0.0

    def test_empty_profile(self):
        from pausegate import SpeakerProfile

        with pytest.raises(EmptyProfile):
            baseline_stats(SpeakerProfile("ghost"))

    def test_pause_count_normalized_per_minute(self):
        store = ProfileStore()
        # 2 pauses in 30 s -> 4 per minute
        profile = enroll(
            store, "s", metrics_with_pct(10.0, utterance_s=30.0, pause_count=2),
            None, stamp(0),
        )
        stats = baseline_stats(profile)
        assert stats.mean_pause_count_per_min == pytest.approx(4.0)

    def test_f0_aggregates_from_present_enrollments(self):
        store = ProfileStore()
        enroll(store, "s", metrics_with_pct(10.0), F0Stats(150.0, 4.0, 100), stamp(0))
        enroll(store, "s", metrics_with_pct(11.0), None, stamp(1))
        profile = enroll(store, "s", metrics_with_pct(12.0), F0Stats(150.0, 8.0, 90), stamp(2))
        stats = baseline_stats(profile)
        assert stats.f0_n == 2
        assert stats.mean_f0_std_hz == pytest.approx(6.0)
        assert stats.std_f0_std_hz == pytest.approx(2.0)


def baseline(mean=10.0, std=2.0, n=3, **f0):
    return BaselineStats(
        n=n,
        mean_pause_pct=mean,
        std_pause_pct=std,
        mean_pause_count_per_min=6.0,
        std_pause_count_per_min=1.0,
        **f0,
    )


class TestDecide:
    def test_clear_exceedance_is_intoxicated(self):
        decision = decide(metrics_with_pct(20.0), baseline(mean=10.0, std=2.0))
        assert decision.score == pytest.approx(5.0)
        assert decision.verdict == "intoxicated"

    def test_at_mean_is_sober(self):
        decision = decide(metrics_with_pct(10.0), baseline(mean=10.0, std=2.0))
        assert decision.score == 0.0
        assert decision.verdict == "sober"

    def test_insufficient_enrollments(self):
        decision = decide(metrics_with_pct(99.0), baseline(n=2))
        assert decision.verdict == "insufficient_data"

    def test_no_baseline_is_insufficient(self):
        decision = decide(metrics_with_pct(99.0), None)
        assert decision.verdict == "insufficient_data"
        assert decision.score == 0.0

    def test_std_floor_applies(self):
        # std 0.001 would make any increase explode; the floor caps it
        decision = decide(metrics_with_pct(13.9), baseline(mean=10.0, std=0.001))
        assert decision.score == pytest.approx(3.9 / 2.0)

    def test_exactly_k_sigma_is_sober(self):
        decision = decide(metrics_with_pct(14.0), baseline(mean=10.0, std=2.0))
        assert decision.score == pytest.approx(2.0)
        assert decision.verdict == "sober"

    @given(st.floats(0.0, 100.0), st.floats(0.0, 100.0))
    def test_monotone_in_current_pct(self, a, b):
        lo, hi = sorted((a, b))
        d_lo = decide(metrics_with_pct(lo), baseline())
        d_hi = decide(metrics_with_pct(hi), baseline())
        if d_lo.verdict == "intoxicated":
            assert d_hi.verdict == "intoxicated"

    @given(st.floats(0.0, 40.0), st.floats(0.0, 30.0))
    def test_shift_invariance(self, pct, shift):
        base = baseline(mean=10.0, std=2.5)
        shifted = baseline(mean=10.0 + shift, std=2.5)
        d0 = decide(metrics_with_pct(pct), base)
        d1 = decide(metrics_with_pct(pct + shift), shifted)
        assert d1.score == pytest.approx(d0.score, abs=1e-9)
        assert d1.verdict == d0.verdict

    @given(st.floats(0.0, 60.0), st.floats(0.0, 60.0), st.floats(0.0, 10.0))
    def test_never_intoxicated_at_or_below_mean(self, pct, mean, std):
        if pct > mean:
            return
        decision = decide(metrics_with_pct(pct), baseline(mean=mean, std=std))
        assert decision.verdict != "intoxicated"

    def test_f0_variability_flag_off_ignores_f0(self):
        base = baseline(f0_n=3, mean_f0_std_hz=3.0, std_f0_std_hz=1.0)
        decision = decide(
            metrics_with_pct(10.0), base, current_f0=F0Stats(150.0, 80.0, 100)
        )
        assert decision.f0_score is None
        assert decision.verdict == "sober"

    def test_f0_variability_flag_on_can_flag(self):
        cfg = DecisionConfig(use_f0_variability=True)
        base = baseline(f0_n=3, mean_f0_std_hz=3.0, std_f0_std_hz=1.0)
        decision = decide(
            metrics_with_pct(10.0), base, cfg, current_f0=F0Stats(150.0, 80.0, 100)
        )
        assert decision.f0_score == pytest.approx((80.0 - 3.0) / 5.0)
        assert decision.verdict == "intoxicated"

    @given(st.floats(0.0, 100.0), st.integers(0, 2))
    def test_insufficient_depends_only_on_n(self, pct, n):
        base = baseline(n=n) if n else None
        decision = decide(metrics_with_pct(pct), base)
        assert decision.verdict == "insufficient_data"

    def test_f0_variability_needs_enough_f0_enrollments(self):
        cfg = DecisionConfig(use_f0_variability=True)
        base = baseline(f0_n=2, mean_f0_std_hz=3.0, std_f0_std_hz=1.0)
        decision = decide(
            metrics_with_pct(10.0), base, cfg, current_f0=F0Stats(150.0, 80.0, 100)
        )
        assert decision.f0_score is None
        assert decision.verdict == "sober"


class TestPersistence:
    def test_empty_store_round_trip(self, tmp_path):
        path = tmp_path / "store.json"
        save_store(ProfileStore(), path)
        doc = json.loads(path.read_text())
        assert doc == {"version": 1, "profiles": []}
        assert load_store(path).profiles == {}

    @settings(max_examples=30, deadline=None)
    @given(profiles())
    def test_round_trip_is_field_exact(self, tmp_path_factory, store):
        path = tmp_path_factory.mktemp("store") / "store.json"
        save_store(store, path)
        loaded = load_store(path)
        assert loaded == store

    def test_version_mismatch(self, tmp_path):
        path = tmp_path / "store.json"
        path.write_text('{"version": 99, "profiles": []}')
        with pytest.raises(StoreCorrupt):
            load_store(path)

    def test_unknown_top_level_field(self, tmp_path):
        path = tmp_path / "store.json"
        path.write_text('{"version": 1, "profiles": [], "extra": true}')
        with pytest.raises(StoreCorrupt):
            load_store(path)

    def test_unknown_enrollment_field(self, tmp_path):
        store = ProfileStore()
        enroll(store, "a", metrics_with_pct(10.0), None, stamp(0))
        path = tmp_path / "store.json"
        save_store(store, path)
        doc = json.loads(path.read_text())
        doc["profiles"][0]["enrollments"][0]["surprise"] = 1
        path.write_text(json.dumps(doc))
        with pytest.raises(StoreCorrupt):
            load_store(path)

    def test_truncated_file(self, tmp_path):
        store = ProfileStore()
        enroll(store, "a", metrics_with_pct(10.0), None, stamp(0))
        path = tmp_path / "store.json"
        save_store(store, path)
        blob = path.read_bytes()
        path.write_bytes(blob[: len(blob) // 2])
        with pytest.raises(StoreCorrupt):
            load_store(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileUnreadable):
            load_store(tmp_path / "absent.json")

    def test_inconsistent_metrics_rejected(self, tmp_path):
        store = ProfileStore()
        enroll(store, "a", metrics_with_pct(10.0), None, stamp(0))
        path = tmp_path / "store.json"
        save_store(store, path)
        doc = json.loads(path.read_text())
        doc["profiles"][0]["enrollments"][0]["pause_pct"] = 55.0  # contradicts durations
        path.write_text(json.dumps(doc))
        with pytest.raises(StoreCorrupt):
            load_store(path)

    def test_duplicate_speaker_rejected(self, tmp_path):
        path = tmp_path / "store.json"
        path.write_text(json.dumps({
            "version": 1,
            "profiles": [
                {"speaker_id": "a", "enrollments": []},
                {"speaker_id": "a", "enrollments": []},
            ],
        }))
        with pytest.raises(StoreCorrupt):
            load_store(path)

    def test_zero_pause_metrics_round_trip(self, tmp_path):
        store = ProfileStore()
        enroll(store, "quiet", metrics_with_pct(0.0), None, stamp(0))
        path = tmp_path / "store.json"
        save_store(store, path)
        loaded = load_store(path)
        assert loaded == store
