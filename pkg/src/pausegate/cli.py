"""Command-line surface: analyze, enroll, decide, synth.

Every command writes a single JSON document to stdout and one-line
diagnostics to stderr. Exit codes double as the machine-readable signal:

    0  success (decide: sober)
    1  decide: intoxicated
    2  I/O, format, or parameter error
    3  profile store corrupt
    4  invalid speaker id
    5  decide: insufficient baseline data
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from filelock import FileLock, Timeout

from . import baseline as bl
from .audio_io import AudioSignal, load_wav
from .errors import InvalidSpeakerId, PausegateError, StoreCorrupt
from .metrics import F0Stats, PauseMetrics, f0_stats, f0_track, pause_metrics
from .pause_detection import SegmentList, VadConfig, detect_pauses
from .spectral import BandConfig, WindowPlan
from .synth import render, script_from_path, write_wav

_VERDICT_EXIT = {"sober": 0, "intoxicated": 1, "insufficient_data": 5}

_LOCK_TIMEOUT_S = 10.0


def _noise_segment(text: str) -> tuple[float, float]:
    try:
        start, end = text.split(":")
        return float(start), float(end)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected start:end seconds, got {text!r}"
        ) from None


def _add_analysis_flags(parser: argparse.ArgumentParser) -> None:
    vad = VadConfig()
    band = BandConfig()
    parser.add_argument("--wav", required=True, help="input WAV file (16-bit PCM)")
    parser.add_argument("--band-low", type=float, default=band.low_cutoff_hz,
                        help="band low cutoff in Hz")
    parser.add_argument("--band-high", type=float, default=band.high_cutoff_hz,
                        help="band high cutoff in Hz")
    parser.add_argument("--window-ms", type=float, default=32.0,
                        help="analysis window length in ms")
    parser.add_argument("--hop-ms", type=float, default=16.0,
                        help="hop between windows in ms")
    parser.add_argument("--ratio-threshold", type=float,
                        default=vad.energy_ratio_threshold,
                        help="speech = band energy above this multiple of the noise floor")
    parser.add_argument("--min-pause-ms", type=float, default=vad.min_pause_s * 1000,
                        help="shortest gap that counts as a pause")
    parser.add_argument("--min-speech-ms", type=float, default=vad.min_speech_s * 1000,
                        help="shortest burst that counts as speech")
    parser.add_argument("--noise-head-ms", type=float, default=vad.noise_head_s * 1000,
                        help="leading span used for the noise fingerprint")
    parser.add_argument("--noise-segment", type=_noise_segment, default=None,
                        metavar="START:END",
                        help="fingerprint this start:end span (seconds) instead of the head")


def _add_decision_flags(parser: argparse.ArgumentParser) -> None:
    cfg = bl.DecisionConfig()
    parser.add_argument("--k-sigma", type=float, default=cfg.k_sigma,
                        help="intoxicated when score exceeds this many baseline stds")
    parser.add_argument("--min-enrollments", type=int, default=cfg.min_enrollments,
                        help="baseline size below which the verdict is insufficient_data")
    parser.add_argument("--std-floor-pct", type=float, default=cfg.std_floor_pct,
                        help="lower bound on the baseline std, in percentage points")
    parser.add_argument("--use-f0-variability", action="store_true",
                        help="also flag on elevated F0 variability (off by default)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pausegate",
        description="Pause-based speech screening against per-speaker baselines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="detect pauses and report metrics")
    _add_analysis_flags(analyze)
    analyze.set_defaults(func=cmd_analyze)

    enroll = sub.add_parser("enroll", help="add a recording to a speaker's baseline")
    _add_analysis_flags(enroll)
    enroll.add_argument("--speaker", required=True, help="speaker id")
    enroll.add_argument("--store", required=True, help="profile store JSON path")
    enroll.add_argument("--recorded-at", default=None,
                        help="ISO-8601 UTC timestamp (defaults to now)")
    enroll.set_defaults(func=cmd_enroll)

    decide = sub.add_parser("decide", help="judge a recording against the baseline")
    _add_analysis_flags(decide)
    decide.add_argument("--speaker", required=True, help="speaker id")
    decide.add_argument("--store", required=True, help="profile store JSON path")
    _add_decision_flags(decide)
    decide.set_defaults(func=cmd_decide)

    synth = sub.add_parser("synth", help="render a script JSON to a WAV file")
    synth.add_argument("--script", required=True, help="script JSON path")
    synth.add_argument("--out", required=True, help="output WAV path")
    synth.set_defaults(func=cmd_synth)

    return parser


def _vad_config(args) -> VadConfig:
    return VadConfig(
        energy_ratio_threshold=args.ratio_threshold,
        min_speech_s=args.min_speech_ms / 1000.0,
        min_pause_s=args.min_pause_ms / 1000.0,
        noise_head_s=args.noise_head_ms / 1000.0,
    )


def _plan_for(rate: int, args) -> WindowPlan:
    return WindowPlan(
        window_len_samples=int(round(args.window_ms / 1000.0 * rate)),
        hop_len_samples=int(round(args.hop_ms / 1000.0 * rate)),
    )


def _config_echo(args, band: BandConfig, plan: WindowPlan, vad: VadConfig) -> dict:
    echo = {
        "band": {
            "low_cutoff_hz": band.low_cutoff_hz,
            "high_cutoff_hz": band.high_cutoff_hz,
        },
        "window": {
            "window_len_samples": plan.window_len_samples,
            "hop_len_samples": plan.hop_len_samples,
        },
        "vad": {
            "energy_ratio_threshold": vad.energy_ratio_threshold,
            "min_speech_s": vad.min_speech_s,
            "min_pause_s": vad.min_pause_s,
            "noise_head_s": vad.noise_head_s,
            "absolute_floor": vad.absolute_floor,
        },
        "noise_segment": list(args.noise_segment) if args.noise_segment else None,
    }
    return echo


def _segments_to_dict(segments: SegmentList) -> dict:
    return {
        "trimmed_start_s": segments.trimmed_start_s,
        "trimmed_end_s": segments.trimmed_end_s,
        "segments": [
            {"kind": s.kind, "start_s": s.start_s, "end_s": s.end_s}
            for s in segments.segments
        ],
    }


def _analyze(args) -> tuple[AudioSignal, dict, PauseMetrics, F0Stats, SegmentList]:
    signal = load_wav(args.wav)
    band = BandConfig(args.band_low, args.band_high)
    plan = _plan_for(signal.sample_rate_hz, args)
    vad = _vad_config(args)
    segments = detect_pauses(signal, vad, band, plan, noise_segment=args.noise_segment)
    metrics = pause_metrics(segments)
    f0 = f0_stats(f0_track(signal, segments, band, plan))
    echo = _config_echo(args, band, plan, vad)
    return signal, echo, metrics, f0, segments


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def cmd_analyze(args) -> int:
    _, echo, metrics, f0, segments = _analyze(args)
    _emit(
        {
            "input_path": args.wav,
            "config": echo,
            "segments": _segments_to_dict(segments),
            "metrics": bl.metrics_to_dict(metrics),
            "f0": bl.f0_to_dict(f0),
            "decision": None,
        }
    )
    return 0


def _load_store_if_any(path) -> bl.ProfileStore:
    # A store that does not exist yet is simply empty; this covers both the
    # first-ever enroll and a decide against a speaker with no history.
    if not Path(path).exists():
        return bl.ProfileStore()
    return bl.load_store(path)


def cmd_enroll(args) -> int:
    _, _, metrics, f0, _ = _analyze(args)
    lock = FileLock(str(args.store) + ".lock")
    try:
        with lock.acquire(timeout=_LOCK_TIMEOUT_S):
            store = _load_store_if_any(args.store)
            profile = bl.enroll(
                store, args.speaker, metrics, f0, recorded_at=args.recorded_at
            )
            bl.save_store(store, args.store)
    except Timeout:
        print(f"error: store {args.store} is locked by another process", file=sys.stderr)
        return 2
    _emit(
        {
            "speaker_id": profile.speaker_id,
            "enrollments": len(profile.enrollments),
            "store": str(args.store),
        }
    )
    return 0


def cmd_decide(args) -> int:
    _, echo, metrics, f0, _ = _analyze(args)
    cfg = bl.DecisionConfig(
        k_sigma=args.k_sigma,
        min_enrollments=args.min_enrollments,
        std_floor_pct=args.std_floor_pct,
        use_f0_variability=args.use_f0_variability,
    )
    store = _load_store_if_any(args.store)
    profile = store.profiles.get(args.speaker)
    stats = bl.baseline_stats(profile) if profile and profile.enrollments else None
    decision = bl.decide(metrics, stats, cfg, current_f0=f0)
    echo["decision"] = {
        "k_sigma": cfg.k_sigma,
        "min_enrollments": cfg.min_enrollments,
        "std_floor_pct": cfg.std_floor_pct,
        "use_f0_variability": cfg.use_f0_variability,
        "f0_std_floor_hz": cfg.f0_std_floor_hz,
    }
    _emit(
        {
            "speaker_id": args.speaker,
            "config": echo,
            "verdict": decision.verdict,
            "score": decision.score,
            "threshold_used": decision.threshold_used,
            "f0_score": decision.f0_score,
            "current": bl.metrics_to_dict(decision.current),
            "baseline": None
            if decision.baseline is None
            else {
                "n": decision.baseline.n,
                "mean_pause_pct": decision.baseline.mean_pause_pct,
                "std_pause_pct": decision.baseline.std_pause_pct,
                "mean_pause_count_per_min": decision.baseline.mean_pause_count_per_min,
                "std_pause_count_per_min": decision.baseline.std_pause_count_per_min,
            },
        }
    )
    return _VERDICT_EXIT[decision.verdict]


def cmd_synth(args) -> int:
    script = script_from_path(args.script)
    signal, _ = render(script)
    write_wav(signal, args.out)
    _emit(
        {
            "out": str(args.out),
            "samples": int(signal.samples.size),
            "sample_rate_hz": signal.sample_rate_hz,
            "duration_s": signal.duration_s,
        }
    )
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except StoreCorrupt as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvalidSpeakerId as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (PausegateError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
