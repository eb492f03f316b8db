"""pausegate: pause-based speech screening against per-speaker baselines.

The pipeline: load or synthesize a mono signal, fingerprint the background
noise in the 80-300 Hz band, label frames whose band energy rises above
that floor as speech, smooth the labels into speech/pause segments,
summarize them into pause metrics, and compare those metrics against the
speaker's enrolled sober baseline.
"""

from .audio_io import AudioSignal, load_wav, write_wav
from .baseline import (
    BaselineStats,
    Decision,
    DecisionConfig,
    Enrollment,
    ProfileStore,
    SpeakerProfile,
    baseline_stats,
    decide,
    enroll,
    load_store,
    save_store,
)
from .errors import (
    BandAboveNyquist,
    EmptyAudio,
    EmptyBand,
    EmptyProfile,
    FileUnreadable,
    InvalidRange,
    InvalidScript,
    InvalidSpeakerId,
    PausegateError,
    SampleRateTooLow,
    SignalTooShort,
    StoreCorrupt,
    StoreWriteFailure,
    UnsupportedFormat,
    WindowTooShort,
    WriteFailure,
)
from .metrics import F0Stats, PauseMetrics, f0_stats, f0_track, pause_metrics
from .pause_detection import (
    FrameLabel,
    NoiseFingerprint,
    Segment,
    SegmentList,
    VadConfig,
    classify_frames,
    detect_pauses,
    fingerprint_noise,
    segment,
    smooth_runs,
    validate_segment_list,
)
from .spectral import (
    BandConfig,
    FrameFeature,
    Spectrum,
    WindowPlan,
    band_bins,
    band_energy,
    default_plan,
    max_frequency_in_band,
    real_spectrum,
    windowed_scan,
)
from .synth import (
    Event,
    GroundTruth,
    NoiseEvent,
    Script,
    SilenceEvent,
    ToneEvent,
    render,
    script_from_json,
    script_from_path,
)

__version__ = "0.1.0"

__all__ = [
    "AudioSignal",
    "BandAboveNyquist",
    "BandConfig",
    "BaselineStats",
    "Decision",
    "DecisionConfig",
    "EmptyAudio",
    "EmptyBand",
    "EmptyProfile",
    "Enrollment",
    "Event",
    "F0Stats",
    "FileUnreadable",
    "FrameFeature",
    "FrameLabel",
    "GroundTruth",
    "InvalidRange",
    "InvalidScript",
    "InvalidSpeakerId",
    "NoiseEvent",
    "NoiseFingerprint",
    "PausegateError",
    "PauseMetrics",
    "ProfileStore",
    "SampleRateTooLow",
    "Script",
    "Segment",
    "SegmentList",
    "SignalTooShort",
    "SilenceEvent",
    "SpeakerProfile",
    "Spectrum",
    "StoreCorrupt",
    "StoreWriteFailure",
    "ToneEvent",
    "UnsupportedFormat",
    "VadConfig",
    "WindowPlan",
    "WindowTooShort",
    "WriteFailure",
    "band_bins",
    "band_energy",
    "baseline_stats",
    "classify_frames",
    "decide",
    "default_plan",
    "detect_pauses",
    "enroll",
    "f0_stats",
    "f0_track",
    "fingerprint_noise",
    "load_store",
    "load_wav",
    "max_frequency_in_band",
    "pause_metrics",
    "real_spectrum",
    "render",
    "save_store",
    "script_from_json",
    "script_from_path",
    "segment",
    "smooth_runs",
    "validate_segment_list",
    "windowed_scan",
    "write_wav",
]
