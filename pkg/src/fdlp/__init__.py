"""FDLP spectrograms: all-pole models of sub-band Hilbert envelopes.

Linear prediction over DCT coefficients yields smooth temporal envelope
models per auditory band; liftering in the modulation domain selects which
temporal modulation frequencies survive. A mel spectrogram baseline and a
batch extraction CLI ship alongside.
"""

__version__ = "0.1.0"

from .archive import CorpusManifest, FeatureArchive, read_archive, read_manifest, write_archive
from .audio_io import read_wav, write_wav
from .dsp import (
    AllPoleModel,
    AudioSegment,
    AutocorrelationSequence,
    EnvelopeSignal,
    autocorrelate,
    dct,
    hilbert_envelope,
    levinson_durbin,
    von_hann_window,
)
from .filterbank import (
    Filterbank,
    bark_cochlear_filterbank,
    bark_to_hz,
    hz_to_bark,
    hz_to_mel,
    mel_to_hz,
    mel_triangular_filterbank,
)
from .modulation import (
    FdlpResponse,
    Lifter,
    ModulationSpectrum,
    fdlp_response,
    fit_fdlp_model,
    liftered_response,
    make_binary_lifter,
    modulation_coefficient_count,
    modulation_spectrum,
)
from .render import emit_image, spectrogram_to_csv
from .spectrogram import (
    FdlpConfig,
    Spectrogram,
    WindowedSegment,
    fdlp_spectrogram,
    mel_spectrogram,
    overlap_add,
    segment_utterance,
    window_fdlp_matrix,
)

__all__ = [
    "__version__",
    "AllPoleModel",
    "AudioSegment",
    "AutocorrelationSequence",
    "CorpusManifest",
    "EnvelopeSignal",
    "FdlpConfig",
    "FdlpResponse",
    "FeatureArchive",
    "Filterbank",
    "Lifter",
    "ModulationSpectrum",
    "Spectrogram",
    "WindowedSegment",
    "autocorrelate",
    "bark_cochlear_filterbank",
    "bark_to_hz",
    "dct",
    "emit_image",
    "fdlp_response",
    "fdlp_spectrogram",
    "fit_fdlp_model",
    "hilbert_envelope",
    "hz_to_bark",
    "hz_to_mel",
    "levinson_durbin",
    "liftered_response",
    "make_binary_lifter",
    "mel_spectrogram",
    "mel_to_hz",
    "mel_triangular_filterbank",
    "modulation_coefficient_count",
    "modulation_spectrum",
    "overlap_add",
    "read_archive",
    "read_manifest",
    "read_wav",
    "segment_utterance",
    "spectrogram_to_csv",
    "von_hann_window",
    "window_fdlp_matrix",
    "write_archive",
    "write_wav",
]
