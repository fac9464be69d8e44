"""Core numeric transforms: DCT, autocorrelation, Levinson-Durbin, Hilbert envelope.

Everything here is a pure function of its inputs. Batched variants (leading
band axis) are module-private and feed the spectrogram pipeline; the public
single-sequence operations are thin wrappers over them, so both paths share
one set of numerics.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.fft
import scipy.signal

from .errors import (
    EmptyInputError,
    InvalidLengthError,
    OrderTooLargeError,
    UnstableModelError,
    ZeroEnergyError,
)


@dataclass(frozen=True)
class AudioSegment:
    """Mono waveform with its sample rate."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=np.float64))

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


@dataclass(frozen=True)
class AutocorrelationSequence:
    """Biased autocorrelation estimate r[0..max_lag] and the sample count it came from."""

    values: np.ndarray
    source_length: int

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))

    @property
    def max_lag(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class AllPoleModel:
    """Gain G and predictor coefficients of A(z) = 1 - sum_m alpha_m z^-m.

    Produced by the Levinson recursion, hence minimum phase: all roots of
    A(z) lie strictly inside the unit circle. ``reflections`` keeps the
    intermediate reflection coefficients for stability checks.
    """

    gain: float
    coefficients: np.ndarray
    order: int
    reflections: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.gain <= 0:
            raise ValueError("gain must be positive")
        coeffs = np.asarray(self.coefficients, dtype=np.float64)
        if len(coeffs) != self.order:
            raise ValueError("coefficient count must equal model order")
        object.__setattr__(self, "coefficients", coeffs)


@dataclass(frozen=True)
class EnvelopeSignal:
    """Nonnegative squared-amplitude trajectory over a known duration."""

    values: np.ndarray
    duration: float

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))


def dct(segment: AudioSegment) -> np.ndarray:
    """Orthonormal DCT-II of the segment samples.

    The orthonormal scaling makes the transform energy-preserving, so band
    energies are comparable across window lengths.
    """
    if len(segment.samples) == 0:
        raise EmptyInputError("cannot transform an empty segment")
    return scipy.fft.dct(segment.samples, type=2, norm="ortho")


def _autocorrelate_batch(seqs: np.ndarray, max_lag: int) -> np.ndarray:
    """Biased autocorrelation r[k] = (1/N) sum_n s[n] s[n+k] for each row.

    FFT-based; zero-padding past N + max_lag keeps the estimate linear
    (no circular wrap-around).
    """
    seqs = np.atleast_2d(np.asarray(seqs, dtype=np.float64))
    n = seqs.shape[1]
    if max_lag >= n:
        raise OrderTooLargeError(f"max_lag {max_lag} needs more than {n} samples")
    nfft = scipy.fft.next_fast_len(n + max_lag + 1, real=True)
    spectrum = scipy.fft.rfft(seqs, n=nfft, axis=1)
    acorr = scipy.fft.irfft(spectrum * np.conj(spectrum), n=nfft, axis=1).real
    return acorr[:, : max_lag + 1] / n


def autocorrelate(sequence: np.ndarray, max_lag: int) -> AutocorrelationSequence:
    """Biased autocorrelation estimate up to ``max_lag``.

    The 1/N estimator is positive semidefinite by construction, which
    guarantees the Levinson recursion stays stable downstream.
    """
    sequence = np.asarray(sequence, dtype=np.float64)
    values = _autocorrelate_batch(sequence[np.newaxis, :], max_lag)[0]
    return AutocorrelationSequence(values=values, source_length=len(sequence))


def _levinson_batch(r: np.ndarray):
    """Levinson-Durbin over a batch of autocorrelation rows r[:, 0..p].

    Returns (gains, coefficients, reflections) with coefficients in the
    A(z) = 1 - sum alpha_m z^-m convention. Raises if any row has
    non-positive zero-lag energy or produces |reflection| >= 1.
    """
    r = np.atleast_2d(np.asarray(r, dtype=np.float64))
    n_rows, n_lags = r.shape
    order = n_lags - 1
    if np.any(r[:, 0] <= 0):
        raise ZeroEnergyError("zero-lag autocorrelation must be positive")

    alpha = np.zeros((n_rows, order))
    refl = np.zeros((n_rows, order))
    err = r[:, 0].copy()
    for i in range(1, order + 1):
        acc = r[:, i].copy()
        if i > 1:
            # sum_j alpha_j r[i-j] over j = 1..i-1
            acc -= np.sum(alpha[:, : i - 1] * r[:, i - 1 : 0 : -1], axis=1)
        k = acc / err
        if np.any(np.abs(k) >= 1.0):
            raise UnstableModelError(f"reflection coefficient magnitude >= 1 at step {i}")
        refl[:, i - 1] = k
        prev = alpha[:, : i - 1].copy()
        alpha[:, : i - 1] = prev - k[:, np.newaxis] * prev[:, ::-1]
        alpha[:, i - 1] = k
        err = err * (1.0 - k * k)
    gains = np.sqrt(err)
    return gains, alpha, refl


def levinson_durbin(r: AutocorrelationSequence) -> AllPoleModel:
    """Fit the order-p all-pole model minimizing forward prediction error.

    The gain is sqrt of the final prediction error, so the model power
    response G^2 / |A|^2 matches the input's zero-lag energy scale.
    """
    gains, alpha, refl = _levinson_batch(r.values[np.newaxis, :])
    return AllPoleModel(
        gain=float(gains[0]),
        coefficients=alpha[0],
        order=r.max_lag,
        reflections=refl[0],
    )


def hilbert_envelope(segment: AudioSegment) -> EnvelopeSignal:
    """Squared magnitude of the analytic signal, sample by sample.

    The analytic signal is formed in the frequency domain (negative
    frequencies zeroed, positive doubled, DC/Nyquist kept). No edge
    extension is applied, so the first/last few percent of samples carry
    wrap-around artifacts.
    """
    if len(segment.samples) == 0:
        raise EmptyInputError("cannot compute the envelope of an empty segment")
    analytic = scipy.signal.hilbert(segment.samples)
    return EnvelopeSignal(
        values=np.abs(analytic) ** 2,
        duration=segment.duration,
    )


def von_hann_window(length: int) -> np.ndarray:
    """Symmetric von Hann taper: 0.5 - 0.5 cos(2 pi n / (N-1)), endpoints zero.

    The second half mirrors the first bitwise, so w[n] == w[N-1-n] holds
    exactly, not only to rounding.
    """
    if length < 2:
        raise InvalidLengthError("window needs at least 2 points")
    n = np.arange(length)
    w = 0.5 - 0.5 * np.cos(2.0 * np.pi * n / (length - 1))
    half = (length + 1) // 2
    w[length - half :] = w[:half][::-1]
    return w
