"""All-pole envelope modeling in the DCT domain and the modulation spectrum.

Linear prediction over a DCT-coefficient sequence yields an all-pole model
whose power response, read over frequencies omega in [0, pi), traces the
squared Hilbert envelope of the underlying band signal across the analysis
window (the time/frequency dual of ordinary LPC).

Log-response convention: for a model with A(z) = 1 - sum alpha_m z^-m,

    log F(omega) = 2 * (M[0] + sum_{m>=1} M[m] cos(m omega))

with M given by the cepstral recursion below and M[0] = log G. The DC term
carries half the weight of the others because the mean of log|A|^2 over the
unit circle vanishes for minimum-phase A; this is the constant that makes
the recursion, the dense-grid inverse transform, and the exp/DTFT
reconstruction mutually consistent. Coefficient m of M corresponds to a
temporal modulation frequency of m / (2T) Hz for a T-second window.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .dsp import AllPoleModel, _autocorrelate_batch, _levinson_batch
from .errors import InvalidRangeError, OrderTooLargeError, ShapeMismatchError, ZeroEnergyError


@dataclass(frozen=True)
class FdlpResponse:
    """All-pole power response sampled uniformly across the window duration.

    ``duration`` is the window length in seconds when the caller knows it,
    None for responses evaluated outside any window context.
    """

    values: np.ndarray
    duration: float | None
    n_points: int

    def __post_init__(self):
        if self.n_points < 1:
            raise ValueError("need at least one sample point")
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))


@dataclass(frozen=True)
class ModulationSpectrum:
    """Cosine-projection coefficients M[0..K] of the log response.

    Constructed so that M[0] equals log G of the source model; coefficient m
    has frequency resolution m / (2 * window_duration) Hz.
    """

    coefficients: np.ndarray
    window_duration: float

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", np.asarray(self.coefficients, dtype=np.float64)
        )

    def __len__(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class Lifter:
    """Modulation-domain weight vector; binary form keeps indices a..b."""

    weights: np.ndarray
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=np.float64))

    def __len__(self) -> int:
        return len(self.weights)


def fit_fdlp_model(dct_band: np.ndarray, order: int) -> AllPoleModel:
    """Autocorrelation + Levinson fit of an all-pole model to a DCT sequence.

    Silence is not tolerated here: an all-zero band raises ZeroEnergyError
    and the caller decides how to floor it.
    """
    dct_band = np.asarray(dct_band, dtype=np.float64)
    if order >= len(dct_band):
        raise OrderTooLargeError(f"order {order} needs more than {len(dct_band)} coefficients")
    r = _autocorrelate_batch(dct_band[np.newaxis, :], order)
    if r[0, 0] <= 0:
        raise ZeroEnergyError("band has no energy")
    gains, alpha, refl = _levinson_batch(r)
    return AllPoleModel(
        gain=float(gains[0]), coefficients=alpha[0], order=order, reflections=refl[0]
    )


def _power_response_batch(gains, alphas, n_points: int) -> np.ndarray:
    """G^2 / |A|^2 on n_points uniform frequencies in [0, pi), per row.

    Evaluated with a zero-padded real FFT of [1, -alpha]; the FFT length is
    an integer multiple of 2*n_points so the wanted grid falls exactly on
    FFT bins regardless of model order.
    """
    gains = np.atleast_1d(np.asarray(gains, dtype=np.float64))
    alphas = np.atleast_2d(np.asarray(alphas, dtype=np.float64))
    n_rows, order = alphas.shape
    stride = max(1, math.ceil((order + 1) / (2 * n_points)))
    nfft = 2 * n_points * stride
    poly = np.zeros((n_rows, order + 1))
    poly[:, 0] = 1.0
    poly[:, 1:] = -alphas
    spectrum = scipy.fft.rfft(poly, n=nfft, axis=1)
    denom = np.abs(spectrum[:, :: stride][:, :n_points]) ** 2
    return (gains[:, np.newaxis] ** 2) / denom


def fdlp_response(model: AllPoleModel, n_points: int) -> FdlpResponse:
    """Evaluate the model power response; sample i maps to time (i/n_points)*T."""
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    values = _power_response_batch(model.gain, model.coefficients, n_points)[0]
    return FdlpResponse(values=values, duration=None, n_points=n_points)


def _modulation_batch(log_gains, alphas, n_coeffs: int) -> np.ndarray:
    """Cepstral recursion M[m] = alpha_m + sum_{i<m} (i/m) alpha_{m-i} M[i], per row.

    alpha_m = 0 beyond the model order; M[0] = log G.
    """
    log_gains = np.atleast_1d(np.asarray(log_gains, dtype=np.float64))
    alphas = np.atleast_2d(np.asarray(alphas, dtype=np.float64))
    n_rows = alphas.shape[0]
    # alpha indexed by m: column m holds alpha_m, zero beyond model order
    padded = np.zeros((n_rows, n_coeffs))
    usable = min(alphas.shape[1], n_coeffs - 1)
    padded[:, 1 : usable + 1] = alphas[:, :usable]
    m_coeffs = np.zeros((n_rows, n_coeffs))
    m_coeffs[:, 0] = log_gains
    for m in range(1, n_coeffs):
        conv = np.sum(
            padded[:, m - 1 : 0 : -1] * m_coeffs[:, 1:m] * (np.arange(1, m) / m),
            axis=1,
        )
        m_coeffs[:, m] = padded[:, m] + conv
    return m_coeffs


def modulation_spectrum(
    model: AllPoleModel, n_coeffs: int, window_duration: float
) -> ModulationSpectrum:
    """First n_coeffs modulation coefficients of the model, by recursion."""
    if n_coeffs < 1:
        raise ValueError("n_coeffs must be >= 1")
    coeffs = _modulation_batch(
        np.log(model.gain), model.coefficients.reshape(1, -1), n_coeffs
    )[0]
    return ModulationSpectrum(coefficients=coeffs, window_duration=window_duration)


def modulation_coefficient_count(max_modulation_hz: float, window_duration: float) -> int:
    """Number of coefficients carrying modulations up to the given frequency.

    Coefficient m sits at m / (2T) Hz, so content up to F Hz occupies the
    first ceil(2 F T) coefficients. A tiny slack absorbs float artifacts of
    products that are integers in exact arithmetic.
    """
    if max_modulation_hz < 0 or window_duration <= 0:
        raise ValueError("frequency and duration must be positive")
    return max(0, math.ceil(2.0 * max_modulation_hz * window_duration - 1e-9))


def make_binary_lifter(a: int, b: int, length: int) -> Lifter:
    """Binary lifter: weight 1 exactly on indices a..min(b, length-1)."""
    if a > b:
        raise InvalidRangeError(f"lifter band [{a}, {b}] is empty")
    if a < 0 or length < 1:
        raise InvalidRangeError("lifter band and length must be nonnegative")
    weights = np.zeros(length)
    weights[a : b + 1] = 1.0
    return Lifter(weights=weights, a=a, b=b)


def _log_response_batch(weighted: np.ndarray, n_points: int) -> np.ndarray:
    """log F-hat on the uniform [0, pi) grid from weighted modulation rows.

    Implements 2 * (w[0] + sum_{m>=1} w[m] cos(m omega)) via a real FFT
    whose length is a multiple of 2*n_points covering all coefficients.
    """
    weighted = np.atleast_2d(np.asarray(weighted, dtype=np.float64))
    n_rows, n_coeffs = weighted.shape
    stride = max(1, math.ceil(n_coeffs / (2 * n_points)))
    nfft = 2 * n_points * stride
    spectrum = scipy.fft.rfft(2.0 * weighted, n=nfft, axis=1)
    return spectrum.real[:, :: stride][:, :n_points]


def _log_response_grid(weighted: np.ndarray, omegas: np.ndarray) -> np.ndarray:
    """Same cosine series as _log_response_batch, on an arbitrary omega grid.

    The spectrogram pipeline needs response samples at exact global frame
    centers, which are generally not FFT-bin frequencies; direct cosine
    evaluation keeps them exact at negligible cost for frame-rate grids.
    """
    weighted = np.atleast_2d(np.asarray(weighted, dtype=np.float64))
    n_coeffs = weighted.shape[1]
    table = np.cos(np.outer(np.arange(1, n_coeffs), omegas))
    return 2.0 * (weighted[:, :1] + weighted[:, 1:] @ table)


def liftered_response(
    m: ModulationSpectrum, lifter: Lifter, n_points: int
) -> FdlpResponse:
    """Reconstruct the response from liftered modulations: exp of the cosine series."""
    if len(lifter) != len(m):
        raise ShapeMismatchError(
            f"lifter length {len(lifter)} != modulation spectrum length {len(m)}"
        )
    log_vals = _log_response_batch(
        (m.coefficients * lifter.weights)[np.newaxis, :], n_points
    )[0]
    return FdlpResponse(
        values=np.exp(log_vals), duration=m.window_duration, n_points=n_points
    )
