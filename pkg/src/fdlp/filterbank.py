"""Auditory frequency scales and the two filterbanks used by the pipelines.

The bark bank weights DCT coefficients for the all-pole path; the mel bank
weights magnitude-spectrum bins for the baseline. Both are immutable once
built and safe to share across workers.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidFrequencyError, TooManyBandsError


@dataclass(frozen=True)
class Filterbank:
    """Band weights over spectral bins, plus per-band geometry in Hz.

    weights: (n_bands, n_bins), each row nonnegative with unit peak.
    band_edges: (n_bands, 3) rows of (low edge, center, high edge) in Hz.
    """

    weights: np.ndarray
    scale: str
    band_edges: np.ndarray

    @property
    def n_bands(self) -> int:
        return self.weights.shape[0]

    @property
    def centers_hz(self) -> np.ndarray:
        return self.band_edges[:, 1]


def hz_to_bark(f):
    """Schroeder bark scale: 6 * asinh(f / 600)."""
    f = np.asarray(f, dtype=np.float64)
    if np.any(f < 0):
        raise InvalidFrequencyError("frequency must be nonnegative")
    return 6.0 * np.arcsinh(f / 600.0)


def bark_to_hz(z):
    """Inverse of hz_to_bark."""
    return 600.0 * np.sinh(np.asarray(z, dtype=np.float64) / 6.0)


def hz_to_mel(f):
    """HTK mel scale: 2595 * log10(1 + f / 700)."""
    f = np.asarray(f, dtype=np.float64)
    if np.any(f < 0):
        raise InvalidFrequencyError("frequency must be nonnegative")
    return 2595.0 * np.log10(1.0 + f / 700.0)


def mel_to_hz(m):
    """Inverse of hz_to_mel."""
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


def bark_cochlear_filterbank(
    n_bands: int, n_bins: int, sample_rate: int, width_bark: float = 1.0
) -> Filterbank:
    """Cochlear weights over DCT bins, equally spaced on the bark scale.

    Each band is a unit-peak raised-cosine taper in the bark domain whose
    full width at half power is ``width_bark`` (support is twice that). DCT
    bin k of an n_bins window sits at k * sample_rate / (2 * n_bins) Hz.
    Centers are the interior points of a uniform bark grid over
    [0, sample_rate / 2].
    """
    if n_bands < 1:
        raise ValueError("need at least one band")
    if n_bands > n_bins:
        raise TooManyBandsError(f"{n_bands} bands will not fit in {n_bins} bins")
    nyquist = sample_rate / 2.0
    grid = np.linspace(hz_to_bark(0.0), hz_to_bark(nyquist), n_bands + 2)
    centers = grid[1:-1]

    bin_hz = np.arange(n_bins) * sample_rate / (2.0 * n_bins)
    bin_bark = hz_to_bark(bin_hz)
    offset = bin_bark[np.newaxis, :] - centers[:, np.newaxis]
    weights = np.where(
        np.abs(offset) <= width_bark,
        np.cos(np.pi * offset / (2.0 * width_bark)) ** 2,
        0.0,
    )
    weights = _normalize_rows(weights)
    edges = np.stack(
        [
            bark_to_hz(np.maximum(centers - width_bark, 0.0)),
            bark_to_hz(centers),
            bark_to_hz(np.minimum(centers + width_bark, hz_to_bark(nyquist))),
        ],
        axis=1,
    )
    return Filterbank(weights=weights, scale="bark", band_edges=edges)


def mel_triangular_filterbank(n_bands: int, n_fft_bins: int, sample_rate: int) -> Filterbank:
    """Standard triangular filters, centers uniform in mel over [0, Nyquist].

    Adjacent triangles meet at each other's centers; every filter peaks at 1.
    Bin k of an n_fft_bins one-sided spectrum sits at
    k * (sample_rate / 2) / (n_fft_bins - 1) Hz.
    """
    if n_bands < 1:
        raise ValueError("need at least one band")
    if n_bands > n_fft_bins:
        raise TooManyBandsError(f"{n_bands} bands will not fit in {n_fft_bins} bins")
    nyquist = sample_rate / 2.0
    mel_points = np.linspace(hz_to_mel(0.0), hz_to_mel(nyquist), n_bands + 2)
    hz_points = mel_to_hz(mel_points)

    bin_hz = np.arange(n_fft_bins) * nyquist / max(n_fft_bins - 1, 1)
    lo = hz_points[:-2][:, np.newaxis]
    mid = hz_points[1:-1][:, np.newaxis]
    hi = hz_points[2:][:, np.newaxis]
    rising = (bin_hz - lo) / (mid - lo)
    falling = (hi - bin_hz) / (hi - mid)
    # Triangles keep their exact geometry (apex 1, overlapping pairs summing
    # to 1 between centers); rows are not renormalized to the bin grid.
    weights = np.clip(np.minimum(rising, falling), 0.0, 1.0)
    if np.any(weights.max(axis=1) <= 0):
        raise TooManyBandsError("a band has no support on the bin grid")
    edges = np.stack([hz_points[:-2], hz_points[1:-1], hz_points[2:]], axis=1)
    return Filterbank(weights=weights, scale="mel", band_edges=edges)


def _normalize_rows(weights: np.ndarray) -> np.ndarray:
    """Scale each row to unit peak; a row with no support cannot be used."""
    peaks = weights.max(axis=1)
    if np.any(peaks <= 0):
        raise TooManyBandsError("a band has no support on the bin grid")
    return weights / peaks[:, np.newaxis]


def filterbank_to_csv(bank: Filterbank, path) -> None:
    """Dump rows of (band index, center Hz, weights...) for inspection."""
    with open(path, "w") as fh:
        for i in range(bank.n_bands):
            row = ",".join(f"{w:.6g}" for w in bank.weights[i])
            fh.write(f"{i},{bank.centers_hz[i]:.6g},{row}\n")
