import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdlp.errors import InvalidFrequencyError, TooManyBandsError
from fdlp.filterbank import (
    bark_cochlear_filterbank,
    bark_to_hz,
    filterbank_to_csv,
    hz_to_bark,
    hz_to_mel,
    mel_to_hz,
    mel_triangular_filterbank,
)


# --- scales ---------------------------------------------------------------


def test_bark_anchor_points():
    assert hz_to_bark(0.0) == 0.0
    assert hz_to_bark(600.0) == pytest.approx(6 * np.arcsinh(1.0))
    # closed form: 6 * ln(1 + sqrt(2)) = 5.28824...
    assert float(hz_to_bark(600.0)) == pytest.approx(5.2882, abs=1e-4)


def test_mel_anchor_points():
    assert hz_to_mel(0.0) == 0.0
    assert float(hz_to_mel(700.0)) == pytest.approx(2595 * np.log10(2), abs=1e-9)
    assert float(hz_to_mel(1000.0)) == pytest.approx(999.99, abs=0.01)


@pytest.mark.parametrize("fn", [hz_to_bark, hz_to_mel])
def test_scales_reject_negative(fn):
    with pytest.raises(InvalidFrequencyError):
        fn(-1.0)


@given(st.floats(0, 8000), st.floats(0, 8000))
def test_bark_monotone(f1, f2):
    if f1 < f2:
        assert hz_to_bark(f1) < hz_to_bark(f2)


@given(st.floats(0, 8000))
def test_scale_round_trips(f):
    assert float(bark_to_hz(hz_to_bark(f))) == pytest.approx(f, abs=1e-9)
    assert float(mel_to_hz(hz_to_mel(f))) == pytest.approx(f, abs=1e-9)


# --- bark cochlear bank -----------------------------------------------------


def test_bark_bank_default_geometry():
    bank = bark_cochlear_filterbank(80, 24000, 16000)
    assert bank.weights.shape == (80, 24000)
    centers_bark = hz_to_bark(bank.centers_hz)
    spacing = np.diff(centers_bark)
    assert np.allclose(spacing, spacing[0], atol=1e-9)
    assert np.all(np.diff(bank.centers_hz) > 0)
    assert np.all(bank.weights >= 0) and np.all(bank.weights <= 1)
    assert np.allclose(bank.weights.max(axis=1), 1.0)


def test_bark_bank_coverage():
    bank = bark_cochlear_filterbank(80, 24000, 16000)
    bin_hz = np.arange(24000) * 16000 / 48000
    inside = (bin_hz >= bank.centers_hz[0]) & (bin_hz <= bank.centers_hz[-1])
    total = bank.weights.sum(axis=0)
    assert np.all(total[inside] > 0.1)


def test_bark_bank_single_band():
    bank = bark_cochlear_filterbank(1, 1024, 16000)
    assert bank.weights.shape == (1, 1024)
    assert bank.weights.max() == 1.0


def test_bark_bank_too_many_bands():
    with pytest.raises(TooManyBandsError):
        bark_cochlear_filterbank(100, 50, 16000)


def test_bark_bank_linearity_on_ones():
    bank = bark_cochlear_filterbank(12, 512, 16000)
    applied = bank.weights @ np.ones(512)
    assert np.allclose(applied, bank.weights.sum(axis=1))


def test_bank_argmax_strictly_increasing():
    bank = bark_cochlear_filterbank(80, 24000, 16000)
    assert np.all(np.diff(np.argmax(bank.weights, axis=1)) > 0)
    mel = mel_triangular_filterbank(80, 8193, 16000)
    assert np.all(np.diff(np.argmax(mel.weights, axis=1)) > 0)


# --- mel triangular bank ------------------------------------------------------


def test_mel_bank_crossover_sums():
    bank = mel_triangular_filterbank(40, 4097, 16000)
    coverage = (bank.weights > 0).sum(axis=0)
    assert coverage.max() <= 2
    assert np.all(bank.weights.sum(axis=0) <= 1.0 + 1e-9)


def test_mel_bank_tone_hits_center_band():
    sr, nfft = 16000, 512
    bank = mel_triangular_filterbank(80, nfft // 2 + 1, sr)
    tone_band = 40
    tone_hz = bank.centers_hz[tone_band]
    t = np.arange(sr) / sr
    spectrum = np.abs(np.fft.rfft(np.cos(2 * np.pi * tone_hz * t)[:320], n=nfft))
    energies = bank.weights @ spectrum
    assert np.argmax(energies) == tone_band


def test_mel_bank_default_range():
    bank = mel_triangular_filterbank(80, 257, 16000)
    assert bank.centers_hz[0] < 100.0
    assert bank.centers_hz[-1] > 7000.0


def test_mel_bank_too_many_bands():
    with pytest.raises(TooManyBandsError):
        mel_triangular_filterbank(300, 257, 16000)


def test_filterbank_csv_dump(tmp_path):
    bank = mel_triangular_filterbank(6, 65, 8000)
    path = tmp_path / "bank.csv"
    filterbank_to_csv(bank, path)
    lines = path.read_text().strip().splitlines()
    assert len(lines) == 6
    first = lines[0].split(",")
    assert int(first[0]) == 0
    assert float(first[1]) == pytest.approx(bank.centers_hz[0], rel=1e-4)
    assert len(first) == 2 + 65
