import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdlp.archive import (
    CorpusManifest,
    FeatureArchive,
    read_archive,
    read_manifest,
    write_archive,
)
from fdlp.audio_io import read_wav, write_wav
from fdlp.dsp import AudioSegment
from fdlp.errors import (
    ChecksumFailureError,
    CorruptHeaderError,
    EmptyInputError,
    UnsupportedFormatError,
    VersionMismatchError,
)
from fdlp.render import emit_image, spectrogram_to_csv
from fdlp.spectrogram import Spectrogram


def spec_of(values, scale="bark"):
    return Spectrogram(
        values=np.asarray(values, dtype=np.float32),
        frame_rate=100,
        band_scale=scale,
        config_fingerprint=0x1234,
    )


# --- wav -------------------------------------------------------------------


def test_wav_pcm16_full_scale(tmp_path):
    path = tmp_path / "square.wav"
    square = np.tile([1.0, -1.0], 100)
    write_wav(path, AudioSegment(samples=square, sample_rate=16000))
    loaded = read_wav(path)
    assert loaded.sample_rate == 16000
    assert np.max(loaded.samples) == pytest.approx(32767 / 32768)
    assert np.min(loaded.samples) == -1.0


def test_wav_float32_round_trip(tmp_path):
    path = tmp_path / "f32.wav"
    rng = np.random.default_rng(0)
    samples = rng.normal(scale=0.3, size=777).astype(np.float32)
    write_wav(path, AudioSegment(samples=samples, sample_rate=8000), "float32")
    loaded = read_wav(path)
    assert loaded.sample_rate == 8000
    assert np.array_equal(loaded.samples.astype(np.float32), samples)


def test_wav_stereo_rejected(tmp_path):
    path = tmp_path / "stereo.wav"
    payload = struct.pack("<4h", 1, 2, 3, 4)
    header = b"RIFF" + struct.pack("<I", 36 + len(payload)) + b"WAVE"
    header += b"fmt " + struct.pack("<IHHIIHH", 16, 1, 2, 16000, 64000, 4, 16)
    header += b"data" + struct.pack("<I", len(payload))
    path.write_bytes(header + payload)
    with pytest.raises(UnsupportedFormatError):
        read_wav(path)


def test_wav_unsupported_bit_depth(tmp_path):
    path = tmp_path / "w24.wav"
    header = b"RIFF" + struct.pack("<I", 36) + b"WAVE"
    header += b"fmt " + struct.pack("<IHHIIHH", 16, 1, 1, 16000, 48000, 3, 24)
    header += b"data" + struct.pack("<I", 0)
    path.write_bytes(header)
    with pytest.raises(UnsupportedFormatError):
        read_wav(path)


def test_wav_truncated(tmp_path):
    src = tmp_path / "ok.wav"
    write_wav(src, AudioSegment(samples=np.zeros(100), sample_rate=16000))
    bad = tmp_path / "cut.wav"
    bad.write_bytes(src.read_bytes()[:30])
    with pytest.raises(CorruptHeaderError):
        read_wav(bad)


def test_wav_not_riff(tmp_path):
    path = tmp_path / "garbage.wav"
    path.write_bytes(b"OGGSxxxxxxxxxxxxxxxx")
    with pytest.raises(CorruptHeaderError):
        read_wav(path)


# --- archive ------------------------------------------------------------------


def test_archive_empty_round_trip(tmp_path):
    path = tmp_path / "empty.fdlp"
    write_archive(FeatureArchive(entries=[], band_scale="bark", config_fingerprint=5), path)
    loaded = read_archive(path)
    assert len(loaded) == 0
    assert loaded.config_fingerprint == 5
    assert loaded.band_scale == "bark"


def test_archive_two_entry_round_trip_bitwise(tmp_path):
    rng = np.random.default_rng(1)
    a = spec_of(rng.normal(size=(8, 11)))
    b = spec_of(rng.normal(size=(8, 30)))
    path = tmp_path / "two.fdlp"
    write_archive(
        FeatureArchive(entries=[("u1", a), ("u2", b)], band_scale="bark", config_fingerprint=9),
        path,
    )
    loaded = read_archive(path)
    assert [uid for uid, _ in loaded.entries] == ["u1", "u2"]
    assert np.array_equal(loaded.get("u1").values, a.values)
    assert loaded.get("u1").values.tobytes() == a.values.tobytes()
    assert np.array_equal(loaded.get("u2").values, b.values)


def test_archive_checksum_failure(tmp_path):
    path = tmp_path / "dam.fdlp"
    write_archive(
        FeatureArchive(
            entries=[("u", spec_of(np.ones((4, 4))))], band_scale="mel", config_fingerprint=1
        ),
        path,
    )
    raw = bytearray(path.read_bytes())
    raw[-12] ^= 0x40  # flip one payload byte
    path.write_bytes(bytes(raw))
    with pytest.raises(ChecksumFailureError):
        read_archive(path)


def test_archive_version_mismatch(tmp_path):
    path = tmp_path / "vers.fdlp"
    write_archive(FeatureArchive(entries=[], band_scale="bark", config_fingerprint=1), path)
    raw = bytearray(path.read_bytes())
    raw[4] = 99
    path.write_bytes(bytes(raw))
    with pytest.raises(VersionMismatchError):
        read_archive(path)


def test_archive_bad_magic(tmp_path):
    path = tmp_path / "magic.fdlp"
    path.write_bytes(b"NOPE" + bytes(32))
    with pytest.raises(CorruptHeaderError):
        read_archive(path)


def test_archive_duplicate_ids_rejected():
    entry = ("u", spec_of(np.ones((2, 2))))
    with pytest.raises(ValueError):
        FeatureArchive(entries=[entry, entry], band_scale="bark", config_fingerprint=0)


def test_archive_heterogeneous_bands_rejected():
    entries = [("a", spec_of(np.ones((2, 2)))), ("b", spec_of(np.ones((3, 2))))]
    with pytest.raises(ValueError):
        FeatureArchive(entries=entries, band_scale="bark", config_fingerprint=0)


@settings(max_examples=20, deadline=None)
@given(
    bands=st.integers(1, 6),
    frame_counts=st.lists(st.integers(1, 9), min_size=0, max_size=4),
    seed=st.integers(0, 2**32 - 1),
)
def test_archive_random_round_trip(tmp_path_factory, bands, frame_counts, seed):
    rng = np.random.default_rng(seed)
    entries = [
        (f"utt{i}", spec_of(rng.normal(size=(bands, frames))))
        for i, frames in enumerate(frame_counts)
    ]
    path = tmp_path_factory.mktemp("arc") / "a.fdlp"
    write_archive(
        FeatureArchive(entries=entries, band_scale="mel", config_fingerprint=seed), path
    )
    loaded = read_archive(path)
    assert len(loaded) == len(entries)
    for (uid, original), (lid, back) in zip(entries, loaded.entries):
        assert uid == lid
        assert back.values.tobytes() == original.values.tobytes()


# --- manifest ---------------------------------------------------------------------


def test_manifest_parsing(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("# corpus\nu1 /data/a.wav\n\nu2 /data/with space.wav\n")
    manifest = read_manifest(path, expected_sample_rate=16000)
    assert manifest.records == [("u1", "/data/a.wav"), ("u2", "/data/with space.wav")]
    assert manifest.expected_sample_rate == 16000


def test_manifest_duplicate_ids(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("u1 a.wav\nu1 b.wav\n")
    with pytest.raises(ValueError):
        read_manifest(path)


def test_manifest_missing_path(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("lonely-id\n")
    with pytest.raises(ValueError):
        read_manifest(path)


def test_manifest_empty(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("# nothing\n")
    with pytest.raises(EmptyInputError):
        read_manifest(path)


def test_manifest_type_checks():
    with pytest.raises(ValueError):
        CorpusManifest(records=[("u", " ")])


# --- rendering ----------------------------------------------------------------------


def parse_pgm(data):
    magic, dims, maxval, rest = data.split(b"\n", 3)
    width, height = map(int, dims.split())
    assert magic == b"P5" and maxval == b"255"
    return width, height, np.frombuffer(rest, dtype=np.uint8).reshape(height, width)


def test_image_dimensions(tmp_path):
    rng = np.random.default_rng(2)
    path = tmp_path / "s.pgm"
    emit_image(spec_of(rng.normal(size=(80, 150))), path)
    width, height, pixels = parse_pgm(path.read_bytes())
    assert (width, height) == (150, 80)


def test_image_constant_is_mid_gray(tmp_path):
    path = tmp_path / "c.pgm"
    emit_image(spec_of(np.full((5, 7), -3.0)), path)
    _, _, pixels = parse_pgm(path.read_bytes())
    assert np.all(pixels == 128)


def test_image_two_level(tmp_path):
    values = np.full((6, 9), -5.0)
    values[2, 3] = 1.0
    path = tmp_path / "t.pgm"
    emit_image(spec_of(values), path)
    _, _, pixels = parse_pgm(path.read_bytes())
    assert set(np.unique(pixels)) == {0, 255}


def test_image_orientation(tmp_path):
    # energy in the top band must land in the first pixel row
    values = np.zeros((4, 5))
    values[3, 0] = 1.0
    path = tmp_path / "o.pgm"
    emit_image(spec_of(values), path)
    _, _, pixels = parse_pgm(path.read_bytes())
    assert pixels[0, 0] == 255


def test_image_empty():
    with pytest.raises(EmptyInputError):
        emit_image(spec_of(np.zeros((0, 0))), "/tmp/never.pgm")


def test_csv_dump(tmp_path):
    values = np.array([[1.234567891, -2.0], [0.5, 3.25]])
    path = tmp_path / "s.csv"
    spectrogram_to_csv(spec_of(values), path)
    lines = path.read_text().strip().splitlines()
    assert lines[0].startswith("#")
    assert len(lines) == 1 + 2  # header + one row per frame
    assert lines[1] == "1.23457,0.5"
    assert lines[2] == "-2,3.25"
