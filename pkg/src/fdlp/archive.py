"""Feature archives and corpus manifests.

Archive layout (all little-endian):

    magic "FDLP" | version u16 | band scale u8 | config fingerprint u64
    | entry count u32
    per entry:
      id length u16 | id (UTF-8) | rows u32 | cols u32 | frame rate u32
      | payload (rows*cols float32, row-major) | crc32 u32

The CRC covers id, dimensions and payload, so a single flipped byte is
caught on read. Floats are stored at 32 bits: that is the precision
boundary of the file format, whatever the in-memory compute used.
"""

import struct
import zlib
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ChecksumFailureError,
    CorruptHeaderError,
    EmptyInputError,
    VersionMismatchError,
)
from .spectrogram import Spectrogram

MAGIC = b"FDLP"
FORMAT_VERSION = 1

_SCALE_CODES = {"bark": 0, "mel": 1}
_SCALE_NAMES = {v: k for k, v in _SCALE_CODES.items()}


@dataclass
class FeatureArchive:
    """Ordered utterance features sharing one configuration."""

    entries: list  # of (utterance_id, Spectrogram)
    band_scale: str
    config_fingerprint: int
    version: int = FORMAT_VERSION

    def __post_init__(self):
        ids = [uid for uid, _ in self.entries]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate utterance ids in archive")
        if len({(s.n_bands, s.frame_rate) for _, s in self.entries}) > 1:
            raise ValueError("archive entries must share band count and frame rate")

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, utterance_id: str) -> Spectrogram:
        for uid, spec in self.entries:
            if uid == utterance_id:
                return spec
        raise KeyError(utterance_id)


def write_archive(archive: FeatureArchive, path) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(
            struct.pack(
                "<HBQI",
                archive.version,
                _SCALE_CODES[archive.band_scale],
                archive.config_fingerprint,
                len(archive.entries),
            )
        )
        for uid, spec in archive.entries:
            id_bytes = uid.encode("utf-8")
            payload = np.ascontiguousarray(spec.values, dtype="<f4").tobytes()
            dims = struct.pack("<III", spec.values.shape[0], spec.values.shape[1], spec.frame_rate)
            fh.write(struct.pack("<H", len(id_bytes)) + id_bytes + dims + payload)
            fh.write(struct.pack("<I", zlib.crc32(id_bytes + dims + payload)))


def read_archive(path) -> FeatureArchive:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 4 + 15 or data[:4] != MAGIC:
        raise CorruptHeaderError(f"{path}: bad magic")
    version, scale_code, fingerprint, count = struct.unpack_from("<HBQI", data, 4)
    if version != FORMAT_VERSION:
        raise VersionMismatchError(f"{path}: format version {version}, expected {FORMAT_VERSION}")
    if scale_code not in _SCALE_NAMES:
        raise CorruptHeaderError(f"{path}: unknown band scale code {scale_code}")
    scale = _SCALE_NAMES[scale_code]

    entries = []
    pos = 19
    for _ in range(count):
        try:
            (id_len,) = struct.unpack_from("<H", data, pos)
            uid = data[pos + 2 : pos + 2 + id_len].decode("utf-8")
            body_start = pos + 2
            rows, cols, frame_rate = struct.unpack_from("<III", data, body_start + id_len)
            payload_start = body_start + id_len + 12
            payload_len = rows * cols * 4
            payload = data[payload_start : payload_start + payload_len]
            if len(payload) < payload_len:
                raise CorruptHeaderError(f"{path}: truncated entry {uid!r}")
            (stored_crc,) = struct.unpack_from("<I", data, payload_start + payload_len)
        except struct.error as exc:
            raise CorruptHeaderError(f"{path}: truncated entry table") from exc
        actual_crc = zlib.crc32(data[body_start : payload_start + payload_len])
        if actual_crc != stored_crc:
            raise ChecksumFailureError(f"{path}: checksum mismatch for entry {uid!r}")
        values = np.frombuffer(payload, dtype="<f4").reshape(rows, cols)
        entries.append(
            (
                uid,
                Spectrogram(
                    values=values,
                    frame_rate=frame_rate,
                    band_scale=scale,
                    config_fingerprint=fingerprint,
                ),
            )
        )
        pos = payload_start + payload_len + 4
    return FeatureArchive(
        entries=entries, band_scale=scale, config_fingerprint=fingerprint, version=version
    )


@dataclass
class CorpusManifest:
    """Utterance ids and their audio paths, in processing order."""

    records: list  # of (utterance_id, path)
    expected_sample_rate: int | None = None

    def __post_init__(self):
        ids = [uid for uid, _ in self.records]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate utterance ids in manifest")
        if any(not str(p).strip() for _, p in self.records):
            raise ValueError("empty path in manifest")

    def __len__(self) -> int:
        return len(self.records)


def read_manifest(path, expected_sample_rate: int | None = None) -> CorpusManifest:
    """Parse 'utterance_id path' lines; blank lines and #-comments ignored."""
    records = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(maxsplit=1)
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'id path'")
            records.append((parts[0], parts[1]))
    if not records:
        raise EmptyInputError(f"{path}: empty manifest")
    return CorpusManifest(records=records, expected_sample_rate=expected_sample_rate)
