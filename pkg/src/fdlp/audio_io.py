"""WAV reading and writing. Mono PCM-16 or float-32 only; no resampling."""

import struct

import numpy as np

from .dsp import AudioSegment
from .errors import CorruptHeaderError, UnsupportedFormatError

_FMT_PCM = 1
_FMT_FLOAT = 3
_FMT_EXTENSIBLE = 0xFFFE


def read_wav(path) -> AudioSegment:
    """Read a mono WAV file, normalizing samples into [-1, 1].

    16-bit PCM divides by 32768 (full scale maps to +-32767/32768);
    32-bit float passes through. Anything else is rejected.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise CorruptHeaderError(f"{path}: not a RIFF/WAVE file")

    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        cid, size = data[pos : pos + 4], struct.unpack_from("<I", data, pos + 4)[0]
        body = data[pos + 8 : pos + 8 + size]
        if len(body) < size:
            raise CorruptHeaderError(f"{path}: truncated {cid.decode(errors='replace')} chunk")
        if cid == b"fmt ":
            if size < 16:
                raise CorruptHeaderError(f"{path}: fmt chunk too short")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif cid == b"data":
            payload = body
        pos += 8 + size + (size & 1)

    if fmt is None or payload is None:
        raise CorruptHeaderError(f"{path}: missing fmt or data chunk")
    audio_format, channels, sample_rate, _, _, bits = fmt
    if audio_format == _FMT_EXTENSIBLE:
        raise UnsupportedFormatError(f"{path}: extensible WAV not supported")
    if channels != 1:
        raise UnsupportedFormatError(f"{path}: {channels} channels, expected mono")
    if audio_format == _FMT_PCM and bits == 16:
        raw = np.frombuffer(payload[: len(payload) // 2 * 2], dtype="<i2")
        samples = raw.astype(np.float64) / 32768.0
    elif audio_format == _FMT_FLOAT and bits == 32:
        raw = np.frombuffer(payload[: len(payload) // 4 * 4], dtype="<f4")
        samples = raw.astype(np.float64)
    else:
        raise UnsupportedFormatError(
            f"{path}: format {audio_format} at {bits} bits not supported"
        )
    return AudioSegment(samples=samples, sample_rate=sample_rate)


def write_wav(path, segment: AudioSegment, encoding: str = "pcm16") -> None:
    """Write a mono WAV file ('pcm16' or 'float32')."""
    if encoding == "pcm16":
        fmt_code, bits = _FMT_PCM, 16
        clipped = np.clip(segment.samples, -1.0, 32767.0 / 32768.0)
        payload = (np.round(clipped * 32768.0)).astype("<i2").tobytes()
    elif encoding == "float32":
        fmt_code, bits = _FMT_FLOAT, 32
        payload = segment.samples.astype("<f4").tobytes()
    else:
        raise ValueError(f"unknown encoding {encoding!r}")
    sr = segment.sample_rate
    block = bits // 8
    header = b"RIFF" + struct.pack("<I", 36 + len(payload)) + b"WAVE"
    header += b"fmt " + struct.pack("<IHHIIHH", 16, fmt_code, 1, sr, sr * block, block, bits)
    header += b"data" + struct.pack("<I", len(payload))
    with open(path, "wb") as fh:
        fh.write(header + payload)
