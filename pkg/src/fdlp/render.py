"""Spectrogram exports: PGM images and CSV dumps."""

import numpy as np

from .errors import EmptyInputError
from .spectrogram import Spectrogram


def emit_image(spec: Spectrogram, path) -> None:
    """Write a binary PGM, one pixel per cell, min-max normalized.

    Time runs left to right, low bands at the bottom. A constant matrix
    maps to uniform mid-gray (128).
    """
    if spec.values.size == 0:
        raise EmptyInputError("cannot render an empty spectrogram")
    values = np.asarray(spec.values, dtype=np.float64)
    lo, hi = values.min(), values.max()
    if hi > lo:
        pixels = np.round(255.0 * (values - lo) / (hi - lo)).astype(np.uint8)
    else:
        pixels = np.full(values.shape, 128, dtype=np.uint8)
    pixels = pixels[::-1, :]  # row 0 of the image is the highest band
    height, width = pixels.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode())
        fh.write(pixels.tobytes())


def spectrogram_to_csv(spec: Spectrogram, path) -> None:
    """One row per frame, band values at 6 significant digits."""
    with open(path, "w") as fh:
        fh.write(f"# bands={spec.n_bands} frames={spec.n_frames} "
                 f"frame_rate={spec.frame_rate} scale={spec.band_scale}\n")
        for frame in spec.values.T:
            fh.write(",".join(f"{v:.6g}" for v in frame) + "\n")
