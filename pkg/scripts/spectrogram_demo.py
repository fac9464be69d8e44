#!/usr/bin/env python3
"""Side-by-side FDLP and mel spectrograms of a WAV (or a synthetic phrase).

    python scripts/spectrogram_demo.py [--wav input.wav] --out-prefix demo
"""

import argparse

import numpy as np

from fdlp import (
    AudioSegment,
    FdlpConfig,
    emit_image,
    fdlp_spectrogram,
    mel_spectrogram,
    read_wav,
    spectrogram_to_csv,
)


def synthetic_phrase(sr=16000, duration=3.0, seed=0):
    """Tone glide + click train + noise burst; enough structure to look at."""
    rng = np.random.default_rng(seed)
    t = np.arange(int(duration * sr)) / sr
    glide = np.sin(2 * np.pi * (300 + 400 * t) * t) * (t < 1.2)
    clicks = np.zeros_like(t)
    clicks[:: sr // 3] = 2.0
    clicks *= (t >= 1.2) & (t < 2.0)
    burst = 0.3 * rng.normal(size=len(t)) * (t >= 2.0)
    return AudioSegment(samples=glide + clicks + burst, sample_rate=sr)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--wav", help="input file; synthesized if omitted")
    parser.add_argument("--out-prefix", default="demo")
    parser.add_argument("--lifter-b", type=int, default=100)
    args = parser.parse_args()

    x = read_wav(args.wav) if args.wav else synthetic_phrase()
    config = FdlpConfig(lifter_b=args.lifter_b)

    spec = fdlp_spectrogram(x, config)
    mel = mel_spectrogram(x)
    for name, s in (("fdlp", spec), ("mel", mel)):
        emit_image(s, f"{args.out_prefix}_{name}.pgm")
        spectrogram_to_csv(s, f"{args.out_prefix}_{name}.csv")
        print(f"{name}: {s.n_bands} bands x {s.n_frames} frames "
              f"-> {args.out_prefix}_{name}.pgm / .csv")


if __name__ == "__main__":
    main()
