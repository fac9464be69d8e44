#!/usr/bin/env python3
"""Time the batch extractor on synthetic audio.

    python scripts/benchmark_extraction.py --minutes 2 --parallelism 4
"""

import argparse
import tempfile
import time
from pathlib import Path

import numpy as np

from fdlp import AudioSegment, FdlpConfig, write_wav
from fdlp.archive import read_manifest
from fdlp.cli import run_extraction


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--minutes", type=float, default=1.0)
    parser.add_argument("--utterance-seconds", type=float, default=10.0)
    parser.add_argument("--parallelism", type=int, default=1)
    parser.add_argument("--feature", choices=["fdlp", "mel"], default="fdlp")
    args = parser.parse_args()

    sr = 16000
    rng = np.random.default_rng(0)
    n_utts = max(1, int(args.minutes * 60 / args.utterance_seconds))
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        lines = []
        for i in range(n_utts):
            wav = tmp / f"u{i}.wav"
            samples = 0.2 * rng.normal(size=int(args.utterance_seconds * sr))
            write_wav(wav, AudioSegment(samples=samples, sample_rate=sr), "float32")
            lines.append(f"u{i} {wav}\n")
        manifest_path = tmp / "manifest.txt"
        manifest_path.write_text("".join(lines))

        started = time.perf_counter()
        archive, reports = run_extraction(
            read_manifest(manifest_path), FdlpConfig(), args.feature, args.parallelism
        )
        elapsed = time.perf_counter() - started

    audio_seconds = n_utts * args.utterance_seconds
    print(
        f"{args.feature}: {audio_seconds:.0f} s of audio, {n_utts} utterances, "
        f"parallelism {args.parallelism}: {elapsed:.2f} s "
        f"({audio_seconds / elapsed:.1f}x real time)"
    )


if __name__ == "__main__":
    main()
