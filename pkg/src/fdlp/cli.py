"""Batch extraction CLI: extract / dump / inspect.

Exit codes: 0 all good, 1 finished with per-utterance failures, 2 fatal.
Set FDLP_LOG=debug|info|warning to control verbosity.
"""

import argparse
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import __version__
from .archive import FeatureArchive, read_archive, read_manifest, write_archive
from .audio_io import read_wav
from .errors import AllFailedError, FdlpError
from .filterbank import bark_cochlear_filterbank, filterbank_to_csv, mel_triangular_filterbank
from .render import emit_image, spectrogram_to_csv
from .spectrogram import FdlpConfig, fdlp_spectrogram, mel_spectrogram

log = logging.getLogger(__name__)

# config-file keys / flag names shared by `extract`
_CONFIG_KEYS = {
    "feature": str,
    "window_seconds": float,
    "overlap": float,
    "order": int,
    "bands": int,
    "frame_rate": int,
    "lifter_a": int,
    "lifter_b": int,
    "parallelism": int,
    "envelope_floor": float,
}
_DEFAULTS = {
    "feature": "fdlp",
    "window_seconds": 1.5,
    "overlap": 0.25,
    "order": 150,
    "bands": 80,
    "frame_rate": 100,
    "lifter_a": 0,
    "lifter_b": 100,
    "parallelism": 1,
    "envelope_floor": 1e-10,
}


@dataclass
class UtteranceReport:
    utterance_id: str
    ok: bool
    seconds: float
    error: str = ""


def _extract_one(job):
    uid, path, feature, config, expect_sr = job
    started = time.perf_counter()
    try:
        segment = read_wav(path)
        if expect_sr is not None and segment.sample_rate != expect_sr:
            raise FdlpError(
                f"sample rate {segment.sample_rate}, manifest expects {expect_sr}"
            )
        if feature == "fdlp":
            spec = fdlp_spectrogram(segment, config)
        else:
            spec = mel_spectrogram(
                segment, config.n_bands, config.frame_rate, config.envelope_floor
            )
        return UtteranceReport(uid, True, time.perf_counter() - started), spec
    except (FdlpError, OSError, ValueError) as exc:
        return UtteranceReport(uid, False, time.perf_counter() - started, str(exc)), None


def run_extraction(manifest, config: FdlpConfig, feature_type: str, parallelism: int = 1):
    """Extract features for every manifest record.

    Utterances fan out over a process pool; the archive keeps manifest
    order regardless of completion order, so output bytes do not depend on
    the parallelism degree. Failed utterances are reported, not fatal,
    unless nothing succeeds.
    """
    if feature_type not in ("fdlp", "mel"):
        raise ValueError(f"unknown feature type {feature_type!r}")
    jobs = [
        (uid, path, feature_type, config, manifest.expected_sample_rate)
        for uid, path in manifest.records
    ]
    if parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_extract_one, jobs))
    else:
        results = [_extract_one(job) for job in jobs]

    reports = [rep for rep, _ in results]
    entries = [(rep.utterance_id, spec) for rep, spec in results if spec is not None]
    if not entries:
        raise AllFailedError("no utterance could be processed")
    archive = FeatureArchive(
        entries=entries,
        band_scale=entries[0][1].band_scale,
        config_fingerprint=entries[0][1].config_fingerprint,
    )
    return archive, reports


def _load_config_file(path) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, raw = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _CONFIG_KEYS[key](raw.strip())
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fdlp", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="extract features for a manifest of WAVs")
    ex.add_argument("--manifest", required=True)
    ex.add_argument("--out", required=True)
    ex.add_argument("--config", help="key=value config file; flags override it")
    ex.add_argument("--feature", choices=["fdlp", "mel"])
    ex.add_argument("--window-seconds", type=float, dest="window_seconds")
    ex.add_argument("--overlap", type=float)
    ex.add_argument("--order", type=int)
    ex.add_argument("--bands", type=int)
    ex.add_argument("--frame-rate", type=int, dest="frame_rate")
    ex.add_argument("--lifter-a", type=int, dest="lifter_a")
    ex.add_argument("--lifter-b", type=int, dest="lifter_b")
    ex.add_argument("--envelope-floor", type=float, dest="envelope_floor")
    ex.add_argument("--parallelism", type=int)
    ex.add_argument("--expect-sample-rate", type=int, dest="expect_sample_rate")
    ex.add_argument("--dump-filterbank", dest="dump_filterbank", metavar="CSV")

    dp = sub.add_parser("dump", help="export one archive entry as CSV or image")
    dp.add_argument("--archive", required=True)
    dp.add_argument("--id", required=True, dest="utterance_id")
    group = dp.add_mutually_exclusive_group(required=True)
    group.add_argument("--csv")
    group.add_argument("--image")

    ins = sub.add_parser("inspect", help="print archive header and entry listing")
    ins.add_argument("--archive", required=True)
    return parser


def _cmd_extract(args) -> int:
    settings = dict(_DEFAULTS)
    if args.config:
        settings.update(_load_config_file(args.config))
    for key in _CONFIG_KEYS:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            settings[key] = flag_value

    config = FdlpConfig(
        window_seconds=settings["window_seconds"],
        overlap_fraction=settings["overlap"],
        model_order=settings["order"],
        n_bands=settings["bands"],
        frame_rate=settings["frame_rate"],
        lifter_a=settings["lifter_a"],
        lifter_b=settings["lifter_b"],
        envelope_floor=settings["envelope_floor"],
    )
    manifest = read_manifest(args.manifest, args.expect_sample_rate)
    archive, reports = run_extraction(
        manifest, config, settings["feature"], settings["parallelism"]
    )
    write_archive(archive, args.out)

    if args.dump_filterbank:
        sr = read_wav(dict(manifest.records)[archive.entries[0][0]]).sample_rate
        if settings["feature"] == "fdlp":
            n_bins = int(round(config.window_seconds * sr))
            bank = bark_cochlear_filterbank(config.n_bands, n_bins, sr)
        else:
            win = int(round(0.020 * sr))
            nfft = 1 << max(win - 1, 1).bit_length()
            bank = mel_triangular_filterbank(config.n_bands, nfft // 2 + 1, sr)
        filterbank_to_csv(bank, args.dump_filterbank)

    failures = 0
    for rep in reports:
        status = "ok" if rep.ok else f"FAILED ({rep.error})"
        print(f"{rep.utterance_id}\t{rep.seconds:.3f}s\t{status}")
        failures += not rep.ok
    print(f"# {len(reports) - failures}/{len(reports)} utterances -> {args.out}")
    return 1 if failures else 0


def _cmd_dump(args) -> int:
    archive = read_archive(args.archive)
    spec = archive.get(args.utterance_id)
    if args.csv:
        spectrogram_to_csv(spec, args.csv)
    else:
        emit_image(spec, args.image)
    return 0


def _cmd_inspect(args) -> int:
    archive = read_archive(args.archive)
    print(
        f"version={archive.version} scale={archive.band_scale} "
        f"fingerprint={archive.config_fingerprint:016x} entries={len(archive)}"
    )
    for uid, spec in archive.entries:
        print(f"{uid}\t{spec.n_bands}x{spec.n_frames}\t{spec.frame_rate} Hz")
    return 0


def main(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("FDLP_LOG", "warning").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "extract":
            return _cmd_extract(args)
        if args.command == "dump":
            return _cmd_dump(args)
        return _cmd_inspect(args)
    except (FdlpError, OSError, ValueError, KeyError) as exc:
        log.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
