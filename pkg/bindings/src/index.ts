// In-memory feature extraction and archive loading over the fdlp core.
//
// The binding never reimplements any math: extract() round-trips through
// the core CLI (temp WAV in, archive out), and loadArchive() parses the
// core's documented binary format, so numbers have a single source of
// truth at 32-bit precision.

import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { BoundSpectrogram, readArchiveFile } from "./archive.js";
import { runCli } from "./cli.js";
import { encodeWavFloat32 } from "./wav.js";

export {
  ArchiveChecksumError,
  ArchiveFormatError,
  ArchiveVersionError,
  BandScale,
  BoundSpectrogram,
  crc32,
  parseArchive,
} from "./archive.js";
export { cliCommand } from "./cli.js";
export { encodeWavFloat32 } from "./wav.js";

export interface ExtractOptions {
  feature?: "fdlp" | "mel";
  window_seconds?: number;
  overlap_fraction?: number;
  model_order?: number;
  n_bands?: number;
  frame_rate?: number;
  lifter_a?: number;
  lifter_b?: number;
  envelope_floor?: number;
}

const OPTION_FLAGS: Record<string, string> = {
  feature: "--feature",
  window_seconds: "--window-seconds",
  overlap_fraction: "--overlap",
  model_order: "--order",
  n_bands: "--bands",
  frame_rate: "--frame-rate",
  lifter_a: "--lifter-a",
  lifter_b: "--lifter-b",
  envelope_floor: "--envelope-floor",
};

function optionArgs(options: ExtractOptions): string[] {
  const args: string[] = [];
  for (const [key, value] of Object.entries(options)) {
    const flag = OPTION_FLAGS[key];
    if (flag === undefined) {
      throw new Error(`unknown option "${key}"`);
    }
    if (value !== undefined) {
      args.push(flag, String(value));
    }
  }
  return args;
}

function toFloat32(samples: Float32Array | Float64Array | number[]): Float32Array {
  const values = samples instanceof Float32Array ? samples : Float32Array.from(samples);
  for (let i = 0; i < values.length; i++) {
    if (!Number.isFinite(values[i])) {
      throw new Error(`sample ${i} is not finite`);
    }
  }
  return values;
}

/**
 * Extract a spectrogram from in-memory samples.
 *
 * Samples are written as a float-32 WAV (the binding's precision boundary,
 * matching the archive payload precision) and fed through the core CLI.
 */
export function extract(
  samples: Float32Array | Float64Array | number[],
  sampleRate: number,
  options: ExtractOptions = {},
): BoundSpectrogram {
  if (!Number.isInteger(sampleRate) || sampleRate <= 0) {
    throw new Error(`sample rate must be a positive integer, got ${sampleRate}`);
  }
  const values = toFloat32(samples);
  if (values.length === 0) {
    throw new Error("samples must be non-empty");
  }
  const args = optionArgs(options);

  const workDir = mkdtempSync(join(tmpdir(), "fdlp-bind-"));
  try {
    const wavPath = join(workDir, "utt.wav");
    const manifestPath = join(workDir, "manifest.txt");
    const archivePath = join(workDir, "out.fdlp");
    writeFileSync(wavPath, encodeWavFloat32(values, sampleRate));
    writeFileSync(manifestPath, `utt ${wavPath}\n`);
    runCli([
      "extract",
      "--manifest",
      manifestPath,
      "--out",
      archivePath,
      ...args,
    ]);
    const entry = readArchiveFile(archivePath).get("utt");
    if (entry === undefined) {
      throw new Error("extraction produced no entry");
    }
    return entry;
  } finally {
    rmSync(workDir, { recursive: true, force: true });
  }
}

/** Load every entry of a feature archive, keyed by utterance id. */
export function loadArchive(path: string): Map<string, BoundSpectrogram> {
  return readArchiveFile(path);
}

/** Version string of the core library this binding drives. */
export function version(): string {
  return runCli(["--version"]).trim();
}
