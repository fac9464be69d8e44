// Parser for the fdlp feature archive format (see the core README):
//
//   magic "FDLP" | version u16 | band scale u8 | config fingerprint u64
//   | entry count u32
//   entry: id length u16 | id UTF-8 | rows u32 | cols u32 | frame rate u32
//          | rows*cols float32 LE (row-major) | crc32 u32

import { readFileSync } from "node:fs";

export const FORMAT_VERSION = 1;

export type BandScale = "bark" | "mel";

export interface BoundSpectrogram {
  /** Row-major log-energy values, bands x frames, 32-bit. */
  values: Float32Array;
  bands: number;
  frames: number;
  frameRate: number;
  bandScale: BandScale;
  configFingerprint: bigint;
}

export class ArchiveFormatError extends Error {}
export class ArchiveVersionError extends ArchiveFormatError {}
export class ArchiveChecksumError extends ArchiveFormatError {}

const SCALES: Record<number, BandScale> = { 0: "bark", 1: "mel" };

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

/** IEEE CRC-32, matching zlib.crc32. */
export function crc32(data: Uint8Array): number {
  let crc = 0xffffffff;
  for (let i = 0; i < data.length; i++) {
    crc = CRC_TABLE[(crc ^ data[i]) & 0xff] ^ (crc >>> 8);
  }
  return (crc ^ 0xffffffff) >>> 0;
}

export function parseArchive(data: Buffer): Map<string, BoundSpectrogram> {
  if (data.length < 19 || data.toString("latin1", 0, 4) !== "FDLP") {
    throw new ArchiveFormatError("bad magic: not an fdlp archive");
  }
  const version = data.readUInt16LE(4);
  if (version !== FORMAT_VERSION) {
    throw new ArchiveVersionError(
      `format version ${version}, expected ${FORMAT_VERSION}`,
    );
  }
  const scale = SCALES[data.readUInt8(6)];
  if (scale === undefined) {
    throw new ArchiveFormatError(`unknown band scale code ${data.readUInt8(6)}`);
  }
  const fingerprint = data.readBigUInt64LE(7);
  const count = data.readUInt32LE(15);

  const entries = new Map<string, BoundSpectrogram>();
  let pos = 19;
  for (let i = 0; i < count; i++) {
    if (pos + 2 > data.length) throw new ArchiveFormatError("truncated entry table");
    const idLength = data.readUInt16LE(pos);
    const bodyStart = pos + 2;
    const payloadStart = bodyStart + idLength + 12;
    if (payloadStart > data.length) throw new ArchiveFormatError("truncated entry header");
    const id = data.toString("utf-8", bodyStart, bodyStart + idLength);
    const rows = data.readUInt32LE(bodyStart + idLength);
    const cols = data.readUInt32LE(bodyStart + idLength + 4);
    const frameRate = data.readUInt32LE(bodyStart + idLength + 8);
    const payloadLength = rows * cols * 4;
    if (payloadStart + payloadLength + 4 > data.length) {
      throw new ArchiveFormatError(`truncated payload for entry "${id}"`);
    }
    const stored = data.readUInt32LE(payloadStart + payloadLength);
    const actual = crc32(data.subarray(bodyStart, payloadStart + payloadLength));
    if (stored !== actual) {
      throw new ArchiveChecksumError(`checksum mismatch for entry "${id}"`);
    }
    // copy out of the (pool-allocated, possibly unaligned) file buffer
    const payload = new Uint8Array(payloadLength);
    payload.set(data.subarray(payloadStart, payloadStart + payloadLength));
    entries.set(id, {
      values: new Float32Array(payload.buffer),
      bands: rows,
      frames: cols,
      frameRate,
      bandScale: scale,
      configFingerprint: fingerprint,
    });
    pos = payloadStart + payloadLength + 4;
  }
  return entries;
}

export function readArchiveFile(path: string): Map<string, BoundSpectrogram> {
  return parseArchive(readFileSync(path));
}
