// Minimal float-32 mono WAV writer; the core CLI reads this losslessly.

export function encodeWavFloat32(samples: Float32Array, sampleRate: number): Buffer {
  const payload = Buffer.from(samples.buffer, samples.byteOffset, samples.length * 4);
  const header = Buffer.alloc(44);
  header.write("RIFF", 0, "latin1");
  header.writeUInt32LE(36 + payload.length, 4);
  header.write("WAVE", 8, "latin1");
  header.write("fmt ", 12, "latin1");
  header.writeUInt32LE(16, 16);
  header.writeUInt16LE(3, 20); // IEEE float
  header.writeUInt16LE(1, 22); // mono
  header.writeUInt32LE(sampleRate, 24);
  header.writeUInt32LE(sampleRate * 4, 28);
  header.writeUInt16LE(4, 32);
  header.writeUInt16LE(32, 34);
  header.write("data", 36, "latin1");
  header.writeUInt32LE(payload.length, 40);
  return Buffer.concat([header, payload]);
}
