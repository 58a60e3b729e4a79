/**
 * VGT1 raw tensor format: 4-byte magic "VGT1", then width, height, channels
 * as little-endian uint32, then row-major channel-interleaved uint8 payload.
 * This decoder must agree byte-for-byte with the pipeline-side reader; the
 * parity test drives both over the same files.
 */

import { readFileSync } from 'node:fs';

export interface DecodedTensor {
  width: number;
  height: number;
  channels: number;
  /** Row-major, channel-interleaved, length = width * height * channels. */
  pixels: Uint8Array;
}

const MAGIC = [0x56, 0x47, 0x54, 0x31]; // "VGT1"
const HEADER_LEN = 16;
const MAX_PIXELS = 2 ** 31;

export function decodeTensor(data: Uint8Array): DecodedTensor {
  if (data.length < 4) {
    throw new Error('truncated file');
  }
  if (!MAGIC.every((b, i) => data[i] === b)) {
    throw new Error('bad magic');
  }
  if (data.length < HEADER_LEN) {
    throw new Error('truncated file');
  }
  const view = new DataView(data.buffer, data.byteOffset, data.byteLength);
  const width = view.getUint32(4, true);
  const height = view.getUint32(8, true);
  const channels = view.getUint32(12, true);
  if (channels !== 1 && channels !== 3) {
    throw new Error(`bad channel count: ${channels}`);
  }
  const count = width * height * channels;
  if (count > MAX_PIXELS) {
    throw new Error('dimension overflow');
  }
  const payload = data.subarray(HEADER_LEN);
  if (payload.length < count) {
    throw new Error('truncated file');
  }
  if (payload.length > count) {
    throw new Error(`payload size mismatch: expected ${count}, got ${payload.length}`);
  }
  return { width, height, channels, pixels: payload.slice() };
}

export function encodeTensor(t: DecodedTensor): Uint8Array {
  const count = t.width * t.height * t.channels;
  if (t.pixels.length !== count) {
    throw new Error(`pixel count ${t.pixels.length} does not match ${count}`);
  }
  const out = new Uint8Array(HEADER_LEN + count);
  out.set(MAGIC, 0);
  const view = new DataView(out.buffer);
  view.setUint32(4, t.width, true);
  view.setUint32(8, t.height, true);
  view.setUint32(12, t.channels, true);
  out.set(t.pixels, HEADER_LEN);
  return out;
}

export function readTensorFile(path: string): DecodedTensor {
  return decodeTensor(readFileSync(path));
}
