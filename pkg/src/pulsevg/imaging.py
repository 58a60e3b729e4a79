"""Adjacency matrices as images: three-channel stacks, VGT1 tensors, PNG.

The three channels of a model input are the binary visibility adjacency of
the signal (red), the binary adjacency of the inverted signal (green), and
the slope-weighted adjacency of the inverted signal (blue). Binary entries
map to 0/255; slope weights are max-normalized per matrix so the rendered
image is invariant to positive affine transforms of the source signal.

VGT1 is the raw on-disk tensor contract: 4-byte magic ``VGT1``, then width,
height, channels as little-endian uint32, then row-major channel-interleaved
uint8 payload. Bit-exact round-trips are guaranteed and tested.
"""

import struct
from dataclasses import dataclass

import numpy as np
from numba import njit

from .series import TimeSeries, invert_series
from .vg import AdjacencyMatrix, BINARY, build_vg_fast, build_vg_with_weights

MAGIC = b"VGT1"
_HEADER = struct.Struct("<III")
_MAX_DIM = 2**32 - 1
_MAX_PIXELS = 2**31  # refuse absurd allocations when reading


@dataclass(frozen=True, eq=False)
class ChannelStack:
    """Three equally sized adjacency matrices forming one model input."""

    ch1: AdjacencyMatrix  # binary VG of the signal
    ch2: AdjacencyMatrix  # binary VG of the inverted signal
    ch3: AdjacencyMatrix  # slope-weighted VG of the inverted signal

    def __post_init__(self):
        n = self.ch1.n
        if self.ch2.n != n or self.ch3.n != n:
            raise ValueError("channel matrices must share one size")
        if self.ch1.kind != BINARY or self.ch2.kind != BINARY:
            raise ValueError("ch1 and ch2 must be binary")
        if self.ch3.kind == BINARY:
            raise ValueError("ch3 must be slope-weighted")

    @property
    def n(self) -> int:
        return self.ch1.n


@dataclass(frozen=True, eq=False)
class ImageTensor:
    """8-bit image: row-major, channel-interleaved, 1 or 3 channels."""

    pixels: np.ndarray  # shape (height, width, channels), uint8

    def __post_init__(self):
        px = np.ascontiguousarray(self.pixels, dtype=np.uint8)
        if px.ndim == 2:
            px = px[:, :, None]
        if px.ndim != 3 or px.shape[2] not in (1, 3):
            raise ValueError(f"pixels must be (h, w, 1|3), got shape {px.shape}")
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def channels(self) -> int:
        return self.pixels.shape[2]

    def __eq__(self, other):
        if not isinstance(other, ImageTensor):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and np.array_equal(
            self.pixels, other.pixels
        )


def build_channel_stack(segment, rate: float) -> ChannelStack:
    """Build the three-channel adjacency stack for one segment.

    ``segment`` may be a PulseSegment, TimeSeries, or plain sample array of
    length >= 2. All graphs use the fast constructor; the slope-weighted
    channel shares the inverted signal's edge set by construction.
    """
    samples = np.asarray(getattr(segment, "samples", segment), dtype=np.float64)
    if samples.size < 2:
        raise ValueError(f"segment must have at least 2 samples, got {samples.size}")
    series = TimeSeries(samples, rate)
    inverted = invert_series(series)
    ch1 = build_vg_fast(series)
    ch2, ch3 = build_vg_with_weights(inverted)
    return ChannelStack(ch1, ch2, ch3)


@njit(cache=True)
def _render_rgb_kernel(a1, a2, w3, top, out):  # pragma: no cover - via stack_to_image
    n = a1.shape[0]
    for i in range(n):
        for j in range(n):
            out[i, j, 0] = 255 if a1[i, j] else 0
            out[i, j, 1] = 255 if a2[i, j] else 0
            if top > 0:
                out[i, j, 2] = np.uint8(np.floor(w3[i, j] / top * 255.0 + 0.5))
            else:
                out[i, j, 2] = 0


def _quantize_weights(w: np.ndarray) -> np.ndarray:
    """Max-normalize to [0, 255] with round-half-up; all-zero stays zero."""
    top = w.max()
    if top <= 0:
        return np.zeros(w.shape, dtype=np.uint8)
    return np.floor(w / top * 255.0 + 0.5).astype(np.uint8)


def _upscale_nearest(pixels: np.ndarray, side: int) -> np.ndarray:
    n = pixels.shape[0]
    src = (np.arange(side, dtype=np.int64) * n) // side
    return pixels[src][:, src]


def stack_to_image(stack: ChannelStack, upscale: int | None = None) -> ImageTensor:
    """Render a channel stack as an RGB image tensor.

    ch1 -> red, ch2 -> green, ch3 -> blue. Binary channels map 1 to 255;
    the slope-weighted channel is max-normalized per matrix to [0, 255]
    with round-half-up (an all-zero matrix stays zero). ``upscale``
    enlarges to upscale x upscale with nearest-neighbor sampling
    (destination pixel (p, q) copies source (p*n//upscale, q*n//upscale)).
    """
    n = stack.n
    rgb = np.empty((n, n, 3), dtype=np.uint8)
    _render_rgb_kernel(
        stack.ch1.weights, stack.ch2.weights, stack.ch3.weights,
        float(stack.ch3.weights.max()), rgb,
    )
    if upscale is not None:
        if upscale < n:
            raise ValueError("downscaling not supported")
        rgb = _upscale_nearest(rgb, upscale)
    return ImageTensor(rgb)


def matrix_to_image(adjacency: AdjacencyMatrix, upscale: int | None = None) -> ImageTensor:
    """Render one adjacency matrix as a single-channel image.

    Binary matrices become black-and-white (0/255), weighted ones grayscale
    via per-matrix max normalization.
    """
    if adjacency.kind == BINARY:
        plane = adjacency.weights.astype(np.uint8) * 255
    else:
        plane = _quantize_weights(adjacency.weights)
    if upscale is not None:
        if upscale < adjacency.n:
            raise ValueError("downscaling not supported")
        plane = _upscale_nearest(plane, upscale)
    return ImageTensor(plane[:, :, None])


def tensor_to_bytes(img: ImageTensor) -> bytes:
    if img.width > _MAX_DIM or img.height > _MAX_DIM:
        raise ValueError("dimension overflow")
    return MAGIC + _HEADER.pack(img.width, img.height, img.channels) + img.pixels.tobytes()


def tensor_from_bytes(data: bytes) -> ImageTensor:
    if len(data) < 4 or data[:4] != MAGIC:
        if len(data) >= 4:
            raise ValueError("bad magic")
        raise ValueError("truncated file")
    if len(data) < 4 + _HEADER.size:
        raise ValueError("truncated file")
    width, height, channels = _HEADER.unpack_from(data, 4)
    if channels not in (1, 3):
        raise ValueError(f"bad channel count: {channels}")
    count = width * height * channels
    if count > _MAX_PIXELS:
        raise ValueError("dimension overflow")
    payload = data[4 + _HEADER.size:]
    if len(payload) < count:
        raise ValueError("truncated file")
    if len(payload) > count:
        raise ValueError(f"payload size mismatch: expected {count}, got {len(payload)}")
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, channels)
    return ImageTensor(pixels)


def write_tensor(img: ImageTensor, path) -> None:
    """Write an image tensor in the VGT1 raw format."""
    with open(path, "wb") as f:
        f.write(tensor_to_bytes(img))


def read_tensor(path) -> ImageTensor:
    """Read a VGT1 tensor; the round-trip with write_tensor is bit-exact."""
    with open(path, "rb") as f:
        return tensor_from_bytes(f.read())


def write_png(img: ImageTensor, path) -> None:
    """Export as PNG for human inspection; VGT1 remains the data contract."""
    from PIL import Image

    if img.channels == 1:
        Image.fromarray(img.pixels[:, :, 0], mode="L").save(path)
    else:
        Image.fromarray(img.pixels, mode="RGB").save(path)
