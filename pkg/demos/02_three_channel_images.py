"""Rendering a pulse as a three-channel adjacency image.

One model input stacks three matrices over the same segment: the signal's
visibility graph (red), the inverted signal's (green), and the inverted
signal's slope-weighted graph (blue). The image is invariant to positive
affine transforms of the signal, which is the point of the encoding.
"""

import numpy as np

from pulsevg import (
    build_channel_stack,
    pulse_train,
    read_tensor,
    stack_to_image,
    write_png,
    write_tensor,
)

segment = pulse_train(duration_s=1.0, sampling_rate=50.0, bpm=72.0).samples
stack = build_channel_stack(segment, rate=50.0)
print("channel stack over", stack.n, "samples")
print("  ch1 (signal VG)          edges:", stack.ch1.edge_count())
print("  ch2 (inverted VG)        edges:", stack.ch2.edge_count())
print("  ch3 (slope weights)      max:", f"{stack.ch3.weights.max():.2f}")

img = stack_to_image(stack)
print("native image:", img.width, "x", img.height, "x", img.channels)

# amplitude scaling, offset, and time dilation leave every pixel unchanged
doubled = stack_to_image(build_channel_stack(2.0 * segment + 10.0, rate=25.0))
print("affine-transformed copy identical:", img == doubled)

# fixed-size models want 224x224; nearest-neighbor upscale keeps blocks crisp
big = stack_to_image(stack, upscale=224)
print("upscaled:", big.width, "x", big.height)

write_tensor(img, "demo_pulse.vgt")
write_png(big, "demo_pulse.png")
roundtrip = read_tensor("demo_pulse.vgt")
print("wrote demo_pulse.vgt (round-trips bit-exact:", (roundtrip == img), ")")
print("wrote demo_pulse.png for eyeballing")
