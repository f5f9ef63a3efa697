"""
Obscuring a grayscale image
===========================

An 8-bit image encodes to another 8-bit image with a few extra rows, so the
result can still be opened by any PGM viewer. The image here is synthetic;
pass a path to use your own PGM.
"""

import sys
import tempfile
import time
from pathlib import Path

import numpy as np

from permindex import decode, derive_passkey, encode
from permindex.matrix_io import read_pgm, write_pgm

if len(sys.argv) > 1:
    image = read_pgm(Path(sys.argv[1]).read_bytes())
else:
    yy, xx = np.mgrid[0:256, 0:256]
    image = ((xx + yy) // 2 + 40 * np.sin(xx / 17.0)).clip(0, 255).astype(np.uint8)

key = derive_passkey("holiday photos", x=8)

start = time.perf_counter()
compound = encode(image, key)
restored = decode(compound, key)
print(f"{image.shape} -> {compound.shape} in {time.perf_counter() - start:.3f} s")
assert np.array_equal(restored, image)

out = Path(tempfile.gettempdir())
(out / "original.pgm").write_bytes(write_pgm(image))
(out / "obscured.pgm").write_bytes(write_pgm(compound))
print("wrote", out / "original.pgm", "and", out / "obscured.pgm")

# Chunks keep their values, so local brightness survives; only the order
# inside each run of 8 pixels changes.
print("mean |difference| per pixel:",
      np.abs(compound[: image.shape[0]].astype(int) - image).mean())

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(8, 4))
    axes[0].imshow(image, cmap="gray", vmin=0, vmax=255)
    axes[0].set_title("original")
    axes[1].imshow(compound, cmap="gray", vmin=0, vmax=255)
    axes[1].set_title("compound")
    for ax in axes:
        ax.axis("off")
    fig.savefig(out / "obscured.png", dpi=100)
    print("wrote", out / "obscured.png")
