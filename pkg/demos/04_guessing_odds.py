"""
Guessing odds and size overhead
===============================

Each chunk of ``x`` distinct values can be arranged ``x!`` ways, so guessing
all of them blindly gets harder fast. Larger chunks also mean fewer indices
to store.
"""

import numpy as np

from permindex import as_matrix, expansion_report, guess_probability

A = as_matrix([
    [17, 24, 1, 8, 15],
    [23, 5, 7, 14, 16],
    [4, 6, 13, 20, 22],
    [10, 12, 19, 21, 3],
    [11, 18, 25, 2, 9],
])

report = guess_probability(A, 5)
print("per-chunk p:", report.chunk_probabilities)
print(f"all chunks: {report.probability:.4g}")

# Repeated values shrink the number of arrangements.
flat = as_matrix(np.array([[1, 1, 2, 2, 3]] * 5))
print(f"with duplicates: {guess_probability(flat, 5).probability:.4g}")

# A full-size image underflows a float; the log stays usable.
img = np.random.default_rng(0).integers(0, 256, size=(1024, 1024), dtype=np.uint8)
big = guess_probability(img, 8)
print("1024x1024 at x=8: log10 p =", round(big.log10_probability), "linear:", big.probability)

# Storage overhead for a 252x320 image (divisible by every x) as the chunk
# width grows. From x = 6 an index no longer fits one byte, so c jumps to 2.
print(" x  c  Mx  ratio")
for x in range(2, 10):
    r = expansion_report(252, 320, x, 8)
    print(f"{x:2d} {r.c:2d} {r.Mx:3d}  {r.ratio:.3f}")
