"""
Encoding and decoding a matrix
==============================

The 5x5 magic square is split into chunks of five, every chunk is shuffled,
and the five indices are hidden in one extra row. Decoding needs only the
key.
"""

import numpy as np

from permindex import as_matrix, compute_geometry, decode, derive_passkey, encode
from permindex.codec import extract_ranks, permutation_indices

A = as_matrix([
    [17, 24, 1, 8, 15],
    [23, 5, 7, 14, 16],
    [4, 6, 13, 20, 22],
    [10, 12, 19, 21, 3],
    [11, 18, 25, 2, 9],
])

key = derive_passkey("magic square", x=5)
geom = compute_geometry(*A.shape, key.x, key.w)
print(geom)

# Indices of every chunk before anything is shuffled.
print("indices:", permutation_indices(A, key.x, key.ordering))

compound = encode(A, key)
print(compound)

# The last row stores rank - 1, scattered by the key.
print("recovered indices:", extract_ranks(compound, key))

restored = decode(compound, key)
assert np.array_equal(restored, A)
print("decoded matrix equals the original")

# Chunks need not be whole rows. A 3x4 matrix with x = 2 gives six chunks,
# two appended rows and two filler cells.
B = as_matrix(np.arange(12).reshape(3, 4))
key2 = derive_passkey("three by four", x=2, filler=255)
print(encode(B, key2))
