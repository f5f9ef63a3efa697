"""Reversible matrix obfuscation by permutation indices.

Each run of ``x`` consecutive elements is replaced by a shuffled arrangement of
itself, and its rank among all arrangements is stored at passkey-chosen cells
of rows appended to the matrix.
"""
from .codec import as_matrix, chunk_matrix, decode, encode, permutation_indices
from .errors import (
    ConstraintError,
    DecodeError,
    FormatError,
    KeyFormatError,
    PermIndexError,
    UsageError,
)
from .layout import GridGeometry, compute_geometry, infer_original_rows
from .passkey import Passkey, derive_passkey, parse_passkey, serialize_passkey
from .perm_rank import (
    OrderingMode,
    arrangement_count,
    enumerate_arrangements,
    rank,
    unrank,
)
from .stats import expansion_report, guess_probability

__version__ = "0.1.0"
