"""Shared secret and the deterministic randomness derived from it.

Everything here is reproducible bit for bit on any platform: FNV-1a 64 for
seed derivation, SplitMix64 as the generator, and a modulo-draw Fisher-Yates
shuffle. None of it is cryptographic; the codec obfuscates, it does not
encrypt.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError, KeyFormatError, UsageError
from .layout import check_params
from .perm_rank import OrderingMode

MASK64 = (1 << 64) - 1
FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

KEY_MAGIC = b"PDXK"
KEY_VERSION = 1
_KEY_STRUCT = struct.Struct("<4sBBBBIQQ")
KEY_SIZE = _KEY_STRUCT.size


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & MASK64
    return h


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix_next(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state; returns ``(new_state, output)``."""
    state = (state + GOLDEN_GAMMA) & MASK64
    return state, _mix(state)


def splitmix_stream(state: int, n: int) -> tuple[int, np.ndarray]:
    """The next ``n`` outputs at once, as uint64. Same values as ``n`` calls of :func:`splitmix_next`."""
    steps = np.arange(1, n + 1, dtype=np.uint64)
    z = np.uint64(state) + steps * np.uint64(GOLDEN_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z ^= z >> np.uint64(31)
    return (state + n * GOLDEN_GAMMA) & MASK64, z


def fisher_yates(n: int, state: int) -> tuple[int, list[int]]:
    """Shuffle ``range(n)``: for i = n-1..1 swap i with ``next() % (i + 1)``."""
    if n < 1:
        raise ConstraintError("fisher_yates needs n >= 1")
    state, draws = splitmix_stream(state, n - 1)
    bounds = np.arange(n, 1, -1, dtype=np.uint64)
    targets = (draws % bounds).tolist()
    perm = list(range(n))
    for i, j in zip(range(n - 1, 0, -1), targets):
        perm[i], perm[j] = perm[j], perm[i]
    return state, perm


def shuffle_rows(chunks: np.ndarray, state: int) -> tuple[int, np.ndarray]:
    """Fisher-Yates every row of ``chunks`` from one stream, rows in order.

    Row ``j`` consumes draws ``j*(x-1)`` .. ``j*(x-1) + x-2``, exactly as a
    loop of :func:`fisher_yates` calls would.
    """
    J, x = chunks.shape
    state, draws = splitmix_stream(state, J * (x - 1))
    draws = draws.reshape(J, x - 1)
    out = chunks.copy()
    rows = np.arange(J)
    for t, i in enumerate(range(x - 1, 0, -1)):
        j = (draws[:, t] % np.uint64(i + 1)).astype(np.intp)
        a = out[:, i].copy()
        out[:, i] = out[rows, j]
        out[rows, j] = a
    return state, out


def placement_permutation(placement_seed: int, S: int) -> np.ndarray:
    """Slot of the appended region that receives global rank cell ``k``."""
    _, perm = fisher_yates(S, placement_seed)
    return np.asarray(perm, dtype=np.intp)


@dataclass(frozen=True)
class Passkey:
    x: int
    w: int = 8
    ordering: OrderingMode = OrderingMode.REVERSE_LEX
    filler: int = 0
    placement_seed: int = 0
    shuffle_seed: int = 0
    version: int = KEY_VERSION

    def __post_init__(self):
        check_params(self.x, self.w)
        object.__setattr__(self, "ordering", OrderingMode.parse(self.ordering))
        if not 0 <= self.filler < (1 << self.w):
            raise ConstraintError(f"filler {self.filler} does not fit in {self.w} bits")
        for name in ("placement_seed", "shuffle_seed"):
            if not 0 <= getattr(self, name) <= MASK64:
                raise ConstraintError(f"{name} must be a 64-bit unsigned integer")
        if self.version != KEY_VERSION:
            raise ConstraintError(f"unsupported key version {self.version}")


def derive_passkey(
    secret: str,
    x: int,
    w: int = 8,
    ordering: OrderingMode = OrderingMode.REVERSE_LEX,
    filler: int = 0,
) -> Passkey:
    if not secret:
        raise UsageError("secret must be non-empty")
    raw = secret.encode("utf-8")
    return Passkey(
        x=x,
        w=w,
        ordering=ordering,
        filler=filler,
        placement_seed=fnv1a64(raw + b"\x01"),
        shuffle_seed=fnv1a64(raw + b"\x02"),
    )


def serialize_passkey(k: Passkey) -> bytes:
    return _KEY_STRUCT.pack(
        KEY_MAGIC, k.version, k.ordering.value, k.x, k.w,
        k.filler, k.placement_seed, k.shuffle_seed,
    )


def parse_passkey(data: bytes) -> Passkey:
    if len(data) != KEY_SIZE:
        raise KeyFormatError(f"key file must be {KEY_SIZE} bytes, got {len(data)}")
    magic, version, ordering, x, w, filler, pseed, sseed = _KEY_STRUCT.unpack(data)
    if magic != KEY_MAGIC:
        raise KeyFormatError(f"bad key magic {magic!r}")
    if version != KEY_VERSION:
        raise KeyFormatError(f"unsupported key version {version}")
    if ordering not in (0, 1):
        raise KeyFormatError(f"bad ordering byte {ordering}")
    try:
        return Passkey(
            x=x, w=w, ordering=OrderingMode(ordering), filler=filler,
            placement_seed=pseed, shuffle_seed=sseed, version=version,
        )
    except ConstraintError as exc:
        raise KeyFormatError(f"invalid key field: {exc}") from exc
