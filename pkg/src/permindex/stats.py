"""Brute-force guessing odds and storage overhead of an encoding."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codec import chunk_matrix
from .layout import compute_geometry
from .perm_rank import chunk_counts

# below this the linear probability is reported as underflow (None)
LINEAR_FLOOR = 1e-300


@dataclass(frozen=True)
class GuessReport:
    counts: np.ndarray
    log10_probability: float
    probability: float | None

    @property
    def chunk_probabilities(self) -> np.ndarray:
        return 1.0 / self.counts


@dataclass(frozen=True)
class ExpansionReport:
    O: int
    c: int
    Mx: int
    S: int
    ratio: float


def guess_probability(m: np.ndarray, x: int) -> GuessReport:
    """Chance of guessing every chunk's order at once, ``prod(1 / count_j)``."""
    counts = chunk_counts(chunk_matrix(np.asarray(m), x))
    log10p = -float(np.log10(counts.astype(np.float64)).sum())
    prob = 10.0 ** log10p if log10p >= np.log10(LINEAR_FLOOR) else None
    return GuessReport(counts=counts, log10_probability=log10p, probability=prob)


def expansion_report(M: int, N: int, x: int, w: int) -> ExpansionReport:
    g = compute_geometry(M, N, x, w)
    return ExpansionReport(O=g.O, c=g.c, Mx=g.Mx, S=g.S, ratio=(g.M + g.Mx) / g.M)
