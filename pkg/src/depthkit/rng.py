"""Seeded direction sampling shared by every randomized approximation.

All consumers draw from a sequential stream, so a larger budget with the
same seed evaluates a superset of the directions of a smaller budget.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np


def direction_stream(dim: int, seed: int) -> Iterator[np.ndarray]:
    """Yield unit vectors uniform on the sphere S^{dim-1}, deterministically."""
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    rng = np.random.default_rng(seed)
    while True:
        g = rng.standard_normal(dim)
        norm = np.linalg.norm(g)
        if norm > 1e-12:
            yield g / norm


def unit_directions(dim: int, count: int, seed: int) -> np.ndarray:
    """First ``count`` directions of the stream, as a (count, dim) array."""
    if count < 1:
        raise ValueError("direction count must be at least 1")
    stream = direction_stream(dim, seed)
    return np.array([next(stream) for _ in range(count)])
