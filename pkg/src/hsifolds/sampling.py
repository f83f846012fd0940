"""Deterministic sampling helpers shared by the split generators."""

from __future__ import annotations

from typing import Sequence, TypeVar

import numpy as np

T = TypeVar("T")


def sample_without_replacement(pool: Sequence[T], n: int, rng: np.random.Generator) -> list[T]:
    """Draw n items uniformly without replacement via partial Fisher-Yates.

    The draw depends only on the order of ``pool`` and the generator state,
    never on set-iteration order; callers pass pools in canonical (row, col)
    order to make results reproducible.
    """
    m = len(pool)
    if not (0 <= n <= m):
        raise ValueError(f"cannot draw {n} items from a pool of {m}")
    items = list(pool)
    for i in range(n):
        j = int(rng.integers(i, m))
        items[i], items[j] = items[j], items[i]
    return items[:n]
