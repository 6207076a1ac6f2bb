"""Seeded random draws with a documented, portable transform for normals.

Uniforms come straight from numpy's PCG64 bit generator. Normal deviates
are produced by an explicit Box-Muller transform over those uniforms, so
the exact values depend only on the PCG64 stream and the arithmetic
written here, not on numpy's internal (version-dependent) ziggurat.
"""

from __future__ import annotations

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def uniform(rng: np.random.Generator, lo: float, hi: float, size: int) -> np.ndarray:
    if hi <= lo:
        raise ValueError(f"uniform bounds must satisfy lo < hi, got [{lo}, {hi})")
    return lo + (hi - lo) * rng.random(size)


def normal_box_muller(rng: np.random.Generator, mu: float, sigma: float, size: int) -> np.ndarray:
    """Box-Muller: z0 = sqrt(-2 ln u1) cos(2 pi u2), z1 = same with sin.

    Draws ceil(size/2) uniform pairs and truncates, so consecutive calls
    with the same generator state are reproducible element for element.
    """
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    pairs = (size + 1) // 2
    # 1 - random() lies in (0, 1], keeping log() finite.
    u1 = 1.0 - rng.random(pairs)
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(2.0 * np.pi * u2)
    z[1::2] = radius * np.sin(2.0 * np.pi * u2)
    return mu + sigma * z[:size]
