"""Deterministic low-discrepancy sampling of qubit input states."""

from __future__ import annotations

import cmath
import math

#: Golden ratio; drives the azimuthal spacing of the spherical lattice.
_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def fibonacci_bloch(count: int) -> list[tuple[complex, complex]]:
    """Golden-angle lattice of ``count`` qubit states (a, b) on the Bloch sphere.

    Point i sits at polar height z_i = 1 - (2i + 1)/count (the midpoint
    lattice, so averages over the lattice converge to Haar averages at
    O(1/count^2) for polar-symmetric integrands) and azimuth
    phi_i = 2 pi frac(i / golden_ratio).  The sequence is fixed: the same
    ``count`` always yields the same states, so downstream averages are
    reproducible without a random seed.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    samples = []
    for i in range(count):
        z = 1.0 - (2.0 * i + 1.0) / count
        azimuth = 2.0 * math.pi * ((i / _GOLDEN) % 1.0)
        theta = math.acos(max(-1.0, min(1.0, z)))
        a = complex(math.cos(theta / 2.0))
        b = cmath.exp(1j * azimuth) * math.sin(theta / 2.0)
        samples.append((a, b))
    return samples
