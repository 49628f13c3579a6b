"""
Reproducible per-trajectory random streams.

Every trajectory owns a PCG64 generator seeded with

    stream_seed(seed, index) = seed XOR splitmix64(index)

so a trajectory's noise depends only on (seed, index), never on batch
layout or worker count. Uniforms are the generator's 53-bit doubles shifted
by half a unit into the open interval (0, 1); standard normals are their
inverse CDF (scipy.special.ndtri).

With antithetic pairing, trajectory 2k + 1 replays the stream of 2k with
normals negated and uniforms reflected u -> 1 - u.
"""
from typing import Sequence

import numpy as np
from scipy.special import ndtri

MASK64 = (1 << 64) - 1
HALF_ULP = 2.0 ** -54


def splitmix64(value: int) -> int:
    """One output of the splitmix64 mixer for the given 64-bit state"""
    z = (value + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_seed(seed: int, index: int) -> int:
    return (seed ^ splitmix64(index)) & MASK64


def trajectory_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(stream_seed(seed, index)))


class NoiseStreams:
    """Step-by-step uniforms and normals for a batch of trajectory indices"""

    def __init__(self, seed: int, indices: Sequence[int], antithetic: bool = False, chunk: int = 512):
        self.indices = np.asarray(indices, dtype=np.int64)
        self.antithetic = antithetic
        self.chunk = chunk
        bases = self.indices // 2 if antithetic else self.indices
        self._generators = [trajectory_generator(seed, int(base)) for base in bases]
        self._mirrored = (self.indices % 2 == 1) if antithetic else np.zeros(len(self.indices), dtype=bool)
        self._buffer = np.empty((len(self.indices), 0))
        self._cursor = 0

    def __len__(self) -> int:
        return len(self.indices)

    def _refill(self):
        self._buffer = np.stack([g.random(self.chunk) for g in self._generators]) + HALF_ULP
        self._cursor = 0

    def _raw(self) -> np.ndarray:
        if self._cursor >= self._buffer.shape[1]:
            self._refill()
        u = self._buffer[:, self._cursor]
        self._cursor += 1
        return u

    def uniform(self) -> np.ndarray:
        """One uniform per trajectory, in (0, 1)"""
        u = self._raw().copy()
        u[self._mirrored] = 1.0 - u[self._mirrored]
        return u

    def normal(self) -> np.ndarray:
        """One standard normal per trajectory; antithetic partners get exact negatives"""
        z = ndtri(self._raw())
        z[self._mirrored] = -z[self._mirrored]
        return z

    def normal_block(self, steps: int) -> np.ndarray:
        return np.stack([self.normal() for _ in range(steps)], axis=1)
