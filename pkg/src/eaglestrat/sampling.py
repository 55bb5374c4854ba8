"""Random steps (Gaussian and symmetric Lévy-stable) and their special functions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

RngStream = np.random.Generator


def rng_stream(seed: int, *key: int) -> RngStream:
    """Counter-based (Philox) generator for ``seed`` and an optional spawn key.

    ``rng_stream(s, i)`` gives the i-th independent child of base seed ``s``;
    the mapping does not depend on how many children are created.
    """
    if seed < 0 or seed >= 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    ss = np.random.SeedSequence(seed, spawn_key=tuple(key))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class LevyParams:
    """Symmetric stable law with characteristic function ``exp(-scale * |k|**index)``."""

    index: float = 1.5
    scale: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.index <= 2.0:
            raise ValueError(f"Lévy index must lie in (0, 2], got {self.index}")
        if not self.scale > 0.0:
            raise ValueError(f"Lévy scale must be positive, got {self.scale}")


def gamma_fn(z: float) -> float:
    if not z > 0:
        raise ValueError(f"gamma_fn is defined here for z > 0 only, got {z}")
    return math.gamma(z)


def levy_tail_density(s: float, params: LevyParams) -> float:
    """Large-|s| asymptote of the stable density, ``A β Γ(β) sin(πβ/2) / (π |s|^(1+β))``."""
    if s == 0:
        raise ValueError("tail asymptote diverges at s = 0")
    b, a = params.index, params.scale
    amp = a * b * gamma_fn(b) * math.sin(math.pi * b / 2.0)
    if abs(amp) < 1e-15:
        return 0.0
    return amp / (math.pi * abs(s) ** (1.0 + b))


def mantegna_sigma(index: float) -> float:
    """Numerator spread for Mantegna's ratio ``u / |v|**(1/β)``, u ~ N(0, σ²), v ~ N(0, 1)."""
    b = index
    num = gamma_fn(1.0 + b) * math.sin(math.pi * b / 2.0)
    den = gamma_fn((1.0 + b) / 2.0) * b * 2.0 ** ((b - 1.0) / 2.0)
    return (num / den) ** (1.0 / b)


def sample_gaussian_step(dim: int, sigma: float, rng: RngStream, size: int | None = None) -> np.ndarray:
    """I.i.d. ``N(0, sigma²)`` components; ``size`` prepends a batch axis."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    shape = (dim,) if size is None else (size, dim)
    return sigma * rng.standard_normal(shape)


def sample_levy_step(dim: int, params: LevyParams, rng: RngStream, size: int | None = None) -> np.ndarray:
    """Symmetric Lévy-stable steps of index ``params.index``.

    Uses Mantegna's ratio of Gaussians for β < 2.  At β = 2 the law is exactly
    Gaussian with variance ``2 * scale``, and Mantegna's σ degenerates, so the
    Gaussian is drawn directly.  Steps are never truncated.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    shape = (dim,) if size is None else (size, dim)
    b = params.index
    if b == 2.0:
        return math.sqrt(2.0 * params.scale) * rng.standard_normal(shape)
    u = mantegna_sigma(b) * rng.standard_normal(shape)
    v = rng.standard_normal(shape)
    return params.scale ** (1.0 / b) * u / np.abs(v) ** (1.0 / b)
