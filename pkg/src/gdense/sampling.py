"""Deterministic low-discrepancy directions on the unit sphere."""
from __future__ import annotations

import math

import numpy as np

SAMPLERS = ("grid", "fibonacci", "halton")


def default_sampler(n: int) -> str:
    if n == 2:
        return "grid"
    if n == 3:
        return "fibonacci"
    return "halton"


def grid_directions(samples: int) -> np.ndarray:
    """Uniform angular grid on the circle, starting at angle 0."""
    t = 2.0 * np.pi * np.arange(samples) / samples
    return np.stack([np.cos(t), np.sin(t)], axis=1)


def fibonacci_directions(samples: int) -> np.ndarray:
    i = np.arange(samples, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / samples
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = i * math.pi * (3.0 - math.sqrt(5.0))
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def halton_directions(samples: int, n: int) -> np.ndarray:
    """Halton points pushed through the Gaussian quantile, then normalized."""
    from scipy.special import ndtri
    from scipy.stats import qmc

    pts = qmc.Halton(d=n, scramble=False).random(samples + 1)[1:]
    g = ndtri(pts)
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def directions(n: int, samples: int, sampler: str | None = None) -> np.ndarray:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sampler = sampler or default_sampler(n)
    if sampler == "grid":
        if n != 2:
            raise ValueError("grid sampler needs n = 2")
        return grid_directions(samples)
    if sampler == "fibonacci":
        if n != 3:
            raise ValueError("fibonacci sampler needs n = 3")
        return fibonacci_directions(samples)
    if sampler == "halton":
        if n < 2:
            raise ValueError("halton sampler needs n >= 2")
        return halton_directions(samples, n)
    raise ValueError(f"unknown sampler {sampler!r}; expected one of {SAMPLERS}")
