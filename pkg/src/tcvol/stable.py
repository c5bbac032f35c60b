"""Chambers-Mallows-Stuck sampling of symmetric stable variables."""
import numpy as np


def symmetric_stable(rng: np.random.Generator, beta: float, size) -> np.ndarray:
    """Draw standard symmetric ``beta``-stable variates, cf. ``exp(-|u|**beta)``.

    Consumes one uniform array then one exponential array from ``rng``.
    """
    v = np.pi * (rng.random(size) - 0.5)
    w = rng.standard_exponential(size)
    if beta == 1.0:
        return np.tan(v)
    return (np.sin(beta * v) / np.cos(v) ** (1.0 / beta)
            * (np.cos((1.0 - beta) * v) / w) ** ((1.0 - beta) / beta))
