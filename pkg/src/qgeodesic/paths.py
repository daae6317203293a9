"""One-parameter families of probability distributions sampled along a path."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ProbabilityPath:
    """Samples (phi_j, p(phi_j)) of a parametrized distribution family.

    ``phis`` has shape (n,), ``probs`` shape (n, dim) with each row a
    probability distribution, and ``amps`` is an optional (n, dim) array of
    the underlying amplitudes (complex, or real for sign-carrying paths).
    """

    phis: np.ndarray
    probs: np.ndarray
    amps: np.ndarray | None = None

    def __post_init__(self):
        phis = np.asarray(self.phis, dtype=np.float64)
        probs = np.asarray(self.probs, dtype=np.float64)
        if phis.ndim != 1:
            raise ValueError("phis must be one-dimensional")
        if probs.ndim != 2 or probs.shape[0] != phis.size:
            raise ValueError(
                f"probs shape {probs.shape} does not match {phis.size} samples")
        if np.any(probs < -1e-12):
            raise ValueError("negative probability in path")
        row_sums = probs.sum(axis=1)
        if np.any(np.abs(row_sums - 1.0) > 1e-9):
            raise ValueError("path rows must each sum to 1")
        object.__setattr__(self, "phis", phis)
        object.__setattr__(self, "probs", probs)
        if self.amps is not None:
            amps = np.asarray(self.amps)
            if amps.shape != probs.shape:
                raise ValueError(
                    f"amps shape {amps.shape} does not match probs {probs.shape}")
            object.__setattr__(self, "amps", amps)

    @property
    def n_samples(self) -> int:
        return self.phis.size

    @property
    def dim(self) -> int:
        return self.probs.shape[1]

    def require_increasing(self):
        if self.n_samples >= 2 and not np.all(np.diff(self.phis) > 0):
            raise ValueError("path parameter values must be strictly increasing")
