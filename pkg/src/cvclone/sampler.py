"""Seeded homodyne sampling from Gaussian states.

Reproducibility contract: draws come from numpy's ``PCG64`` bit generator with
``Generator.standard_normal`` (ziggurat). The master seed is expanded with
``SeedSequence(seed).spawn`` into one child stream per chunk of
``CHUNK_SHOTS`` shots, so output does not depend on how chunks are scheduled.
Normals are mapped to quadratures by the lower Cholesky factor of the
covariance, rows in mode-major order ``(x0, y0, x1, y1, ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import core
from .core import GaussianState

CHUNK_SHOTS = 1 << 16


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    shots: int = 1_000_000
    block_size: int = 1024

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not self.shots >= self.block_size >= 2:
            raise ValueError(f"need shots >= block_size >= 2, got {self.shots}, {self.block_size}")


def sample_quadratures(state: GaussianState, cfg: SampleConfig) -> np.ndarray:
    """``shots x 2n`` array of joint homodyne outcomes."""
    core.require_physical(state)
    L = np.linalg.cholesky(state.cov)
    dim = state.cov.shape[0]
    n_chunks = -(-cfg.shots // CHUNK_SHOTS)
    children = np.random.SeedSequence(cfg.seed).spawn(n_chunks)
    out = np.empty((cfg.shots, dim))
    for k, child in enumerate(children):
        lo = k * CHUNK_SHOTS
        hi = min(lo + CHUNK_SHOTS, cfg.shots)
        z = np.random.Generator(np.random.PCG64(child)).standard_normal((hi - lo, dim))
        out[lo:hi] = z @ L.T
    out += state.mean
    return out


def empirical_covariance(samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[0] < 2:
        raise ValueError("need a 2-d array with at least two samples")
    return samples.mean(axis=0), np.cov(samples, rowvar=False, ddof=1)


@dataclass(frozen=True)
class JointQuadrature:
    """Linear combination ``sum(coeff * quadrature)`` over ``(mode, 'x'|'y', coeff)`` terms."""

    terms: tuple

    def weights(self, n_modes: int) -> np.ndarray:
        w = np.zeros(2 * n_modes)
        for mode, quad, coeff in self.terms:
            if not 0 <= mode < n_modes:
                raise IndexError(f"mode {mode} out of range for {n_modes} modes")
            w[2 * mode + {"x": 0, "y": 1}[quad]] += coeff
        return w

    @classmethod
    def single(cls, mode: int, quad: str) -> "JointQuadrature":
        return cls(((mode, quad, 1.0),))

    @classmethod
    def x_minus(cls, m1: int, m2: int, g: float = 1.0) -> "JointQuadrature":
        s = 1.0 / np.sqrt(2.0)
        return cls(((m1, "x", s), (m2, "x", -g * s)))

    @classmethod
    def y_plus(cls, m1: int, m2: int, g: float = 1.0) -> "JointQuadrature":
        s = 1.0 / np.sqrt(2.0)
        return cls(((m1, "y", s), (m2, "y", g * s)))


def variance_trace(state: GaussianState, joint: JointQuadrature, cfg: SampleConfig) -> tuple[float, float]:
    """Block-averaged variance of a joint quadrature, as a spectrum analyzer would report it.

    Returns ``(estimate, stderr)``; trailing shots that do not fill a block are dropped.
    """
    w = joint.weights(state.n_modes)
    signal = sample_quadratures(state, cfg) @ w
    n_blocks = cfg.shots // cfg.block_size
    if n_blocks < 2:
        raise ValueError("need at least two blocks")
    blocks = signal[: n_blocks * cfg.block_size].reshape(n_blocks, cfg.block_size)
    v = blocks.var(axis=1, ddof=1)
    return float(v.mean()), float(v.std(ddof=1) / np.sqrt(n_blocks))


def batch_estimate(samples: np.ndarray, fn, n_batches: int = 100) -> tuple[float, float]:
    """``fn(cov)`` on all samples, with a batch-means standard error.

    ``fn`` maps an empirical covariance matrix to a scalar.
    """
    n = samples.shape[0] // n_batches
    if n < 2:
        raise ValueError("too few samples per batch")
    est = fn(empirical_covariance(samples)[1])
    per = np.array([fn(empirical_covariance(samples[i * n : (i + 1) * n])[1]) for i in range(n_batches)])
    return float(est), float(per.std(ddof=1) / np.sqrt(n_batches))
