"""Two-mode squeezed source, amplifier on the conjugate, attenuator, detection.

Mode 0 is the probe, mode 1 the conjugate; a kept amplifier ancilla is
mode 2. The amplifier-attenuator pair plays the role of one output of an
amplifier-plus-beamsplitter cloner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import core
from .core import GaussianState
from .metrics import (
    EntanglementReport,
    entanglement_report,
    epr,
    from_db,
    inseparability,
    joint_variance_minus,
    joint_variance_plus,
)

PROBE, CONJ, ANCILLA = 0, 1, 2


@dataclass(frozen=True)
class SourceModel:
    """Twin-beam source given by its squeezed and antisqueezed joint variances (linear)."""

    v_sq: float
    v_as: Optional[float] = None

    def __post_init__(self):
        if self.v_as is None:
            object.__setattr__(self, "v_as", 1.0 / self.v_sq)
        if not (self.v_sq > 0 and self.v_as > 0):
            raise ValueError("source variances must be positive")
        if self.v_sq * self.v_as < 1.0 - 1e-9:
            raise ValueError(
                f"unphysical source: v_sq * v_as = {self.v_sq * self.v_as:.6g} < 1 "
                "(uncertainty bound on the joint quadratures)"
            )

    @classmethod
    def from_db(cls, squeezing_db: float, antisqueezing_db: Optional[float] = None) -> "SourceModel":
        """Both levels given as positive dB magnitudes below/above shot noise."""
        v_as = None if antisqueezing_db is None else from_db(antisqueezing_db)
        return cls(from_db(-squeezing_db), v_as)

    @property
    def is_pure(self) -> bool:
        return abs(self.v_sq * self.v_as - 1.0) < 1e-12


@dataclass(frozen=True)
class ChainConfig:
    source: SourceModel
    gain: float = 1.0
    transmission: Optional[float] = None  # defaults to 1/gain
    window_t: float = 0.98
    n_windows: int = 2
    polarizer_t: float = 0.99
    detector_eta: float = 0.95
    keep_ancilla: bool = False

    def __post_init__(self):
        if not self.gain >= 1.0:
            raise ValueError(f"gain must be >= 1, got {self.gain}")
        if self.transmission is None:
            object.__setattr__(self, "transmission", 1.0 / self.gain)
        for name in ("transmission", "window_t", "polarizer_t", "detector_eta"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1], got {v}")
        if self.n_windows < 0:
            raise ValueError("n_windows must be >= 0")

    @classmethod
    def lossless(cls, source: SourceModel, gain: float = 1.0, **kw) -> "ChainConfig":
        kw = {"window_t": 1.0, "polarizer_t": 1.0, "detector_eta": 1.0, **kw}
        return cls(source, gain, **kw)

    @property
    def pre_transmission(self) -> float:
        """Per-beam transmission ahead of the amplifier (windows and polarizer)."""
        return self.window_t**self.n_windows * self.polarizer_t

    def at_gain(self, gain: float) -> "ChainConfig":
        """Same losses at a new gain with unity gain-loss product."""
        return replace(self, gain=gain, transmission=1.0 / gain)


@dataclass(frozen=True)
class SweepRow:
    gain: float
    I: float
    g_insep: float
    E12: float
    E21: float
    var_x_minus: float
    var_y_plus: float

    @property
    def inseparable(self) -> bool:
        return self.I < 2.0

    @property
    def epr(self) -> bool:
        return self.E12 < 1.0


def build_source(source: SourceModel) -> GaussianState:
    """Standard-form two-mode state with the requested joint variances at ``g = 1``."""
    v = 0.5 * (source.v_sq + source.v_as)
    c = 0.5 * (source.v_as - source.v_sq)
    cov = np.array(
        [
            [v, 0.0, c, 0.0],
            [0.0, v, 0.0, -c],
            [c, 0.0, v, 0.0],
            [0.0, -c, 0.0, v],
        ]
    )
    return core.require_physical(GaussianState(np.zeros(4), cov))


def propagate(state: GaussianState, cfg: ChainConfig) -> GaussianState:
    """Send an arbitrary probe/conjugate state through the loss-amplify-attenuate-detect chain."""
    t_pre = cfg.pre_transmission
    for m in (PROBE, CONJ):
        state = core.attenuate(state, m, t_pre)
    state = core.amplify(state, CONJ, cfg.gain, keep_ancilla=cfg.keep_ancilla)
    state = core.attenuate(state, CONJ, cfg.transmission)
    for m in (PROBE, CONJ):
        state = core.attenuate(state, m, cfg.detector_eta)
    return state


def run_chain(cfg: ChainConfig) -> GaussianState:
    return propagate(build_source(cfg.source), cfg)


def sweep_row(cfg: ChainConfig) -> SweepRow:
    st = run_chain(cfg)
    I, g = inseparability(st, PROBE, CONJ)
    e12, e21 = epr(st, PROBE, CONJ)
    return SweepRow(
        gain=cfg.gain,
        I=I,
        g_insep=g,
        E12=e12,
        E21=e21,
        var_x_minus=joint_variance_minus(st, PROBE, CONJ, g),
        var_y_plus=joint_variance_plus(st, PROBE, CONJ, g),
    )


def clone_sweep(cfg_base: ChainConfig, gains) -> list[SweepRow]:
    """Entanglement metrics versus gain, with ``T = 1/G`` at every point."""
    rows = []
    for i, G in enumerate(gains):
        if not G >= 1.0:
            raise ValueError(f"gain[{i}] = {G} < 1")
        rows.append(sweep_row(cfg_base.at_gain(float(G))))
    return rows


METRICS = {
    "insep": (lambda row: row.I, 2.0),
    "epr12": (lambda row: row.E12, 1.0),
}


def metric_at(cfg_base: ChainConfig, metric: str, gain: float) -> float:
    fn, _ = METRICS[metric]
    return fn(sweep_row(cfg_base.at_gain(gain)))


class NonMonotoneError(ValueError):
    pass


def find_crossing(
    cfg_base: ChainConfig,
    metric: str,
    g_hi: float = 50.0,
    g_limit: float = 1e4,
    tol: float = 1e-9,
    n_check: int = 64,
) -> Optional[float]:
    """Gain at which ``metric`` ("insep" or "epr12") reaches its classical threshold.

    Returns ``None`` if the metric is still below threshold at ``g_limit``.
    The bracket is sampled first and a non-monotone metric raises
    :class:`NonMonotoneError` rather than being bisected.
    """
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {sorted(METRICS)}, got {metric!r}")
    threshold = METRICS[metric][1]

    def f(G):
        return metric_at(cfg_base, metric, G) - threshold

    f_lo = f(1.0)
    if f_lo >= 0.0:
        raise ValueError(f"{metric} is already at or above {threshold} at G = 1 ({f_lo + threshold:.6g})")
    hi = g_hi
    while f(hi) < 0.0:
        if hi >= g_limit:
            return None
        hi = min(2.0 * hi, g_limit)

    grid = np.geomspace(1.0, hi, n_check)
    vals = np.array([f(G) for G in grid])
    drops = np.diff(vals)
    if np.any(drops < -1e-12):
        k = int(np.argmin(drops))
        raise NonMonotoneError(
            f"{metric} decreases between G = {grid[k]:.6g} and {grid[k + 1]:.6g} "
            f"({vals[k] + threshold:.9g} -> {vals[k + 1] + threshold:.9g}); refusing to bisect"
        )
    # tighten the bracket to adjacent grid points, then bisect
    k = int(np.searchsorted(vals, 0.0))
    lo, hi = grid[max(k - 1, 0)], grid[k]
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) < tol and hi - lo < 1e-9:
            return mid
        if fm < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14 * hi:
            break
    return 0.5 * (lo + hi)


def phase_scan(cfg: ChainConfig, g: float, thetas) -> list[tuple[float, float, float]]:
    """Joint variances with both homodyne phases rotated together by each ``theta``.

    Values are normalized to the joint-quadrature shot noise ``(1 + g^2)/2``.
    """
    st = run_chain(cfg)
    sql = (1.0 + g * g) / 2.0
    out = []
    for th in thetas:
        rot = core.rotate_phase(core.rotate_phase(st, PROBE, th), CONJ, th)
        out.append(
            (
                float(th),
                joint_variance_minus(rot, PROBE, CONJ, g) / sql,
                joint_variance_plus(rot, PROBE, CONJ, g) / sql,
            )
        )
    return out


def ancilla_report(cfg: ChainConfig) -> dict[str, EntanglementReport]:
    """Pair metrics between the kept amplifier ancilla and each detected beam.

    The ancilla is the first mode of each pair, so ``epr_12`` is the ancilla
    predicted from the beam and ``g`` scales the beam's signal.
    """
    if not cfg.keep_ancilla:
        raise ValueError("ancilla_report needs keep_ancilla=True")
    st = run_chain(cfg)
    return {
        "probe": entanglement_report(st, ANCILLA, PROBE),
        "conjugate": entanglement_report(st, ANCILLA, CONJ),
    }


def squeezing_db_to_r(squeezing_db: float) -> float:
    """Squeezing parameter of a pure two-mode squeezer with the given noise reduction."""
    return 0.5 * math.log(from_db(squeezing_db))
