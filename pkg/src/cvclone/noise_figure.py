"""Noise figure of a phase-insensitive amplifier seen through a lossy detector.

The modulated coherent input is modeled as a static displacement whose squared
amplitude is the signal power in shot-noise units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import core
from .metrics import db


@dataclass(frozen=True)
class SignalModel:
    signal_power: float = 100.0  # ~20 dB above shot noise
    detector_eta: float = 1.0
    pre_detection_t: float = 1.0  # extra loss on the amplified path only, e.g. absorption

    def __post_init__(self):
        if not self.signal_power > 0:
            raise ValueError(f"signal_power must be positive, got {self.signal_power}")
        _check_eta(self.detector_eta)
        if not 0.0 < self.pre_detection_t <= 1.0:
            raise ValueError(f"pre_detection_t must lie in (0, 1], got {self.pre_detection_t}")


@dataclass(frozen=True)
class NFRow:
    gain: float
    nf_ideal: float
    nf_detector: float
    nf_simulated: float

    @property
    def nf_ideal_db(self) -> float:
        return db(self.nf_ideal)

    @property
    def nf_detector_db(self) -> float:
        return db(self.nf_detector)


def _check_gain(G):
    if not G >= 1.0:
        raise ValueError(f"gain must be >= 1, got {G}")


def _check_eta(eta):
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"detector efficiency must lie in (0, 1], got {eta}")


def snr(signal_power: float, noise_variance: float) -> float:
    if not noise_variance > 0:
        raise ValueError(f"noise variance must be positive, got {noise_variance}")
    return signal_power / noise_variance


def nf_ideal(G: float) -> float:
    _check_gain(G)
    return G / (2.0 * G - 1.0)


def nf_with_detector(G: float, eta: float) -> float:
    _check_gain(G)
    _check_eta(eta)
    return G / (2.0 * eta * G - 2.0 * eta + 1.0)


def measured_snr(state: core.GaussianState, mode: int = 0) -> float:
    """SNR of a homodyne locked to the mean field of ``mode``."""
    m = core._check_mode(state, mode)
    mu = state.mean[2 * m : 2 * m + 2]
    power = float(mu @ mu)
    if power == 0.0:
        return 0.0
    u = mu / np.sqrt(power)
    return snr(power, float(u @ state.cov[2 * m : 2 * m + 2, 2 * m : 2 * m + 2] @ u))


def nf_simulated(G: float, eta: float, signal: SignalModel | None = None, theta: float = 0.0) -> float:
    """NF from propagating a displaced vacuum through the measurement setup.

    The input SNR is taken on the bypass path (detector only); the output SNR
    after the amplifier and detector. ``theta`` rotates the input phase.
    """
    _check_gain(G)
    _check_eta(eta)
    signal = signal or SignalModel()
    carrier = core.displace(core.vacuum(1), 0, np.sqrt(signal.signal_power))
    carrier = core.rotate_phase(carrier, 0, theta)
    snr_in = measured_snr(core.attenuate(carrier, 0, eta))
    amplified = core.amplify(carrier, 0, G)
    amplified = core.attenuate(amplified, 0, signal.pre_detection_t)
    snr_out = measured_snr(core.attenuate(amplified, 0, eta))
    return snr_out / snr_in


def nf_sweep(gains, eta: float, signal: SignalModel | None = None) -> list[NFRow]:
    rows = []
    for i, G in enumerate(gains):
        if not G >= 1.0:
            raise ValueError(f"gain[{i}] = {G} < 1")
        rows.append(NFRow(float(G), nf_ideal(G), nf_with_detector(G, eta), nf_simulated(G, eta, signal)))
    return rows
