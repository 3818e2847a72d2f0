"""Gaussian simulation of a quantum-limited phase-insensitive amplifier cloning one half of a twin-beam state."""

from .chain import ChainConfig, SourceModel, SweepRow, build_source, clone_sweep, find_crossing, phase_scan, run_chain
from .core import (
    GaussianState,
    amplify,
    attenuate,
    beamsplit,
    displace,
    is_physical,
    rotate_phase,
    symplectic_eigenvalues,
    tensor,
    trace_out,
    two_mode_squeeze,
    vacuum,
)
from .metrics import EntanglementReport, conditional_variance, db, epr, from_db, inseparability

__version__ = "0.1.0"
