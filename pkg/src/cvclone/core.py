"""Gaussian states over optical modes and the maps that act on them.

Units: vacuum quadrature variance is 1 (the shot-noise level). Quadratures are
ordered mode-major, ``(x0, y0, x1, y1, ...)``. Every operation is a pure
function returning a new :class:`GaussianState`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PHYSICALITY_TOL = 1e-9
_SYMMETRY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Mean vector and covariance matrix of an ``n_modes`` Gaussian state.

    The covariance is symmetrized on construction; inputs that are visibly
    asymmetric or contain non-finite entries are rejected. Physicality is not
    enforced here (see :func:`require_physical`), so that callers can build
    and inspect candidate states.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float).reshape(-1)
        cov = np.array(self.cov, dtype=float)
        if mean.size == 0 or mean.size % 2:
            raise ValueError(f"mean must have even, nonzero length, got {mean.size}")
        if cov.shape != (mean.size, mean.size):
            raise ValueError(f"cov shape {cov.shape} does not match mean length {mean.size}")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise ValueError("state contains non-finite entries")
        scale = max(1.0, float(np.max(np.abs(cov))))
        if np.max(np.abs(cov - cov.T)) > _SYMMETRY_TOL * scale:
            raise ValueError("covariance matrix is not symmetric")
        cov = 0.5 * (cov + cov.T)
        mean.flags.writeable = False
        cov.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self) -> int:
        return self.mean.size // 2

    def allclose(self, other: "GaussianState", atol: float = 1e-12) -> bool:
        return (
            self.n_modes == other.n_modes
            and np.allclose(self.mean, other.mean, rtol=0, atol=atol)
            and np.allclose(self.cov, other.cov, rtol=0, atol=atol)
        )


def _check_mode(state: GaussianState, mode: int) -> int:
    if not isinstance(mode, (int, np.integer)) or not 0 <= mode < state.n_modes:
        raise IndexError(f"mode {mode!r} out of range for a {state.n_modes}-mode state")
    return int(mode)


def symplectic_form(n: int) -> np.ndarray:
    return np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(state_or_cov) -> np.ndarray:
    """Sorted symplectic eigenvalues of a covariance matrix (one per mode)."""
    cov = state_or_cov.cov if isinstance(state_or_cov, GaussianState) else np.asarray(state_or_cov)
    n = cov.shape[0] // 2
    ev = np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ cov))
    # eigenvalues come in +/- pairs; keep one of each
    return np.sort(ev)[::2]


def is_physical(state: GaussianState, tol: float = PHYSICALITY_TOL) -> bool:
    return bool(symplectic_eigenvalues(state)[0] >= 1.0 - tol)


def require_physical(state: GaussianState, tol: float = PHYSICALITY_TOL) -> GaussianState:
    nu = symplectic_eigenvalues(state)[0]
    if nu < 1.0 - tol:
        raise ValueError(f"unphysical state: smallest symplectic eigenvalue {nu:.12g} < 1")
    return state


def vacuum(n: int) -> GaussianState:
    if n < 1:
        raise ValueError(f"need at least one mode, got {n}")
    return GaussianState(np.zeros(2 * n), np.eye(2 * n))


def displace(state: GaussianState, mode: int, dx: float, dy: float = 0.0) -> GaussianState:
    m = _check_mode(state, mode)
    mean = state.mean.copy()
    mean[2 * m] += dx
    mean[2 * m + 1] += dy
    return GaussianState(mean, state.cov)


def tensor(a: GaussianState, b: GaussianState) -> GaussianState:
    na, nb = a.cov.shape[0], b.cov.shape[0]
    cov = np.zeros((na + nb, na + nb))
    cov[:na, :na] = a.cov
    cov[na:, na:] = b.cov
    return GaussianState(np.concatenate([a.mean, b.mean]), cov)


def trace_out(state: GaussianState, mode: int) -> GaussianState:
    m = _check_mode(state, mode)
    if state.n_modes == 1:
        raise ValueError("cannot trace out the only mode")
    keep = np.delete(np.arange(2 * state.n_modes), [2 * m, 2 * m + 1])
    return GaussianState(state.mean[keep], state.cov[np.ix_(keep, keep)])


def _apply_symplectic(state: GaussianState, S: np.ndarray, modes) -> GaussianState:
    """Apply a 2k x 2k symplectic ``S`` acting on ``modes`` (in that order)."""
    idx = np.array([q for m in modes for q in (2 * m, 2 * m + 1)])
    full = np.eye(2 * state.n_modes)
    full[np.ix_(idx, idx)] = S
    return GaussianState(full @ state.mean, full @ state.cov @ full.T)


def two_mode_squeeze(state: GaussianState, mode_a: int, mode_b: int, r: float) -> GaussianState:
    """Two-mode squeezer with correlated x and anticorrelated y quadratures.

    On vacuum this gives ``Var[(x_a - x_b)/sqrt2] = Var[(y_a + y_b)/sqrt2] = exp(-2r)``.
    """
    a, b = _check_mode(state, mode_a), _check_mode(state, mode_b)
    if a == b:
        raise ValueError("two_mode_squeeze needs two distinct modes")
    ch, sh = np.cosh(r), np.sinh(r)
    S = np.array(
        [
            [ch, 0.0, sh, 0.0],
            [0.0, ch, 0.0, -sh],
            [sh, 0.0, ch, 0.0],
            [0.0, -sh, 0.0, ch],
        ]
    )
    return _apply_symplectic(state, S, (a, b))


def rotate_phase(state: GaussianState, mode: int, theta: float) -> GaussianState:
    m = _check_mode(state, mode)
    c, s = np.cos(theta), np.sin(theta)
    return _apply_symplectic(state, np.array([[c, s], [-s, c]]), (m,))


def beamsplit(state: GaussianState, mode: int, T: float) -> GaussianState:
    """Mix ``mode`` with a fresh vacuum appended as the last mode.

    ``mode`` keeps amplitude ``sqrt(T)``; the appended mode carries the
    reflected ``sqrt(1 - T)`` part.
    """
    m = _check_mode(state, mode)
    if not 0.0 < T < 1.0:
        raise ValueError(f"beamsplitter transmission must lie in (0, 1), got {T}")
    t, r = np.sqrt(T), np.sqrt(1.0 - T)
    I2 = np.eye(2)
    S = np.block([[t * I2, r * I2], [-r * I2, t * I2]])
    grown = tensor(state, vacuum(1))
    return _apply_symplectic(grown, S, (m, grown.n_modes - 1))


def _single_mode_channel(state: GaussianState, mode: int, scale: float, noise: float) -> GaussianState:
    # x -> sqrt(scale) x on one mode, plus isotropic added noise on that mode
    m = _check_mode(state, mode)
    X = np.ones(2 * state.n_modes)
    X[2 * m : 2 * m + 2] = np.sqrt(scale)
    cov = state.cov * np.outer(X, X)
    cov[2 * m, 2 * m] += noise
    cov[2 * m + 1, 2 * m + 1] += noise
    return GaussianState(X * state.mean, cov)


def attenuate(state: GaussianState, mode: int, T: float) -> GaussianState:
    """Pure-loss channel with transmission ``T``: ``V -> T V + (1 - T)``."""
    if not 0.0 < T <= 1.0:
        raise ValueError(f"transmission must lie in (0, 1], got {T}")
    if T == 1.0:
        _check_mode(state, mode)
        return state
    return _single_mode_channel(state, mode, T, 1.0 - T)


def amplify(state: GaussianState, mode: int, G: float, keep_ancilla: bool = False) -> GaussianState:
    """Quantum-limited phase-insensitive amplifier of intensity gain ``G``.

    Realized as a two-mode squeezer between ``mode`` and a vacuum ancilla
    appended as the last mode. With ``keep_ancilla=False`` the ancilla is traced
    out, leaving the single-mode map ``V -> G V + (G - 1)``.
    """
    m = _check_mode(state, mode)
    if not G >= 1.0:
        raise ValueError(f"amplifier gain must be >= 1, got {G}")
    grown = tensor(state, vacuum(1))
    anc = grown.n_modes - 1
    out = two_mode_squeeze(grown, m, anc, np.arccosh(np.sqrt(G)))
    return out if keep_ancilla else trace_out(out, anc)
