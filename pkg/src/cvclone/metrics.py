"""Quadrature statistics and the two entanglement criteria.

Conventions follow :mod:`cvclone.core`: the probe/conjugate pair has
correlated x and anticorrelated y quadratures, so the squeezed joint
quadratures are ``X- = (X1 - g X2)/sqrt2`` and ``Y+ = (Y1 + g Y2)/sqrt2``
with an electronic gain ``g >= 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import GaussianState, _check_mode

G_BOUND = 1e3
_QUAD = {"x": 0, "X": 0, "y": 1, "Y": 1}


def _q(quad: str) -> int:
    try:
        return _QUAD[quad]
    except KeyError:
        raise ValueError(f"quadrature must be 'x' or 'y', got {quad!r}") from None


def quad_variance(state: GaussianState, mode: int, quad: str) -> float:
    i = 2 * _check_mode(state, mode) + _q(quad)
    return float(state.cov[i, i])


def quad_covariance(state: GaussianState, mode_a: int, quad_a: str, mode_b: int, quad_b: str) -> float:
    i = 2 * _check_mode(state, mode_a) + _q(quad_a)
    j = 2 * _check_mode(state, mode_b) + _q(quad_b)
    return float(state.cov[i, j])


def _block_stats(state, m1, m2, quad):
    return (
        quad_variance(state, m1, quad),
        quad_variance(state, m2, quad),
        quad_covariance(state, m1, quad, m2, quad),
    )


def joint_variance_minus(state: GaussianState, m1: int, m2: int, g: float) -> float:
    """``Var[(X1 - g X2)/sqrt2]``."""
    v1, v2, c = _block_stats(state, m1, m2, "x")
    return (v1 + g * g * v2 - 2.0 * g * c) / 2.0


def joint_variance_plus(state: GaussianState, m1: int, m2: int, g: float) -> float:
    """``Var[(Y1 + g Y2)/sqrt2]``."""
    v1, v2, c = _block_stats(state, m1, m2, "y")
    return (v1 + g * g * v2 + 2.0 * g * c) / 2.0


def inseparability_at(state: GaussianState, m1: int, m2: int, g: float) -> float:
    """Sum of the two joint variances, each normalized to its vacuum level ``(1+g^2)/2``."""
    sql = (1.0 + g * g) / 2.0
    return (joint_variance_minus(state, m1, m2, g) + joint_variance_plus(state, m1, m2, g)) / sql


def golden_section(f, lo: float, hi: float, tol: float = 1e-10, max_iter: int = 500):
    """Minimize a unimodal ``f`` on ``[lo, hi]``. Returns ``(x, f(x))``.

    The bracket end points are compared against the interior estimate, so
    a monotone ``f`` returns the better boundary.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    best = min(((x, f(x)), (lo, f(lo)), (hi, f(hi))), key=lambda p: p[1])
    return best


def inseparability(state: GaussianState, m1: int, m2: int, method: str = "closed") -> tuple[float, float]:
    """Infimum over ``g >= 0`` of the normalized inseparability. Returns ``(I, g_opt)``.

    With ``a = Vx1 + Vy1``, ``b = Vx2 + Vy2`` and ``c = Cxx - Cyy``,
    ``I(g) = (a + b g^2 - 2 c g) / (1 + g^2)``, whose single positive
    stationary point solves ``c g^2 + (b - a) g - c = 0``. When ``c <= 0`` the
    infimum can be the ``g -> inf`` limit ``b``; ``g_opt`` is then ``inf``.
    ``method="golden"`` replaces the closed form by a golden-section search on
    ``[0, G_BOUND]``.
    """
    if state.n_modes < 2:
        raise ValueError("inseparability needs at least two modes")
    if _check_mode(state, m1) == _check_mode(state, m2):
        raise ValueError("inseparability needs two distinct modes")

    def f(g):
        return inseparability_at(state, m1, m2, g)

    vx1, vx2, cx = _block_stats(state, m1, m2, "x")
    vy1, vy2, cy = _block_stats(state, m1, m2, "y")
    a, b, c = vx1 + vy1, vx2 + vy2, cx - cy

    if method == "golden":
        g, val = golden_section(f, 0.0, G_BOUND)
    elif method == "closed":
        candidates = [0.0]
        if c != 0.0:
            disc = math.hypot(b - a, 2.0 * c)
            # numerically stable pair of roots, product -1
            q = -0.5 * ((b - a) + math.copysign(disc, b - a if b != a else 1.0))
            candidates += [r for r in (q / c, -c / q if q != 0.0 else math.nan) if r >= 0.0]
        g = min(candidates, key=f)
        val = f(g)
    else:
        raise ValueError(f"unknown method {method!r}")
    if b < val:
        return float(b), math.inf
    return float(val), float(g)


def conditional_variance(state: GaussianState, target: int, meter: int, quad: str) -> tuple[float, float]:
    """Variance of ``target`` left after the best linear estimate from ``meter``.

    For x the estimator is ``X_t - g X_m``, for y it is ``Y_t + g Y_m``; ``g`` is
    confined to ``g >= 0``. Returns ``(V, g_min)`` in shot-noise units of the
    target mode.
    """
    if _check_mode(state, target) == _check_mode(state, meter):
        raise ValueError("conditional variance needs two distinct modes")
    vt, vm, c = _block_stats(state, target, meter, quad)
    if vm <= 0.0:
        raise RuntimeError(f"non-positive meter variance {vm}; state is unphysical")
    if _q(quad) == 1:
        c = -c
    g = max(c / vm, 0.0)
    return float(vt - 2.0 * g * c + g * g * vm), float(g)


def epr(state: GaussianState, m1: int, m2: int) -> tuple[float, float]:
    """``(E12, E21)`` where ``Eij = V(Xi|Xj) * V(Yi|Yj)``."""
    e12 = conditional_variance(state, m1, m2, "x")[0] * conditional_variance(state, m1, m2, "y")[0]
    e21 = conditional_variance(state, m2, m1, "x")[0] * conditional_variance(state, m2, m1, "y")[0]
    return e12, e21


def db(ratio: float) -> float:
    if not ratio > 0:
        raise ValueError(f"dB needs a positive ratio, got {ratio}")
    return 10.0 * math.log10(ratio)


def from_db(value: float) -> float:
    return 10.0 ** (value / 10.0)


@dataclass(frozen=True)
class EntanglementReport:
    inseparability: float
    g_insep: float
    epr_12: float
    epr_21: float
    g_min_x: float
    g_min_y: float
    squeezed_var_x_minus: float
    squeezed_var_y_plus: float

    @property
    def inseparable(self) -> bool:
        return self.inseparability < 2.0

    @property
    def epr_entangled(self) -> bool:
        return self.epr_12 < 1.0


def entanglement_report(state: GaussianState, m1: int, m2: int) -> EntanglementReport:
    """All pair metrics. ``g_min_x``/``g_min_y`` are the gains of ``V(X1|X2)``/``V(Y1|Y2)``;
    the joint variances are evaluated at the inseparability-optimal ``g``."""
    I, g_i = inseparability(state, m1, m2)
    e12, e21 = epr(state, m1, m2)
    if math.isinf(g_i):
        # optimum only approached as g -> inf; report variances at g = 0 of the swapped pair
        var_x, var_y = quad_variance(state, m2, "x") / 2.0, quad_variance(state, m2, "y") / 2.0
    else:
        var_x, var_y = joint_variance_minus(state, m1, m2, g_i), joint_variance_plus(state, m1, m2, g_i)
    return EntanglementReport(
        inseparability=I,
        g_insep=g_i,
        epr_12=e12,
        epr_21=e21,
        g_min_x=conditional_variance(state, m1, m2, "x")[1],
        g_min_y=conditional_variance(state, m1, m2, "y")[1],
        squeezed_var_x_minus=var_x,
        squeezed_var_y_plus=var_y,
    )

