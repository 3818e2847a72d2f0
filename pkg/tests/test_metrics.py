import numpy as np
import pytest
from hypothesis import given, strategies as st

from cvclone import metrics
from cvclone.core import amplify, attenuate, displace, two_mode_squeeze, vacuum
from cvclone.metrics import (
    conditional_variance,
    db,
    entanglement_report,
    epr,
    from_db,
    inseparability,
    inseparability_at,
    joint_variance_minus,
    joint_variance_plus,
    quad_covariance,
    quad_variance,
)

from .conftest import R_43, physical_states

TMSV = two_mode_squeeze(vacuum(2), 0, 1, R_43)
CH, SH = np.cosh(2 * R_43), np.sinh(2 * R_43)


def cloned(state, G):
    return attenuate(amplify(state, 1, G), 1, 1.0 / G)


def dense_min(f, lo=0.0, hi=5.0, n=200_001):
    """Grid search then a local re-grid; independent of the library's optimizers."""
    g = np.linspace(lo, hi, n)
    v = f(g)
    k = int(np.argmin(v))
    step = g[1] - g[0]
    g2 = np.linspace(max(lo, g[k] - step), min(hi, g[k] + step), 20_001)
    v2 = f(g2)
    k2 = int(np.argmin(v2))
    return v2[k2], g2[k2]


class TestQuadStats:
    def test_vacuum(self):
        v = vacuum(2)
        assert quad_variance(v, 1, "y") == 1.0
        assert quad_covariance(v, 0, "x", 1, "x") == 0.0

    def test_tmsv(self):
        assert quad_variance(TMSV, 0, "x") == pytest.approx(1.53153, abs=1e-5)
        assert quad_covariance(TMSV, 0, "x", 1, "x") == pytest.approx(1.16000, abs=1e-5)
        assert quad_covariance(TMSV, 0, "x", 1, "x") == pytest.approx(SH, abs=1e-12)

    @given(physical_states(min_modes=2))
    def test_symmetric(self, s):
        assert quad_covariance(s, 0, "x", 1, "y") == quad_covariance(s, 1, "y", 0, "x")

    def test_bad_quadrature(self):
        with pytest.raises(ValueError):
            quad_variance(vacuum(1), 0, "p")


class TestJointVariance:
    def test_vacua(self):
        assert joint_variance_minus(vacuum(2), 0, 1, 1.0) == 1.0
        assert joint_variance_plus(vacuum(2), 0, 1, 1.0) == 1.0

    def test_tmsv(self):
        assert joint_variance_minus(TMSV, 0, 1, 1.0) == pytest.approx(10**-0.43, abs=1e-12)
        assert joint_variance_plus(TMSV, 0, 1, 1.0) == pytest.approx(0.37154, abs=1e-5)

    @given(physical_states(min_modes=2))
    def test_g_zero(self, s):
        assert joint_variance_minus(s, 0, 1, 0.0) == pytest.approx(s.cov[0, 0] / 2)

    @given(physical_states(min_modes=2), st.floats(0, 5))
    def test_matches_weight_vector(self, s, g):
        w = np.zeros(2 * s.n_modes)
        w[0], w[2] = 1, -g
        w /= np.sqrt(2)
        assert joint_variance_minus(s, 0, 1, g) == pytest.approx(w @ s.cov @ w, rel=1e-12, abs=1e-12)


class TestInseparability:
    def test_vacua_any_g(self):
        for g in (0.0, 0.3, 1.0, 7.0):
            assert inseparability_at(vacuum(2), 0, 1, g) == pytest.approx(2.0, abs=1e-15)
        assert inseparability(vacuum(2), 0, 1)[0] == pytest.approx(2.0, abs=1e-15)

    def test_uncorrelated_coherent_states(self):
        s = displace(displace(vacuum(2), 0, 3.0, 1.0), 1, -2.0)
        assert inseparability(s, 0, 1)[0] == pytest.approx(2.0, abs=1e-15)

    def test_tmsv(self):
        I, g = inseparability(TMSV, 0, 1)
        assert I == pytest.approx(0.74309, abs=1e-4)  # quoted value carries a rounded r
        assert I == pytest.approx(2 * 10**-0.43, abs=1e-12)
        assert g == pytest.approx(1.0, abs=1e-12)

    def test_g100_chain_against_dense_grid(self):
        G = 100.0
        vc = CH + 2 * (1 - 1 / G)

        def I_of_g(g):
            return (2 * CH + 2 * vc * g**2 - 4 * g * SH) / (1 + g**2)

        I_ref, g_ref = dense_min(I_of_g)
        I, g = inseparability(cloned(TMSV, G), 0, 1)
        assert I == pytest.approx(I_ref, abs=1e-10)
        assert g == pytest.approx(g_ref, abs=1e-6)
        assert I == pytest.approx(1.9931, abs=1e-4)
        assert g == pytest.approx(0.46121, abs=1e-4)

    @given(physical_states(min_modes=2))
    def test_closed_form_matches_golden(self, s):
        I_c, _ = inseparability(s, 0, 1)
        I_g, _ = inseparability(s, 0, 1, method="golden")
        assert I_c == pytest.approx(I_g, abs=1e-9 * max(1.0, abs(I_c)))

    @given(physical_states(min_modes=2), st.integers(0, 2**32 - 1))
    def test_optimality(self, s, seed):
        I, _ = inseparability(s, 0, 1)
        gs = np.random.default_rng(seed).uniform(0, 20, 100)
        assert all(I <= inseparability_at(s, 0, 1, g) + 1e-12 for g in gs)

    def test_needs_two_modes(self):
        with pytest.raises(ValueError):
            inseparability(vacuum(1), 0, 0)


class TestConditionalVariance:
    def test_independent(self):
        V, g = conditional_variance(vacuum(2), 0, 1, "x")
        assert (V, g) == (1.0, 0.0)

    def test_tmsv(self):
        V, g = conditional_variance(TMSV, 0, 1, "x")
        assert V == pytest.approx(1 / CH, abs=1e-12)
        assert V == pytest.approx(0.65294, abs=1e-5)
        assert g == pytest.approx(np.tanh(2 * R_43), abs=1e-12)
        Vy, gy = conditional_variance(TMSV, 0, 1, "y")
        assert (Vy, gy) == pytest.approx((V, g), abs=1e-12)

    def test_unity_gain_two_clone(self):
        V, _ = conditional_variance(cloned(TMSV, 2.0), 0, 1, "x")
        assert V == pytest.approx(CH - SH**2 / (CH + 1), abs=1e-12)
        assert V == pytest.approx(1.0, abs=1e-12)

    @given(physical_states(min_modes=2), st.sampled_from(["x", "y"]))
    def test_matches_numeric_minimum(self, s, quad):
        V, g = conditional_variance(s, 0, 1, quad)
        sign = -1.0 if quad == "x" else 1.0
        v1, v2 = quad_variance(s, 0, quad), quad_variance(s, 1, quad)
        c = quad_covariance(s, 0, quad, 1, quad)
        f = lambda gg: v1 + gg * gg * v2 + 2 * sign * gg * c  # noqa: E731
        g_gold, V_gold = metrics.golden_section(f, 0.0, 1e3)
        assert V == pytest.approx(V_gold, abs=1e-7 * max(1.0, V))
        assert g == pytest.approx(g_gold, abs=1e-7 * max(1.0, g))

    @given(physical_states(min_modes=2), st.sampled_from(["x", "y"]))
    def test_bounds(self, s, quad):
        V, _ = conditional_variance(s, 0, 1, quad)
        assert -1e-12 <= V <= quad_variance(s, 0, quad) + 1e-12


class TestEPR:
    def test_independent(self):
        assert epr(vacuum(2), 0, 1) == (1.0, 1.0)

    def test_tmsv(self):
        e12, e21 = epr(TMSV, 0, 1)
        assert e12 == pytest.approx(1 / CH**2, abs=1e-12)
        assert e12 == pytest.approx(0.42633, abs=1e-5)
        assert e21 == pytest.approx(e12, abs=1e-12)

    @given(st.floats(0.05, 1.5), st.floats(1.0, 50.0))
    def test_amplified_side_is_worse_predictor_target(self, r, G):
        e12, e21 = epr(cloned(two_mode_squeeze(vacuum(2), 0, 1, r), G), 0, 1)
        assert e21 >= e12 - 1e-12

    def test_optimal_gains_differ(self):
        rep = entanglement_report(cloned(TMSV, 2.0), 0, 1)
        assert abs(rep.g_insep - rep.g_min_x) > 0.01
        assert rep.g_min_x == pytest.approx(SH / (CH + 1), abs=1e-12)


class TestDB:
    def test_zero(self):
        assert db(1.0) == 0.0

    def test_43db_squeezing(self):
        assert from_db(-4.3) == pytest.approx(0.37154, abs=1e-5)

    @given(st.floats(1e-6, 1e6))
    def test_round_trip(self, x):
        assert from_db(db(x)) == pytest.approx(x, rel=1e-12)

    @pytest.mark.parametrize("bad", [0.0, -1.0])
    def test_nonpositive(self, bad):
        with pytest.raises(ValueError):
            db(bad)


def test_report_fields_nonnegative(rng):
    from .conftest import random_state

    for _ in range(20):
        s, _ = random_state(rng, 2)
        rep = entanglement_report(s, 0, 1)
        assert min(rep.inseparability, rep.g_insep, rep.epr_12, rep.epr_21, rep.g_min_x, rep.g_min_y) >= 0
