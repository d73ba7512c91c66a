"""Chart-based numeric verification on the flat model."""
from __future__ import annotations

import itertools
import random

import pytest

from su2bundle.exterior import FrameVector
from su2bundle.frames import GeometryParams, InvariantForm, d_invariant, expand_invariant
from su2bundle.oracle import (
    ChartPoint,
    Dual,
    adapted_frame_vectors,
    chart_coords,
    eval_form,
    numeric_d,
    sphere_jacobian,
    sphere_point,
    verify_flat_su3,
    verify_flat_system,
)


class TestCharts:
    def test_unit_norm(self):
        for pole in ("north", "south"):
            u = sphere_point(0.3, -1.2, pole)
            assert sum(c * c for c in u) == pytest.approx(1.0, abs=1e-15)

    def test_round_trip(self):
        rng = random.Random(1)
        for _ in range(50):
            xi, eta = rng.uniform(-2, 2), rng.uniform(-2, 2)
            pole = rng.choice(("north", "south"))
            u = sphere_point(xi, eta, pole)
            xi2, eta2 = chart_coords(u, pole)
            assert xi2 == pytest.approx(xi, abs=1e-12)
            assert eta2 == pytest.approx(eta, abs=1e-12)

    def test_pole_proximity_rejected(self):
        with pytest.raises(ValueError):
            chart_coords((0.0, 0.0, -1.0), "south")
        with pytest.raises(ValueError):
            chart_coords((0.0, 0.0, 1.0), "north")

    def test_jacobian_matches_fd(self):
        h = 1e-6
        for pole in ("north", "south"):
            jac = sphere_jacobian(0.4, -0.7, pole)
            for i in range(3):
                fd = (sphere_point(0.4 + h, -0.7, pole)[i] - sphere_point(0.4 - h, -0.7, pole)[i]) / (2 * h)
                assert jac[i][0] == pytest.approx(fd, abs=1e-8)

    def test_t_must_be_positive(self):
        with pytest.raises(ValueError):
            ChartPoint(x=(0, 0, 0), xi=0.0, eta=0.0, pole="south", t=0.0)


class TestDualNumbers:
    def test_arithmetic(self):
        x = Dual(3.0, 1.0)
        y = (x * x + 2.0) / x
        # d/dx (x + 2/x) = 1 - 2/x^2
        assert y.a == pytest.approx(3 + 2 / 3)
        assert y.b == pytest.approx(1 - 2 / 9)

    def test_nested(self):
        # second derivative of x^3 via nested duals
        x = Dual(Dual(2.0, 1.0), Dual(1.0, 0.0))
        y = x * x * x
        assert y.b.b == pytest.approx(12.0)


class TestEvalForm:
    def test_theta_at_north_point(self):
        pt, frame = adapted_frame_vectors()
        assert eval_form("theta", pt, (frame[0],)) == pytest.approx(1.0)
        assert eval_form("theta", pt, ((0, 0, 0, 1.0, 0),)) == 0.0

    def test_alpha0_at_north_point(self):
        pt, frame = adapted_frame_vectors()
        assert eval_form("alpha0", pt, (frame[1], frame[2])) == pytest.approx(1.0)

    def test_alternating(self):
        pt = ChartPoint(x=(0.2, -0.4, 1.0), xi=0.5, eta=-0.3, pole="north")
        v = (1.0, 2.0, -1.0, 0.5, 0.25)
        assert eval_form("alpha1", pt, (v, v)) == 0.0

    def test_multilinear(self):
        pt = ChartPoint(x=(0.2, -0.4, 1.0), xi=0.5, eta=-0.3, pole="north")
        rng = random.Random(3)
        v1 = tuple(rng.uniform(-1, 1) for _ in range(5))
        v2 = tuple(rng.uniform(-1, 1) for _ in range(5))
        v3 = tuple(rng.uniform(-1, 1) for _ in range(5))
        lhs = eval_form("alpha2", pt, (tuple(2 * a + b for a, b in zip(v1, v3)), v2))
        rhs = 2 * eval_form("alpha2", pt, (v1, v2)) + eval_form("alpha2", pt, (v3, v2))
        assert lhs == pytest.approx(rhs, abs=1e-12)


class TestNumericD:
    def test_d_theta_matches_dtheta(self):
        pt = ChartPoint(x=(0.1, 0.2, 0.3), xi=0.7, eta=-0.2, pole="south")
        basis = [tuple(1.0 if j == i else 0.0 for j in range(5)) for i in range(5)]
        for pair in itertools.combinations(range(5), 2):
            vecs = [basis[i] for i in pair]
            assert numeric_d("theta", pt, vecs) == pytest.approx(
                eval_form("dtheta", pt, vecs), abs=1e-12
            )

    def test_d_squared_theta(self):
        pt = ChartPoint(x=(0.1, 0.2, 0.3), xi=0.7, eta=-0.2, pole="south")
        basis = [tuple(1.0 if j == i else 0.0 for j in range(5)) for i in range(5)]
        for triple in itertools.combinations(range(5), 3):
            vecs = [basis[i] for i in triple]
            assert numeric_d("dtheta", pt, vecs) == pytest.approx(0.0, abs=1e-12)

    def test_dual_vs_fd(self):
        pt = ChartPoint(x=(0.1, 0.2, 0.3), xi=0.7, eta=-0.2, pole="north")
        basis = [tuple(1.0 if j == i else 0.0 for j in range(5)) for i in range(5)]
        for triple in itertools.combinations(range(5), 3):
            vecs = [basis[i] for i in triple]
            a = numeric_d("alpha2", pt, vecs)
            b = numeric_d("alpha2", pt, vecs, method="fd")
            assert a == pytest.approx(b, abs=1e-6)


class TestVerifyFlatSystem:
    def test_residuals_small(self):
        rep = verify_flat_system(30, seed=11)
        assert rep["max_residual"] < 1e-8
        assert rep["ad_vs_fd"] < 1e-6
        assert rep["chart_disagreement"] < 1e-8
        assert set(rep["identities"]) == {
            "d(alpha0) = theta^alpha1",
            "d(alpha1) = 2*theta^alpha2",
            "d(alpha2) = 0",
            "d(d(theta)) = 0",
            "alpha0^alpha2 + (1/2)*alpha1^alpha1 = 0",
            "alpha0^alpha2 + (1/2)*dtheta^dtheta = 0",
            "alpha0^dtheta = 0",
            "alpha1^dtheta = 0",
            "alpha2^dtheta = 0",
        }

    def test_empty_report(self):
        rep = verify_flat_system(0, seed=3)
        assert rep["max_residual"] == 0.0
        assert rep["samples"] == 0

    def test_seed_determinism(self):
        assert verify_flat_system(10, seed=5) == verify_flat_system(10, seed=5)


class TestVerifyFlatSU3:
    def test_residuals_small(self):
        rep = verify_flat_su3(20, seed=11)
        assert rep["max_residual"] < 1e-8
        assert set(rep["identities"]) == {"d(F) = 0", "d(psi_plus) = 0", "d(psi_minus) = 0"}

    def test_seed_determinism(self):
        assert verify_flat_su3(5, seed=9) == verify_flat_su3(5, seed=9)

    def test_F_reduces_at_fixed_time(self):
        # F at t = 1 against the frame expansion at the adapted point
        pt, frame = adapted_frame_vectors(t=1.0)
        geom = GeometryParams(K=0, s2=1)
        # F = t dtheta - theta ∧ dt; at the adapted point dtheta(e3, e1) = 1
        assert eval_form("F", pt, (frame[3], frame[1])) == pytest.approx(1.0)
        assert eval_form("F", pt, (frame[0], frame[5])) == pytest.approx(-1.0)


class TestFrameOracleAgreement:
    """The structure-equation derivative against the chart derivative."""

    def test_d_invariant_matches_numeric_d(self):
        geom = GeometryParams(K=0, s2=1)
        pt, chart_frame = adapted_frame_vectors()
        frame = [FrameVector.basis(5, i) for i in range(5)]
        pairs = (("alpha0", "a0"), ("alpha1", "a1"), ("alpha2", "a2"), ("dtheta", "dth"))
        for name, base in pairs:
            dw = expand_invariant(d_invariant(InvariantForm.named(base), geom), geom)
            for combo in itertools.combinations(range(5), 3):
                sym = float(dw.evaluate([frame[i] for i in combo]))
                num = numeric_d(name, pt, [chart_frame[i] for i in combo])
                assert sym == pytest.approx(num, abs=1e-10)
