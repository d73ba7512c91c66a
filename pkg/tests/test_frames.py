"""Invariant calculus: generators, structure equations, extended derivative,
and the basis bridge."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_geometry, rational
from su2bundle.errors import SpanError
from su2bundle.exterior import KForm, equals, wedge
from su2bundle.frames import (
    GeometryParams,
    InvariantForm,
    d_extended,
    d_invariant,
    expand_invariant,
    generator,
    project_invariant,
)
from su2bundle.poly import Poly

F = Fraction
GEOM = GeometryParams(K=3, s2=F(1, 3))


class TestGeometryParams:
    def test_r_is_twice_K(self):
        assert GEOM.r == 6

    def test_s_exact_when_square(self):
        g = GeometryParams(K=0, s2=F(1, 4))
        assert g.s == F(1, 2)

    def test_radius_constructor(self):
        g = GeometryParams.from_radius(K=1, s=2)
        assert g.s2 == 4

    def test_positive_radius_required(self):
        with pytest.raises(ValueError):
            GeometryParams(K=0, s2=0)


class TestGenerators:
    def test_alpha1(self):
        assert generator("alpha1", GEOM).terms == {(1, 4): 1, (2, 3): -1}

    def test_theta_scales_with_radius(self):
        g = GeometryParams.from_radius(K=0, s=2)
        assert generator("theta", g).terms == {(0,): 2}

    def test_psi1(self):
        assert generator("psi1", GEOM).terms == {(1, 4): 1, (2, 3): 1}

    def test_volumes(self):
        assert generator("vol4", GEOM).terms == {(1, 2, 3, 4): 1}
        assert generator("vol5", GEOM).terms == {(0, 1, 2, 3, 4): 1}

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            generator("nope", GEOM)


class TestDerivative:
    def test_d_alpha0(self):
        out = d_invariant(InvariantForm.named("a0"), GEOM)
        assert out.terms == {(0, 1, "a1"): Poly.const(F(3))}

    def test_d_dtheta_is_zero(self):
        assert d_invariant(InvariantForm.named("dth"), GEOM).is_zero_exact()

    def test_d_theta_wedge_alpha1_closed_any_geometry(self):
        rng = random.Random(11)
        for _ in range(20):
            geom = random_geometry(rng)
            w = InvariantForm.theta().wedge(InvariantForm.named("a1"))
            assert d_invariant(w, geom).is_zero_exact()

    def test_d_alpha1(self):
        out = d_invariant(InvariantForm.named("a1"), GEOM)
        assert out.coeff((0, 1, "a2")) == Poly.const(F(6))
        assert out.coeff((0, 1, "a0")) == Poly.const(F(-6))

    def test_d_alpha2(self):
        out = d_invariant(InvariantForm.named("a2"), GEOM)
        assert out.terms == {(0, 1, "a1"): Poly.const(F(-3))}


class TestExtendedDerivative:
    def test_flat_F_closed(self):
        geom = GeometryParams(K=0, s2=1)
        F6 = InvariantForm.named("dth", 6) * Poly.t() - InvariantForm.theta(6).wedge(InvariantForm.dt())
        assert d_extended(F6, geom).is_zero_exact()

    def test_d_of_t_scalar(self):
        geom = GeometryParams(K=0, s2=1)
        out = d_extended(InvariantForm.scalar(Poly.t(), 6), geom)
        assert out.terms == {(1, 0, "1"): Poly.const(1)}

    def test_flat_psi_plus_closed(self):
        geom = GeometryParams(K=0, s2=1)
        th = InvariantForm.theta(6)
        dt = InvariantForm.dt()
        a0 = InvariantForm.named("a0", 6)
        a1 = InvariantForm.named("a1", 6)
        a2 = InvariantForm.named("a2", 6)
        t, t2 = Poly.t(), Poly.t() * Poly.t()
        psi = th.wedge(a0) - th.wedge(a2) * t2 - a1.wedge(dt) * t
        assert d_extended(psi, geom).is_zero_exact()

    def test_mode_enforcement(self):
        with pytest.raises(ValueError):
            d_extended(InvariantForm.named("a0"), GEOM)
        with pytest.raises(ValueError):
            d_invariant(InvariantForm.named("a0", 6), GEOM)


class TestWedgeIdentities:
    """The four invariant 2-forms after expansion to the coframe."""

    def test_pairwise_products(self):
        geom = GEOM
        a0 = generator("alpha0", geom)
        a1 = generator("alpha1", geom)
        a2 = generator("alpha2", geom)
        dth = generator("dtheta", geom)
        vol = generator("vol4", geom)
        assert equals(wedge(a0, a2), vol)
        assert equals(wedge(a1, a1), -2 * vol)
        assert equals(wedge(dth, dth), -2 * vol)
        assert wedge(a0, a1).terms == {}
        assert wedge(a2, a1).terms == {}
        for f in (a0, a1, a2):
            assert wedge(f, dth).terms == {}

    def test_five_form_normalization(self):
        # theta ∧ e1234 = s * e01234, the wedge shadow of the coclosure identity
        for s2 in (F(1, 3), F(1, 4), 4):
            g = GeometryParams(K=1, s2=s2)
            lhs = wedge(generator("theta", g), generator("vol4", g))
            assert equals(lhs, g.s * generator("vol5", g))
            full = wedge(generator("theta", g), wedge(generator("alpha0", g),
                                                      generator("alpha2", g)))
            assert equals(full, g.s * generator("vol5", g))


class TestProjection:
    def test_expand_alpha1(self):
        out = expand_invariant(InvariantForm.two_form((0, 1, 0, 0)), GEOM)
        assert out.terms == {(1, 4): 1, (2, 3): -1}

    def test_round_trip_random(self):
        rng = random.Random(5)
        for _ in range(25):
            geom = random_geometry(rng)
            w = InvariantForm.two_form(tuple(rational(rng) for _ in range(4)))
            back = project_invariant(expand_invariant(w, geom), geom)
            assert (back - w).is_zero_exact()

    def test_round_trip_grade3(self):
        w = InvariantForm.theta().wedge(InvariantForm.two_form((1, -2, F(1, 3), 5)))
        back = project_invariant(expand_invariant(w, GEOM), GEOM)
        assert (back - w).is_zero_exact()

    def test_outside_span_reports_residual(self):
        with pytest.raises(SpanError) as err:
            project_invariant(KForm(5, 2, {(0, 1): 1}), GEOM)
        assert err.value.residual == pytest.approx(1.0)

    def test_psi_component_outside_span(self):
        with pytest.raises(SpanError):
            project_invariant(generator("psi1", GEOM), GEOM)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_d_squared_zero_static(seed):
    rng = random.Random(seed)
    geom = random_geometry(rng)
    terms = {}
    for mono in [(0, 0, "a0"), (0, 0, "a1"), (0, 0, "a2"), (0, 0, "dth"),
                 (0, 1, "1"), (0, 1, "a0"), (0, 1, "dth"), (0, 0, "1")]:
        if rng.random() < 0.6:
            terms[mono] = rational(rng)
    w = InvariantForm(5, terms)
    assert d_invariant(d_invariant(w, geom), geom).is_zero_exact()


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_d_squared_zero_extended(seed):
    rng = random.Random(seed)
    geom = random_geometry(rng)
    terms = {}
    for mono in [(0, 0, "a0"), (0, 1, "a1"), (0, 0, "dth"), (0, 1, "1"),
                 (1, 0, "a2"), (1, 1, "a0"), (1, 0, "1"), (0, 0, "E")]:
        if rng.random() < 0.6:
            terms[mono] = Poly(tuple(rational(rng) for _ in range(rng.randint(1, 4))))
    w = InvariantForm(6, terms)
    assert d_extended(d_extended(w, geom), geom).is_zero_exact()


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_d_invariant_matches_expanded_wedge_leibniz(seed):
    """d of a wedge agrees with the Leibniz combination, expanded to the coframe."""
    rng = random.Random(seed)
    geom = random_geometry(rng)
    u = InvariantForm.two_form(tuple(rational(rng) for _ in range(4)))
    th = InvariantForm.theta() * rational(rng)
    dw = d_invariant(th.wedge(u), geom)
    rhs = d_invariant(th, geom).wedge(u) - th.wedge(d_invariant(u, geom))
    assert (dw - rhs).is_zero_exact()
