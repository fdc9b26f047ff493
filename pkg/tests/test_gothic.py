import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import gothic_brute_force

from compasskit.errors import DegenerateFigure, DomainError, NoInscribedCircle, UnequalRadii
from compasskit.geom import Circle, Point, is_tangent
from compasskit.gothic import GothicFigure, gothic_family, gothic_inscribe, gothic_oracle

PURE = {"given", "compass", "straightedge"}

# positive root of 0.04 rho^2 + 1.728 rho - 0.5376 = 0 and the matching offset
ASYM_RHO = 0.30890230020664455
ASYM_X = 0.6182195399586711


def tangency(a, b, d, x, rho):
    return (abs(math.hypot(x, rho) - (a - rho)), abs(math.hypot(d - x, rho) - (b - rho)))


class TestOracle:
    def test_unit(self):
        assert gothic_oracle(1, 1, 1) == pytest.approx((0.5, 0.375), abs=1e-12)

    def test_wider_base(self):
        assert gothic_oracle(1, 1, 1.5) == pytest.approx((0.75, 0.21875), abs=1e-12)

    def test_unequal_radii(self):
        x, rho = gothic_oracle(1, 0.8, 1)
        assert rho == pytest.approx(ASYM_RHO, abs=1e-12)
        assert x == pytest.approx(ASYM_X, abs=1e-12)
        assert 0.04 * rho ** 2 + 1.728 * rho - 0.5376 == pytest.approx(0, abs=1e-14)
        assert max(tangency(1, 0.8, 1, x, rho)) <= 1e-12

    def test_unequal_radii_rounded_figures_are_close(self):
        x, rho = gothic_oracle(1, 0.8, 1)
        assert abs(x - 0.6182188) < 1e-6 and abs(rho - 0.3089059) < 1e-5

    def test_semicircle(self):
        assert gothic_oracle(1, 1, 0) == (0.0, 0.5)

    @pytest.mark.parametrize("a,b,d", [(1, 1, 2), (1, 1, 3), (1, 0.2, 0.5), (1, 0.5, 0), (-1, 1, 1)])
    def test_no_arch(self, a, b, d):
        with pytest.raises(NoInscribedCircle):
            gothic_oracle(a, b, d)

    @settings(max_examples=150)
    @given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.001, 0.999))
    def test_residuals(self, a, b, t):
        lo, hi = abs(a - b), a + b
        d = lo + (hi - lo) * t
        if not lo < d < hi:
            return
        x, rho = gothic_oracle(a, b, d)
        assert 0 < rho < min(a, b)
        assert max(tangency(a, b, d, x, rho)) <= 1e-12 * max(a, b, d)

    def test_brute_force_agreement(self):
        rng = random.Random(2)
        for _ in range(50):
            a, b = rng.uniform(0.5, 2), rng.uniform(0.5, 2)
            d = rng.uniform(abs(a - b) + 0.05, a + b - 0.05)
            x, rho = gothic_oracle(a, b, d)
            bx, brho = gothic_brute_force(a, b, d)
            assert abs(x - bx) <= 1e-6 and abs(rho - brho) <= 1e-6


class TestConstruction:
    def test_unit(self):
        t = gothic_inscribe(GothicFigure(Point(0, 0), Point(1, 0), 1, 1))
        w = t["w"]
        assert w.center.dist(Point(0.5, 0.375)) <= 1e-9
        assert w.radius == pytest.approx(0.375, abs=1e-9)
        assert is_tangent(w, Circle(Point(0, 0), 1)) == (True, "internal")
        assert is_tangent(w, Circle(Point(1, 0), 1)) == (True, "internal")
        assert t["w_D0"].dist(Point(0.5, 0)) <= 1e-12

    def test_scaled(self):
        w = gothic_inscribe(GothicFigure(Point(0, 0), Point(2, 0), 2, 2))["w"]
        assert w.center.dist(Point(1, 0.75)) <= 1e-9 and abs(w.radius - 0.75) <= 1e-9

    def test_semicircle_limit(self):
        w = gothic_inscribe(GothicFigure(Point(0, 0), Point(1e-6, 0), 1, 1))["w"]
        assert abs(w.radius - 0.5) <= 1e-9

    def test_pure(self):
        t = gothic_inscribe(GothicFigure(Point(0, 0), Point(1, 0), 1, 1))
        assert t.class_set() <= PURE

    def test_unequal_rejected(self):
        with pytest.raises(UnequalRadii):
            gothic_inscribe(GothicFigure(Point(0, 0), Point(1, 0), 1, 0.8))

    def test_too_wide(self):
        with pytest.raises(DegenerateFigure):
            gothic_inscribe(GothicFigure(Point(0, 0), Point(2, 0), 1, 1))

    def test_agreement_over_random_figures(self):
        rng = random.Random(9)
        worst = 0.0
        for _ in range(1000):
            a = rng.uniform(0.2, 5)
            d = rng.uniform(0.01, 1.98) * a
            t = rng.uniform(0, 2 * math.pi)
            A = Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
            B = A + Point(math.cos(t), math.sin(t)) * d
            fig = GothicFigure(A, B, a, a)
            w = gothic_inscribe(fig)["w"]
            ref = fig.inscribed()
            worst = max(worst, w.center.dist(ref.center), abs(w.radius - ref.radius))
        assert worst <= 1e-9

    @settings(max_examples=60)
    @given(st.floats(0.2, 5), st.floats(0.02, 1.96), st.floats(0, 6.283))
    def test_tangency_property(self, a, frac, turn):
        B = Point(math.cos(turn), math.sin(turn)) * (frac * a)
        fig = GothicFigure(Point(0, 0), B, a, a)
        w = gothic_inscribe(fig)["w"]
        assert max(fig.residuals(w).values()) <= 1e-9 * max(1, a)


class TestFigure:
    def test_apex_and_tangency_point(self):
        fig = GothicFigure(Point(0, 0), Point(1, 0), 1, 1)
        assert fig.apex().dist(Point(0.5, math.sqrt(3) / 2)) <= 1e-12
        assert fig.tangency_point().dist(Point(0.5, 0)) <= 1e-12

    def test_asymmetric_residuals(self):
        fig = GothicFigure(Point(0, 0), Point(1, 0), 1, 0.8)
        assert max(fig.residuals().values()) <= 1e-12
        d0 = fig.tangency_point()
        assert d0.dist(Point(ASYM_X, 0)) <= 1e-12


class TestFamily:
    def test_values(self):
        rows = gothic_family(1, [0, 1])
        assert rows[0] == (0, 0, 0.5)
        assert rows[1][2] == pytest.approx(0.375, abs=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            gothic_family(1, [2])
        with pytest.raises(DomainError):
            gothic_family(1, [-0.1])

    def test_monotone(self):
        ds = [1.99 * i / 99 for i in range(100)]
        rhos = [r for _, _, r in gothic_family(1, ds)]
        assert all(p > q for p, q in zip(rhos, rhos[1:]))
        assert rhos[-1] < 0.01

    def test_matches_oracle(self):
        for d, x, rho in gothic_family(1.3, [0.1, 0.7, 1.9, 2.5]):
            assert (x, rho) == pytest.approx(gothic_oracle(1.3, 1.3, d), abs=1e-12)
