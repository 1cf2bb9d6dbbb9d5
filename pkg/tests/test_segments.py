import random

import pytest
from hypothesis import assume, given, strategies as st

from ckquad import numerics as nm
from ckquad.cli import sampling as sp
from ckquad.conic_metric import symmetry_points
from ckquad.errors import IsotropicPoint, NoProperMidpoint, NotOnLine
from ckquad.metric import (Metric, dual_point, is_isotropic, reflect,
                           segment_congruence_invariant)
from ckquad.projective import HLine, HPoint, conic_eval, incident, is_harmonic_range, join, on_conic
from ckquad.segments import (TRIANGLE_SIGNS, Segment, center_index, circumcenter, circumcircle,
                             concyclic, perpendicular_bisector, semi_midpoints, segment_contains,
                             triangle_contains)

from strategies import point

Q = nm.Q
ELL, HYP = Metric.elliptic(), Metric.hyperbolic()
SIX_POINT_ROWS = ((-43, 16, 6), (16, 75, 6), (6, 6, 0))


def P(*xs):
    return HPoint(tuple(Q(x) for x in xs))


class TestSemiMidpoints:
    def test_unit_vectors(self):
        sm = semi_midpoints(ELL, P(1, 0, 0), P(0, 1, 0))
        assert sm.M == P(1, 1, 0) and sm.N == P(1, -1, 0)
        assert sm.plus_proper and sm.minus_proper

    def test_fixture_midpoints(self):
        A, B, D = P(-3, 0, 4), P(0, 3, 4), P(0, -3, 4)
        assert semi_midpoints(ELL, A, B).M == P(-3, 3, 8)
        assert semi_midpoints(ELL, B, D).M == P(0, 0, 1)

    def test_isotropic_endpoint(self):
        with pytest.raises(IsotropicPoint):
            semi_midpoints(HYP, P(1, 0, 1), P(0, 0, 1))

    def test_mixed_classes_have_no_proper_midpoint(self):
        sm = semi_midpoints(HYP, P(0, 0, 1), P(2, 0, 1))
        assert not sm.plus_proper and not sm.minus_proper
        with pytest.raises(NoProperMidpoint):
            perpendicular_bisector(HYP, Segment(P(0, 0, 1), P(2, 0, 1)))

    @given(point, point)
    def test_harmonic_float(self, X, Y):
        for m in (ELL, HYP):
            if X == Y or is_isotropic(m, X) or is_isotropic(m, Y):
                continue
            Xf, Yf = X.to_float(), Y.to_float()
            sm = semi_midpoints(m, Xf, Yf)
            with nm.tolerance(1e-7):
                assert is_harmonic_range(Xf, sm.M, Yf, sm.N)

    @given(st.integers(0, 10_000))
    def test_proper_midpoints_swap_endpoints(self, seed):
        rng = random.Random(seed)
        for m in (ELL, HYP):
            cls = "inside" if m is HYP else None
            X, Y = sp.square_point(rng, m, cls), sp.square_point(rng, m, cls)
            assume(X != Y)
            sm = semi_midpoints(m, X, Y)
            assert sm.plus.exact
            for s in (1, -1):
                if sm.proper(s):
                    assert reflect(m, sm.inner(s).point, X) == Y
                    assert reflect(m, sm.outer(s).point, X) == Y


class TestSegments:
    def test_contains_midpoints(self):
        X, Y = P(1, 0, 0), P(0, 1, 0)
        sm = semi_midpoints(ELL, X, Y)
        assert segment_contains(ELL, Segment(X, Y, 1), sm.M)
        assert segment_contains(ELL, Segment(X, Y, -1), sm.N)
        assert not segment_contains(ELL, Segment(X, Y, 1), sm.N)
        assert segment_contains(ELL, Segment(X, Y, -1), X)

    def test_off_line(self):
        with pytest.raises(NotOnLine):
            segment_contains(ELL, Segment(P(1, 0, 0), P(0, 1, 0)), P(0, 0, 1))

    @given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
    def test_closure_under_sum(self, a, b, c, d):
        assume(a * d != b * c and (a or b) and (c or d))
        X, Y = P(-3, 0, 4), P(75, -24, 32)
        R = HPoint(nm.lincomb((Q(a), X.coords), (Q(b), Y.coords)))
        S = HPoint(nm.lincomb((Q(c), X.coords), (Q(d), Y.coords)))
        seg = Segment(X, Y, 1)
        assert segment_contains(ELL, seg, R) and segment_contains(ELL, seg, S)
        with nm.tolerance(1e-9):
            assert segment_contains(ELL, seg, semi_midpoints(ELL, R, S).M.to_float())

    def test_perpendicular_bisector(self):
        X, Y = P(1, 0, 0), P(0, 1, 0)
        b = perpendicular_bisector(ELL, Segment(X, Y, 1))
        assert b == HLine((Q(1), Q(-1), Q(0)))
        assert incident(P(1, 1, 0), b)
        assert incident(dual_point(ELL, join(X, Y)), b)


class TestTriangles:
    E = (P(1, 0, 0), P(0, 1, 0), P(0, 0, 1))

    def test_membership(self):
        assert triangle_contains(0, *self.E, P(1, 1, 1))
        assert not triangle_contains(0, *self.E, P(1, -1, 1))
        assert all(triangle_contains(i, *self.E, self.E[0]) for i in range(4))

    def test_signs_cover_the_plane(self):
        X = P(3, -5, 7)
        assert sum(triangle_contains(i, *self.E, X) for i in range(4)) == 1

    def test_inner_midpoint_on_boundary(self):
        M = semi_midpoints(ELL, self.E[0], self.E[1]).M
        assert triangle_contains(0, *self.E, M)
        assert triangle_contains(3, *self.E, M)

    def test_orthonormal_circumcircle(self):
        c = circumcircle(ELL, 0, *self.E)
        assert c.mat.rows == tuple(tuple(Q(x) for x in r) for r in ((0, 1, 1), (1, 0, 1), (1, 1, 0)))
        assert circumcenter(ELL, 0, *self.E) == P(1, 1, 1)
        assert on_conic(c, P(2, 2, -1))
        assert concyclic(ELL, *self.E, P(2, 2, -1)) == {0}
        assert conic_eval(c, P(1, 1, 1)) == 6
        assert 0 not in concyclic(ELL, *self.E, P(1, 1, 1))

    @pytest.mark.parametrize("plane", ["elliptic", "hyperbolic"])
    @pytest.mark.parametrize("index", range(4))
    def test_center_is_bisector_meet(self, plane, index):
        m = Metric.canonical(plane)
        rng = random.Random(index)
        for _ in range(5):
            Q4, O = sp.concyclic_quadrangle_for_index(rng, m, index)
            A, B, C, D = Q4.vertices
            assert circumcenter(m, index, A, B, C) == O
            assert center_index(m, O, A, B, C) == index
            assert index in concyclic(m, A, B, C, D)
            e = TRIANGLE_SIGNS[index]
            for (a, X), (b, Y) in (((0, A), (1, B)), ((1, B), (2, C)), ((0, A), (2, C))):
                sm = semi_midpoints(m, X, Y)
                assert incident(O, perpendicular_bisector(m, Segment(X, Y, e[a] * e[b]))) \
                    if sm.proper(e[a] * e[b]) else sm.outer(e[a] * e[b]).on_line(
                        HLine(m.G.apply(O.coords)))
            K = circumcircle(m, index, A, B, C)
            assert symmetry_points(m, K).points == [O]
            if not is_isotropic(m, O):
                invariants = {segment_congruence_invariant(m, O, X) for X in Q4.vertices}
                assert len(invariants) == 1
