import math
import random

import pytest
from hypothesis import given, strategies as st

from ckquad import numerics as nm
from ckquad.cli import sampling as sp
from ckquad.cli.scene import fixture
from ckquad.conic_metric import centers, circle_about
from ckquad.errors import (CoincidentMidpoints, DegenerateQuadrangle, DegenerateSymmetricInput,
                           IsotropicElement,
                           KIsCircle, KNotThroughVertices, LineThroughVertex, ParallelTangents)
from ckquad.metric import Metric, dual_line, normalize
from ckquad.projective import (Conic, HLine, HPoint, SymMat3, collinear, conic_eval,
                               conic_from_lines, incident, join, on_conic)
from ckquad.quadri.figures import (Quadrangle, Tetragon, canonical_frame, diagonal_points)
from ckquad.quadri.newton import (frame_newton_line, newton_duality_holds, newton_line,
                                  semi_centroid, theorem6b_check)
from ckquad.quadri.ninepoint import (bocher_nine_point, nine_point_conic, odehnal_points,
                                     tetragraph_six_point_conic, theorem5_check)
from ckquad.quadri.tangential import (tangential_tetragon_from_circle, theorem6_midpoint_conic,
                                      theorem7_inconic_check)
from ckquad.quadri.theorem1 import (fit_through, harmonic_matrix, theorem1_conic,
                                    theorem1_points, theorem1_vertices, theorem2_conic,
                                    theorem3_conic)
from ckquad.segments import circumcenter, circumcircle, semi_midpoints

Q = nm.Q
ELL, HYP = Metric.elliptic(), Metric.hyperbolic()
unit = st.builds(Q, st.integers(1, 11), st.just(12))
nonzero = st.builds(Q, st.integers(-20, 20).filter(bool), st.integers(1, 7))


def P(*xs):
    return HPoint(tuple(Q(x) for x in xs))


FIXTURE = Quadrangle(P(-3, 0, 4), P(0, 3, 4), P(75, -24, 32), P(0, -3, 4))
SQUARE = Quadrangle(P(-1, 1, 1), P(-1, -1, 1), P(1, -1, 1), P(1, 1, 1))
SIX_POINT = Conic(SymMat3.from_entries(-43, 16, 6, 75, 6, 0))
ORTHO = (P(1, 0, 0), P(0, 1, 0), P(0, 0, 1))


class TestFigures:
    def test_fixture_diagonal_points(self):
        assert diagonal_points(FIXTURE) == (P(-50, 41, 12), P(0, -2, 11), P(-6, -3, 4))

    def test_square_diagonal_points(self):
        assert diagonal_points(SQUARE) == (P(1, 0, 0), P(0, 0, 1), P(0, 1, 0))

    def test_collinear_vertices(self):
        with pytest.raises(DegenerateQuadrangle):
            Quadrangle(P(1, 0, 0), P(0, 1, 0), P(1, 1, 0), P(0, 0, 1))

    def test_square_frame(self):
        F = canonical_frame(ELL, SQUARE)
        assert (F.s, F.t) == (1, 1)
        assert all(math.isclose(x, math.sqrt(3)) for x in F.normalizers)

    @given(nonzero, nonzero)
    def test_frame_round_trip(self, s, t):
        Qd = Quadrangle(*theorem1_vertices(s, t))
        F = canonical_frame(ELL, Qd)
        assert math.isclose(abs(float(F.s)), abs(float(s)), rel_tol=1e-9)
        assert math.isclose(abs(float(F.t)), abs(float(t)), rel_tol=1e-9)

    def test_isotropic_diagonal_point(self):
        Qd = Quadrangle(P(0, 2, 1), P(0, -2, 1), P(2, -2, 1), P(2, 2, 1))
        assert diagonal_points(Qd)[1] == P(1, 0, 1)
        with pytest.raises(IsotropicElement):
            canonical_frame(HYP, Qd)

    def test_complementary_involution(self):
        T = Tetragon(SQUARE, "+--+")
        assert T.complementary().signs == (-1, 1, 1, -1)
        assert T.complementary().complementary() == T


class TestTheorems123:
    def test_symmetric_collapse(self):
        m = harmonic_matrix(Q(2), Q(3), Q(1, 2), Q(1, 3), Q(1, 3))
        assert m.rows[1][2] == 0

    def test_exact_example(self):
        args = (Q(1), Q(1), Q(1, 2), Q(1, 3), Q(1, 4))
        K = theorem1_conic(*args)
        pts = theorem1_points(*args)
        assert all(conic_eval(K, X) == 0 for X in pts)
        assert fit_through(pts) == K

    @given(nonzero, nonzero, unit, unit, unit)
    def test_theorem1(self, s, t, u, v, w):
        K = theorem1_conic(s, t, u, v, w)
        pts = theorem1_points(s, t, u, v, w)
        assert all(conic_eval(K, X) == 0 for X in pts)

    @given(st.integers(0, 10_000))
    def test_theorem2(self, seed):
        rng = random.Random(seed)
        d = theorem2_conic(sp.random_quadrangle(rng, ELL), *(sp.unit_fraction(rng) for _ in range(3)))
        assert all(d.touching)

    def test_theorem3_square_degenerates(self):
        # A°+C° and B°+D° both coincide with P2, so the six points are only four
        with pytest.raises(DegenerateSymmetricInput):
            theorem3_conic(ELL, SQUARE)

    @pytest.mark.parametrize("metric", [ELL, HYP], ids=["elliptic", "hyperbolic"])
    def test_theorem3_random(self, metric):
        rng = random.Random(11)
        for _ in range(10):
            r = theorem3_conic(metric, sp.random_quadrangle(rng, metric))
            assert all(r.on_formula) and all(r.on_fit) and r.conic == r.fitted


class TestSixPointConic:
    def test_elliptic_fixture(self):
        K = tetragraph_six_point_conic(ELL, FIXTURE, (1,) * 6)
        assert K == SIX_POINT
        assert all(not on_conic(K, X) for X in diagonal_points(FIXTURE))
        assert conic_eval(SIX_POINT, P(-6, -3, 4)) == -729

    def test_hyperbolic_noncongruent_fixture(self):
        scene = fixture("hyperbolic-noncongruent")
        A, B, C, D = (scene.points[k] for k in "ABCD")
        assert tetragraph_six_point_conic(HYP, Quadrangle(A, B, C, D), (1,) * 6) is not None
        line = join(P(1, 0, 0), HPoint((0.0, -19 - 3 * math.sqrt(30), 14.0)))
        for X in (B, C, D):
            assert incident(semi_midpoints(HYP, A, X).N, line)

    def test_wrong_sign_count(self):
        with pytest.raises(ValueError):
            tetragraph_six_point_conic(ELL, FIXTURE, (1,) * 5)


class TestNinePoint:
    def test_orthonormal_frame(self):
        Qd = Quadrangle(*ORTHO, P(2, 2, -1))
        data = nine_point_conic(ELL, Qd)
        assert [d.index for d in data] == [0]
        M0 = Conic(SymMat3.from_entries(-4, 4, -2, -4, -2, 8))
        assert data[0].conic == M0 and on_conic(M0, P(1, 1, 0))
        assert data[0].ok and data[0].center == P(1, 1, 1)

    def test_perturbed(self):
        Qd = Quadrangle(*ORTHO, P(2, 2, Q(-11, 10)))
        assert nine_point_conic(ELL, Qd) == []
        K = tetragraph_six_point_conic(ELL, Qd, (1,) * 6)
        assert K is None or not all(on_conic(K, X) for X in diagonal_points(Qd))

    @pytest.mark.parametrize("metric", [ELL, HYP], ids=["elliptic", "hyperbolic"])
    def test_two_circles(self, metric):
        Qd = sp.two_circle_quadrangle(random.Random(3), metric, (0, 2))
        data = nine_point_conic(metric, Qd)
        assert [d.index for d in data] == [0, 2]
        assert all(d.ok for d in data) and data[0].conic != data[1].conic

    @pytest.mark.parametrize("metric", [ELL, HYP], ids=["elliptic", "hyperbolic"])
    def test_bocher_matches_nine_point(self, metric):
        rng = random.Random(4)
        for i in range(4):
            Qd, O = sp.concyclic_quadrangle_for_index(rng, metric, i)
            d = nine_point_conic(metric, Qd)
            b = bocher_nine_point(Qd, dual_line(metric, O))
            assert b.ok and any(x.conic == b.conic for x in d)

    def test_bocher_line_through_vertex(self):
        with pytest.raises(LineThroughVertex):
            bocher_nine_point(FIXTURE, join(FIXTURE.A, P(1, 2, 3)))

    def test_odehnal_on_circumcircle(self):
        rng = random.Random(8)
        Qd, O = sp.concyclic_quadrangle_for_index(rng, ELL, 0)
        K = circumcircle(ELL, 0, *Qd.vertices[:3])
        L = dual_line(ELL, O)
        N = bocher_nine_point(Qd, L).conic
        assert all(on_conic(N, X) for X in odehnal_points(Qd, K, L))

    def test_odehnal_missing_vertex(self):
        with pytest.raises(KNotThroughVertices):
            odehnal_points(FIXTURE, SIX_POINT, HLine((Q(1), Q(1), Q(1))))

    def test_theorem5_branches(self):
        rng = random.Random(9)
        Qd, O = sp.concyclic_quadrangle_for_index(rng, ELL, 0)
        data = nine_point_conic(ELL, Qd)[0]
        assert theorem5_check(ELL, data, data.circle)
        pair = conic_from_lines(join(Qd.A, Qd.B), join(Qd.C, Qd.D))
        assert theorem5_check(ELL, data, pair)
        assert any(X == diagonal_points(Qd)[2] for X in centers(ELL, pair))


class TestTangential:
    def _square(self):
        r = Q(3, 5)
        K = Conic(SymMat3.from_entries(1, 0, 0, 1, 0, -r * r))
        contacts = [P(3, 0, 5), P(0, 3, 5), P(-3, 0, 5), P(0, -3, 5)]
        return K, tangential_tetragon_from_circle(HYP, K, contacts)

    def test_concentric_square(self):
        _, d = self._square()
        assert d.concentric and d.center == P(0, 0, 1)
        assert sorted(nm.canonical(X.coords) for X in d.tetragon.vertices) == sorted(
            nm.canonical(X.coords) for X in (P(3, 3, 5), P(-3, 3, 5), P(-3, -3, 5), P(3, -3, 5)))

    def test_symmetric_distinctness_drops(self):
        _, d = self._square()
        m = theorem6_midpoint_conic(HYP, d)
        assert m.ok and m.distinct_count() < 16

    def test_coincident_tangents(self):
        K, _ = self._square()
        with pytest.raises(ParallelTangents):
            tangential_tetragon_from_circle(HYP, K, [P(3, 0, 5)] * 2 + [P(-3, 0, 5), P(0, -3, 5)])

    @pytest.mark.parametrize("metric", [ELL, HYP], ids=["elliptic", "hyperbolic"])
    def test_generic(self, metric):
        rng = random.Random(2)
        for _ in range(5):
            d = sp.tangential_configuration(rng, metric)
            m = theorem6_midpoint_conic(metric, d)
            assert m.ok and m.verified_count >= 16

    def test_incircle_is_rejected(self):
        K, d = self._square()
        m = theorem6_midpoint_conic(HYP, d)
        with pytest.raises(KIsCircle):
            theorem7_inconic_check(HYP, d, K, m.conic)


class TestNewton:
    def test_square_centroid(self):
        assert semi_centroid(ELL, Tetragon(SQUARE)) == P(0, 0, 1)
        with pytest.raises(CoincidentMidpoints):
            semi_centroid(ELL, Tetragon(SQUARE, "----"))

    @pytest.mark.parametrize("metric", [ELL, HYP], ids=["elliptic", "hyperbolic"])
    def test_duality(self, metric):
        rng = random.Random(6)
        for _ in range(10):
            assert newton_duality_holds(metric, sp.random_tetragon(rng, metric))

    def test_frame_formula(self):
        rng = random.Random(7)
        for _ in range(10):
            T = sp.random_tetragon(rng, ELL, signs="+--+")
            F = canonical_frame(ELL, T.quad)
            with nm.tolerance(1e-8):
                assert frame_newton_line(F) == HLine(tuple(float(x) for x in newton_line(ELL, T).coords))

    @pytest.mark.parametrize("metric", [ELL, HYP], ids=["elliptic", "hyperbolic"])
    def test_plus_minus_minus_plus(self, metric):
        # with chi-normalized representatives the incident pair is A°-C°, B°+D°
        rng = random.Random(12)
        for _ in range(10):
            T = sp.random_tetragon(rng, metric, signs="+--+")
            r = theorem6b_check(metric, T)
            assert r.ac == (-1,) and r.bd == (1,)

    def test_odd_signs(self):
        rng = random.Random(13)
        for _ in range(10):
            T = sp.random_tetragon(rng, ELL, signs="+---")
            r = theorem6b_check(ELL, T)
            assert r.ac == () and r.bd == ()
