import pytest
from hypothesis import given, strategies as st

from ckquad import numerics as nm
from ckquad.errors import FullRank, RankDeficientAmbiguous, ZeroVector

from strategies import fraction, nonzero_fraction, vec

Q = nm.Q


def v(*xs):
    return tuple(Q(x) for x in xs)


class TestProjectivelyEqual:
    def test_scalar_multiple(self):
        assert nm.projectively_equal(v(1, 2, 3), v(2, 4, 6))

    def test_distinct_basis(self):
        assert not nm.projectively_equal(v(1, 0, 0), v(0, 1, 0))

    def test_meet_representative(self):
        assert nm.projectively_equal(v(-600, 492, 144), v(-50, 41, 12))

    def test_float_relative_tolerance(self):
        a = (1e6, 2e6, 3e6)
        b = (1.0, 2.0 + 1e-12, 3.0)
        assert nm.projectively_equal(a, b)
        assert not nm.projectively_equal(a, (1.0, 2.001, 3.0))

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroVector):
            nm.projectively_equal(v(0, 0, 0), v(1, 0, 0))

    @given(vec, nonzero_fraction)
    def test_scale_exact(self, a, lam):
        a = v(*a)
        assert nm.projectively_equal(a, nm.smul(lam, a))

    @given(vec, vec)
    def test_backends_agree(self, a, b):
        exact = nm.projectively_equal(v(*a), v(*b))
        floating = nm.projectively_equal(tuple(map(float, a)), tuple(map(float, b)))
        assert exact == floating


class TestSolveLinear:
    def test_coordinate_kernel(self):
        assert nm.projectively_equal(nm.solve_linear_3([v(1, 0, 0), v(0, 1, 0)]), v(0, 0, 1))

    def test_two_rows(self):
        assert nm.solve_linear_3([v(1, 1, 0), v(0, 1, 1)]) == v(1, -1, 1)

    def test_repeated_row(self):
        with pytest.raises(RankDeficientAmbiguous):
            nm.solve_linear_3([v(1, 0, 0), v(2, 0, 0)])

    def test_full_rank(self):
        with pytest.raises(FullRank):
            nm.solve_linear_3([v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)])

    @given(vec, vec)
    def test_kernel_is_orthogonal(self, a, b):
        a, b = v(*a), v(*b)
        try:
            k = nm.solve_linear_3([a, b])
        except RankDeficientAmbiguous:
            assert nm.is_zero_vec(nm.cross(a, b))
            return
        assert nm.dot(a, k) == 0 and nm.dot(b, k) == 0


class TestScalars:
    def test_lowest_terms(self):
        x = Q(6, -4)
        assert (x.numerator, x.denominator) == (-3, 2)

    def test_string_round_trip(self):
        assert nm.format_scalar(Q(3, 4)) == "3/4"
        assert nm.to_scalar("3/4") == Q(3, 4)

    def test_sqrt_exact(self):
        assert nm.sqrt_exact(Q(9, 4)) == Q(3, 2)
        assert nm.sqrt_exact(Q(2)) is None

    def test_canonical_integer_representative(self):
        assert nm.canonical(v(-600, 492, 144)) == v(-50, 41, 12)
        assert nm.canonical(v(50, -41, -12)) == v(-50, 41, 12)

    def test_chi(self):
        assert nm.chi(v(0, 1, -2)) == -1
        assert nm.chi(v(5, 0, 0)) == 1

    def test_tolerance_context(self):
        base = nm.get_tol()
        with nm.tolerance(1e-3):
            assert nm.get_tol() == 1e-3
            assert nm.is_zero(1e-4, 1.0)
        assert nm.get_tol() == base

    @given(vec)
    def test_canonical_is_chi_positive(self, a):
        c = nm.canonical(v(*a))
        assert nm.chi(c) == 1 and nm.projectively_equal(c, v(*a))

    @given(fraction, fraction)
    def test_mixed_backend_promotes(self, a, b):
        r = nm.dot((a, b, Q(1)), (1.0, 1.0, 1.0))
        assert isinstance(r, float)
