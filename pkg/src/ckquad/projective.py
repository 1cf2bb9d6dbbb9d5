"""Incidence geometry of the real projective plane.

Points and lines are homogeneous triples; conics are symmetric 3x3 forms.
Everything works on both scalar backends (see :mod:`ckquad.numerics`).
"""

from __future__ import annotations

from functools import cached_property

from . import numerics as nm
from .errors import (CoincidentArguments, CoincidentPoints, DegenerateInput,
                     LineInConic, NotCollinear, PCoincidesWithEndpoint,
                     SingularConic, UnderDetermined, ZeroPolar, ZeroVector)


class _Homogeneous:
    __slots__ = ("coords", "_exact")

    def __init__(self, *coords):
        c = nm.vec(*coords)
        if len(c) != 3:
            raise ValueError("homogeneous triples have three coordinates")
        if nm.is_zero_vec(c):
            raise ZeroVector(f"{type(self).__name__} needs a nonzero coordinate vector")
        object.__setattr__(self, "coords", c)
        object.__setattr__(self, "_exact", nm.is_exact(c))

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return 3

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return nm.projectively_equal(self.coords, other.coords)

    __hash__ = None

    @property
    def exact(self) -> bool:
        return self._exact

    def canonical(self):
        return type(self)(nm.canonical(self.coords))

    def to_float(self):
        return type(self)(tuple(float(x) for x in self.coords))

    def __repr__(self):
        c = nm.canonical(self.coords)
        body = ":".join(str(nm.format_scalar(x)) if self.exact else f"{x:.6g}" for x in c)
        return f"{type(self).__name__}[{body}]"


class HPoint(_Homogeneous):
    """Point ``[p1:p2:p3]`` of P(R^3)."""


class HLine(_Homogeneous):
    """Line ``{x : l1 x1 + l2 x2 + l3 x3 = 0}``."""


def incident(P: HPoint, L: HLine) -> bool:
    v = nm.dot(nm.unit_scale(P.coords), nm.unit_scale(L.coords))
    return nm.is_zero(v)


def join(P: HPoint, Q: HPoint) -> HLine:
    if P == Q:
        raise CoincidentArguments("join of coincident points")
    return HLine(nm.cross(P.coords, Q.coords))


def meet(L: HLine, M: HLine) -> HPoint:
    if L == M:
        raise CoincidentArguments("meet of coincident lines")
    return HPoint(nm.cross(L.coords, M.coords))


def collinear(*points) -> bool:
    vs = [nm.unit_scale(p.coords) for p in points]
    for i in range(2, len(vs)):
        if not nm.is_zero(nm.det3(vs[0], vs[1], vs[i])):
            return False
    return True


def _coefficients_on(A, B, X):
    """(alpha, beta) with X = alpha*A + beta*B, assuming X on A v B."""
    a, b, x = (nm.unit_scale(v.coords) for v in (A, B, X))
    n = nm.cross(a, b)
    nn = nm.dot(n, n)
    return nm.dot(nm.cross(x, b), n) / nn, nm.dot(nm.cross(a, x), n) / nn


def cross_ratio(A, B, C, D):
    """(A,B;C,D) for four distinct collinear points (or concurrent lines).

    With C = c1*A + c2*B and D = d1*A + d2*B the value is (c2/c1)/(d2/d1);
    harmonic position is -1.
    """
    pts = (A, B, C, D)
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i] == pts[j]:
                raise CoincidentPoints("cross ratio needs four distinct elements")
    if not collinear(A, B, C, D):
        raise NotCollinear("cross ratio needs collinear points")
    c1, c2 = _coefficients_on(A, B, C)
    d1, d2 = _coefficients_on(A, B, D)
    return (c2 * d1) / (c1 * d2)


def harmonic_conjugate(P, A, B):
    """P' with (A,B;P,P') = -1; works for points and for pencils of lines."""
    if A == B:
        raise CoincidentPoints("harmonic conjugate needs A != B")
    if P == A or P == B:
        raise PCoincidesWithEndpoint("P coincides with an endpoint")
    if not collinear(A, B, P):
        raise NotCollinear("P is not on the line A v B")
    alpha, beta = _coefficients_on(A, B, P)
    a, b = nm.unit_scale(A.coords), nm.unit_scale(B.coords)
    return type(P)(nm.sub(nm.smul(alpha, a), nm.smul(beta, b)))


def is_harmonic_range(A, M, B, N) -> bool:
    """True iff (A,B;M,N) = -1."""
    if not collinear(A, M, B, N):
        raise NotCollinear("harmonic range needs collinear points")
    return nm.is_zero(cross_ratio(A, B, M, N) + 1)


# ---------------------------------------------------------------- conics

class SymMat3:
    """Symmetric 3x3 matrix, stored by rows."""

    __slots__ = ("rows", "_exact")

    def __init__(self, rows):
        m = nm.mat(rows)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise ValueError("SymMat3 needs a 3x3 array")
        for i in range(3):
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ValueError("matrix is not symmetric")
        object.__setattr__(self, "rows", m)
        object.__setattr__(self, "_exact", nm.is_exact(m))

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    @classmethod
    def from_entries(cls, m11, m12, m13, m22, m23, m33):
        return cls(((m11, m12, m13), (m12, m22, m23), (m13, m23, m33)))

    @classmethod
    def diag(cls, a, b, c):
        return cls.from_entries(a, 0, 0, b, 0, c)

    @property
    def entries(self):
        r = self.rows
        return (r[0][0], r[0][1], r[0][2], r[1][1], r[1][2], r[2][2])

    @property
    def exact(self) -> bool:
        return self._exact

    def apply(self, v):
        return nm.mat_vec(self.rows, v)

    def form(self, p, q=None):
        return nm.quad_form(self.rows, p, q)

    def det(self):
        return nm.det(self.rows)

    def adjugate(self) -> "SymMat3":
        a = nm.adjugate(self.rows)
        # symmetrize to absorb float round-off
        return SymMat3(tuple(tuple((a[i][j] + a[j][i]) / 2 if not nm.is_exact(a) else a[i][j]
                                   for j in range(3)) for i in range(3)))

    def scaled(self, k) -> "SymMat3":
        return SymMat3(tuple(tuple(k * x for x in r) for r in self.rows))

    def supnorm(self) -> float:
        return nm.mat_supnorm(self.rows)

    def to_float(self) -> "SymMat3":
        return SymMat3(tuple(tuple(float(x) for x in r) for r in self.rows))

    def __eq__(self, other):
        if not isinstance(other, SymMat3):
            return NotImplemented
        return self.rows == other.rows

    __hash__ = None

    def __repr__(self):
        return f"SymMat3({[[nm.format_scalar(x) for x in r] for r in self.rows]})"


def congruent_transform(M: SymMat3, T) -> SymMat3:
    """Matrix of the form ``x -> (T x)^t M (T x)``, i.e. ``T^t M T``."""
    out = nm.mat_mul(nm.transpose(T), nm.mat_mul(M.rows, T))
    if not nm.is_exact(out):
        out = tuple(tuple((out[i][j] + out[j][i]) / 2 for j in range(3)) for i in range(3))
    return SymMat3(out)


class Conic:
    """Point conic ``{P : P^t M P = 0}``; equality is projective."""

    def __init__(self, m):
        if not isinstance(m, SymMat3):
            m = SymMat3(m)
        if all(x == 0 for x in m.entries):
            raise ZeroVector("conic matrix is zero")
        object.__setattr__(self, "mat", m)

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    @cached_property
    def singular(self) -> bool:
        m = self.mat
        u = m if m.exact else m.scaled(1 / m.supnorm())
        return nm.is_zero(u.det())

    @property
    def exact(self) -> bool:
        return self.mat.exact

    def canonical(self) -> "Conic":
        """Primitive integer matrix (rational) or sup-norm 1 (float), first nonzero entry > 0."""
        e = self.mat.entries
        if self.exact:
            c = nm.canonical(e)
        else:
            c = nm.unit_scale(e)
        k = next(x for x in c if x != 0)
        s = 1 if k > 0 else -1
        return Conic(SymMat3.from_entries(*(s * x for x in c)))

    def __eq__(self, other):
        if not isinstance(other, Conic):
            return NotImplemented
        return nm.proportional(self.mat.entries, other.mat.entries)

    __hash__ = None

    def __repr__(self):
        return f"Conic({self.canonical().mat!r})"


def conic_eval(K: Conic, P: HPoint):
    return K.mat.form(P.coords)


def conic_residual(K: Conic, P: HPoint) -> float:
    """|P^t M P| relative to ||M|| * ||P||^2 (sup norms)."""
    p = nm.unit_scale(P.coords)
    return abs(float(K.mat.form(p))) / (K.mat.supnorm() * nm.supnorm(p) ** 2)


def on_conic(K: Conic, P: HPoint) -> bool:
    if K.exact and P.exact:
        return conic_eval(K, P) == 0
    return conic_residual(K, P) <= nm.get_tol()


def _monomials(p):
    x, y, z = p
    return (x * x, x * y, x * z, y * y, y * z, z * z)


def _conic_from_coeffs(c) -> Conic:
    a, b, cc, d, e, f = c
    h = nm.Q(1, 2) if nm.is_exact(c) else 0.5
    return Conic(SymMat3.from_entries(a, h * b, h * cc, d, h * e, f))


def conic_through_points(points) -> Conic:
    """The unique conic through the given points (at least five)."""
    if len(points) < 5:
        raise DegenerateInput("a conic needs at least five points")
    rows = [_monomials(nm.unit_scale(P.coords)) for P in points]
    ker = nm.kernel(rows, 6)
    if not ker:
        raise DegenerateInput("no conic passes through all given points")
    if len(ker) > 1:
        raise UnderDetermined(f"pencil of dimension {len(ker)} through the points")
    return _conic_from_coeffs(ker[0]).canonical()


def conic_through_five(points) -> Conic:
    if len(points) != 5:
        raise DegenerateInput("exactly five points expected")
    return conic_through_points(points)


def conic_from_lines(L: HLine, M: HLine) -> Conic:
    """Degenerate conic L u M, matrix (l m^t + m l^t)/2."""
    l, m = L.coords, M.coords
    h = nm.Q(1, 2) if nm.is_exact(l, m) else 0.5
    return Conic(SymMat3(tuple(tuple(h * (l[i] * m[j] + m[i] * l[j]) for j in range(3))
                               for i in range(3))))


def pencil_member(K1: Conic, K2: Conic, lam, mu) -> Conic:
    e = tuple(lam * x + mu * y for x, y in zip(K1.mat.entries, K2.mat.entries))
    return Conic(SymMat3.from_entries(*e))


def polar(P: HPoint, K: Conic) -> HLine:
    v = K.mat.apply(P.coords)
    if nm.is_zero_vec(v) or (not nm.is_exact(v) and
                              nm.supnorm(v) <= nm.get_tol() * K.mat.supnorm() * nm.supnorm(P.coords)):
        raise ZeroPolar("P is a singular point of the conic")
    return HLine(v)


def pole(L: HLine, K: Conic) -> HPoint:
    if K.singular:
        raise SingularConic("pole needs a nonsingular conic")
    return HPoint(K.mat.adjugate().apply(L.coords))


def _two_points_on(L: HLine):
    l = nm.unit_scale(L.coords)
    k = max(range(3), key=lambda i: abs(float(l[i])))
    one = nm.Q(1) if nm.is_exact(l) else 1.0
    zero = one - one
    basis = [tuple(one if j == i else zero for j in range(3)) for i in range(3)]
    i, j = [m for m in range(3) if m != k]
    return nm.unit_scale(nm.cross(l, basis[i])), nm.unit_scale(nm.cross(l, basis[j]))


def line_conic_intersect(L: HLine, K: Conic) -> list[HPoint]:
    """Real intersection points of L with K (0, 1 or 2 points)."""
    X, Y = _two_points_on(L)
    m = K.mat if K.exact else K.mat.scaled(1 / K.mat.supnorm())
    a, b, c = m.form(X), m.form(X, Y), m.form(Y)
    scale = max(abs(float(a)), abs(float(b)), abs(float(c)))
    if (nm.is_exact(a, b, c) and a == b == c == 0) or scale <= nm.get_tol():
        raise LineInConic("line is contained in the conic")
    disc = b * b - a * c
    if nm.is_zero(disc, scale * scale):
        if abs(float(a)) >= abs(float(c)):
            return [HPoint(nm.add(nm.smul(-b, X), nm.smul(a, Y)))]
        return [HPoint(nm.sub(nm.smul(c, X), nm.smul(b, Y)))]
    if disc < 0:
        return []
    r = nm.sqrt_scalar(disc)
    if not nm.is_rational(r):
        a, b, c = float(a), float(b), float(c)
    # roots q/a and c/q of a x^2 + 2 b x + c, without cancellation
    q = -(b + r) if b >= 0 else -(b - r)
    sols = [(q, a), (c, q)]
    return [HPoint(nm.add(nm.smul(lam, X), nm.smul(mu, Y))) for lam, mu in sols]


def touches(L: HLine, K: Conic) -> bool:
    """A line touches a conic when they have a single common point."""
    return len(line_conic_intersect(L, K)) == 1
