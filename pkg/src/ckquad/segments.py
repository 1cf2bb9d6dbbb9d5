"""Segments, semi-midpoints, perpendicular bisectors and circumcircles.

Semi-midpoints ``P° ± Q°`` involve ``sqrt|P[G]P|`` and ``sqrt|Q[G]Q|``.
:class:`SemiSum` keeps the integral representatives and the two norm-squares,
so incidence with rational lines and conics is decided exactly after
squaring; the vector itself is exact only when ``|P[G]P| / |Q[G]Q|`` is a
rational square.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import numerics as nm
from .errors import (DegenerateBasis, DegenerateQuadrangle, DegenerateTriangle,
                     IsotropicEndpoint, IsotropicPoint, NoCircumcircle,
                     NoProperMidpoint, NotOnLine, CoincidentPoints)
from .metric import Metric, NormalizedPoint, dual_line, normalize
from .projective import (Conic, HLine, HPoint, SymMat3, _coefficients_on,
                         collinear, congruent_transform, conic_residual, incident, join, on_conic)

# sign pattern (e1, e2, e3) of each triangle, up to a global sign;
# the boundary segment [Vi, Vj] of triangle e carries the sign e_i * e_j
TRIANGLE_SIGNS = {0: (1, 1, 1), 1: (1, -1, -1), 2: (1, -1, 1), 3: (1, 1, -1)}


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class SemiSum:
    """The point ``P° + sign * Q°``."""

    P: NormalizedPoint
    Q: NormalizedPoint
    sign: int

    @property
    def ratio(self):
        """sqrt(|qP| / |qQ|) when rational, else ``None``."""
        if nm.is_rational(self.P.q) and nm.is_rational(self.Q.q):
            return nm.sqrt_exact(abs(self.P.q) / abs(self.Q.q))
        return None

    @property
    def exact(self) -> bool:
        return self.ratio is not None

    @property
    def vector(self):
        r = self.ratio
        if r is not None:
            # sqrt|qP| * (P° + s Q°)
            return nm.add(self.P.base, nm.smul(self.sign * r, self.Q.base))
        return nm.add(self.P.vec, nm.smul(self.sign, self.Q.vec))

    @property
    def point(self) -> HPoint:
        return HPoint(self.vector)

    def _ab(self):
        return abs(self.P.q), abs(self.Q.q)

    def on_line(self, L: HLine) -> bool:
        if self.exact or not (nm.is_exact(self.P.base, self.Q.base, L.coords)):
            return incident(self.point, L)
        # sqrt(b) l.p + s sqrt(a) l.q = 0
        a, b = self._ab()
        x, y = nm.dot(L.coords, self.P.base), nm.dot(L.coords, self.Q.base)
        if x == 0 or y == 0:
            return x == 0 and y == 0
        return _sign(x) == -self.sign * _sign(y) and b * x * x == a * y * y

    def on_conic(self, K: Conic) -> bool:
        if self.exact or not (K.exact and nm.is_exact(self.P.base, self.Q.base)):
            return on_conic(K, self.point)
        # b pKp + a qKq + 2 s sqrt(ab) pKq = 0
        a, b = self._ab()
        p, q = self.P.base, self.Q.base
        x = b * K.mat.form(p) + a * K.mat.form(q)
        z = 2 * K.mat.form(p, q)
        if z == 0:
            return x == 0
        return _sign(x) == -self.sign * _sign(z) and x * x == a * b * z * z

    def residual(self, K: Conic) -> float:
        if self.on_conic(K):
            return 0.0
        return conic_residual(K, HPoint(tuple(float(v) for v in self.vector)))


@dataclass(frozen=True)
class SemiMidpoints:
    """``M = P° + Q°`` (inner of [P,Q]+) and ``N = P° - Q°`` (inner of [P,Q]-)."""

    plus: SemiSum
    minus: SemiSum
    plus_proper: bool
    minus_proper: bool

    @property
    def M(self) -> HPoint:
        return self.plus.point

    @property
    def N(self) -> HPoint:
        return self.minus.point

    def inner(self, sign: int) -> SemiSum:
        return self.plus if sign > 0 else self.minus

    def outer(self, sign: int) -> SemiSum:
        return self.minus if sign > 0 else self.plus

    def proper(self, sign: int) -> bool:
        return self.plus_proper if sign > 0 else self.minus_proper


def gram_entry(metric: Metric, P: NormalizedPoint, Q: NormalizedPoint):
    """P°[G]Q°, exact when the product of the norm-squares is a square."""
    pq = metric.G.form(P.base, Q.base)
    ab = abs(P.q) * abs(Q.q)
    r = nm.sqrt_exact(ab) if nm.is_rational(ab) and nm.is_rational(pq) else None
    if r is not None:
        return pq / r
    return float(pq) / nm.sqrt_scalar(float(ab))


def _is_proper(metric: Metric, P: NormalizedPoint, Q: NormalizedPoint, s: int) -> bool:
    # proper iff same class and the midpoint is anisotropic: qP/|qP| + s P°[G]Q° != 0
    if P.q_sign != Q.q_sign:
        return False
    eps = P.q_sign
    pq = metric.G.form(P.base, Q.base)
    ab = abs(P.q) * abs(Q.q)
    if nm.is_exact(pq, ab):
        return not (_sign(s * pq) == -eps and pq * pq == ab)
    return not nm.is_zero(eps + s * float(pq) / nm.sqrt_scalar(float(ab)))


def semi_midpoints(metric: Metric, P: HPoint, Q: HPoint) -> SemiMidpoints:
    try:
        nP, nQ = normalize(metric, P), normalize(metric, Q)
    except IsotropicPoint as exc:
        raise IsotropicEndpoint(str(exc)) from None
    if P == Q:
        raise CoincidentPoints("semi-midpoints need distinct endpoints")
    return SemiMidpoints(SemiSum(nP, nQ, 1), SemiSum(nP, nQ, -1),
                         _is_proper(metric, nP, nQ, 1), _is_proper(metric, nP, nQ, -1))


@dataclass(frozen=True)
class Segment:
    """Closed segment [P, Q]^sign."""

    P: HPoint
    Q: HPoint
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("segment sign must be +1 or -1")
        if self.P == self.Q:
            raise CoincidentPoints("segment endpoints must be distinct")


def segment_contains(metric: Metric, S: Segment, X: HPoint) -> bool:
    """X = l P° + m Q° lies on [P,Q]+ iff l m >= 0 and on [P,Q]- iff l m <= 0."""
    if not collinear(S.P, S.Q, X):
        raise NotOnLine(f"{X!r} is not on the segment's line")
    p, q = (HPoint(nm.canonical(v.coords)) for v in (S.P, S.Q))
    lam, mu = _coefficients_on(p, q, X)
    if nm.is_zero(lam) or nm.is_zero(mu):
        return True
    return (lam * mu > 0) == (S.sign > 0)


def perpendicular_bisector(metric: Metric, S: Segment) -> HLine:
    """Dual line of the outer semi-midpoint, for segments with a proper inner midpoint."""
    sm = semi_midpoints(metric, S.P, S.Q)
    if not sm.proper(S.sign):
        raise NoProperMidpoint("inner midpoint is not proper")
    return dual_line(metric, sm.outer(S.sign).point)


# ---------------------------------------------------------------- triangles

def _basis_coords(A, B, C, X):
    """Coordinates of X in the basis of chi-normalized representatives of A, B, C."""
    cols = [nm.canonical(V.coords) for V in (A, B, C)]
    M = nm.columns(*cols)
    d = nm.det(M)
    if nm.is_zero(d, nm.supnorm(cols[0]) * nm.supnorm(cols[1]) * nm.supnorm(cols[2])):
        raise DegenerateBasis("basis points are collinear")
    adj = nm.adjugate(M)
    return tuple(x / d for x in nm.mat_vec(adj, X.coords))


def triangle_contains(i: int, A: HPoint, B: HPoint, C: HPoint, X: HPoint) -> bool:
    """Membership of X in the closed triangle with index i on the vertices A, B, C."""
    e = TRIANGLE_SIGNS[i]
    x = nm.unit_scale(_basis_coords(A, B, C, X))
    signs = [nm.sign(ek * xk) for ek, xk in zip(e, x)]
    return all(s >= 0 for s in signs) or all(s <= 0 for s in signs)


@dataclass(frozen=True)
class TriangleFrame:
    """Normalized basis (A°, B°, C°) with the unit-diagonal Gram matrix eps * (Vi°[G]Vj°)."""

    vecs: tuple
    eps: int
    g12: object
    g13: object
    g23: object

    @property
    def basis(self):
        return nm.columns(*self.vecs)

    def coords(self, X):
        """Coordinates of the vector X in this basis."""
        M = self.basis
        return tuple(v / nm.det(M) for v in nm.mat_vec(nm.adjugate(M), X))

    def to_ambient_conic(self, c: SymMat3) -> Conic:
        adj = nm.adjugate(self.basis)
        return Conic(congruent_transform(c, adj)).canonical()


def triangle_frame(metric: Metric, A: HPoint, B: HPoint, C: HPoint) -> TriangleFrame:
    if collinear(A, B, C):
        raise DegenerateTriangle("vertices are collinear")
    n = [normalize(metric, V) for V in (A, B, C)]
    eps = n[0].q_sign
    if any(v.q_sign != eps for v in n):
        raise NoCircumcircle("vertices are not pairwise congruent")
    g12, g13, g23 = (eps * gram_entry(metric, n[i], n[j]) for i, j in ((0, 1), (0, 2), (1, 2)))
    return TriangleFrame(tuple(v.vec for v in n), eps, g12, g13, g23)


def _center_in_frame(g12, g13, g23):
    return ((1 - g23) * (1 + g23 - g13 - g12),
            (1 - g13) * (1 + g13 - g12 - g23),
            (1 - g12) * (1 + g12 - g23 - g13))


def circumcircle_in_frame(F: TriangleFrame, i: int):
    """Circle matrix and center of triangle i in the coordinates of the frame."""
    e1, e2, e3 = TRIANGLE_SIGNS[i]
    c = SymMat3.from_entries(0, e1 * e2 - F.g12, e1 * e3 - F.g13, 0, e2 * e3 - F.g23, 0)
    o0 = _center_in_frame(e1 * e2 * F.g12, e1 * e3 * F.g13, e2 * e3 * F.g23)
    o = (e1 * o0[0], e2 * o0[1], e3 * o0[2])
    # an isotropic inner midpoint still leaves a circle; only a degenerate form is rejected
    if nm.is_zero(c.det(), c.supnorm() ** 3) or nm.is_zero(nm.supnorm(o), 1.0):
        raise NoCircumcircle(f"triangle {i} has no circumcircle")
    return c, o


def circumcircle(metric: Metric, i: int, A: HPoint, B: HPoint, C: HPoint) -> Conic:
    F = triangle_frame(metric, A, B, C)
    c, _ = circumcircle_in_frame(F, i)
    return F.to_ambient_conic(c)


def circumcenter(metric: Metric, i: int, A: HPoint, B: HPoint, C: HPoint) -> HPoint:
    F = triangle_frame(metric, A, B, C)
    _, o = circumcircle_in_frame(F, i)
    return HPoint(nm.mat_vec(F.basis, o))


def center_index(metric: Metric, O: HPoint, A: HPoint, B: HPoint, C: HPoint) -> int | None:
    """Index i whose circumcircle has center O (exact via the outer semi-midpoints)."""
    L = dual_line(metric, O)
    sm = {(a, b): semi_midpoints(metric, X, Y)
          for (a, X), (b, Y) in (((0, A), (1, B)), ((0, A), (2, C)), ((1, B), (2, C)))}
    for i, e in TRIANGLE_SIGNS.items():
        if all(m.outer(e[a] * e[b]).on_line(L) for (a, b), m in sm.items()):
            return i
    return None


def concyclic(metric: Metric, A: HPoint, B: HPoint, C: HPoint, D: HPoint) -> set[int]:
    """Indices i with D on the circumcircle of triangle i of A, B, C."""
    pts = (A, B, C, D)
    for k in range(4):
        if collinear(*(pts[j] for j in range(4) if j != k)):
            raise DegenerateQuadrangle("three of the points are collinear")
    try:
        F = triangle_frame(metric, A, B, C)
        nD = normalize(metric, D)
    except NoCircumcircle:
        return set()
    if nD.q_sign != F.eps:
        return set()
    d = F.coords(nm.canonical(D.coords))
    out = set()
    for i in TRIANGLE_SIGNS:
        try:
            c, _ = circumcircle_in_frame(F, i)
        except NoCircumcircle:
            continue
        val = c.form(d)
        scale = c.supnorm() * nm.supnorm(d) ** 2
        if nm.is_zero(val, scale):
            out.add(i)
    return out
