"""Seeded generators of random exact configurations.

Every generator takes a ``random.Random`` and returns rational data. Points
with a rational ``sqrt|P[G]P|`` ("square points") keep normalized
representatives exact, so whole constructions stay on the rational backend.
"""

from __future__ import annotations

import math
import random
from itertools import combinations

from .. import numerics as nm
from ..conic_metric import circle_about
from ..errors import GeometryError
from ..metric import Metric, dual_line, is_isotropic, normalize, point_class, reflect
from ..projective import (Conic, HPoint, SymMat3, collinear, conic_eval, pencil_member,
                          polar)
from ..quadri.figures import Quadrangle, Tetragon, diagonal_points


class Rejected(Exception):
    """Sampler could not satisfy its constraints within the attempt budget."""


def small_fraction(rng: random.Random, num: int = 9, den: int = 9, nonzero: bool = False) -> nm.Rational:
    while True:
        x = nm.Q(rng.randint(-num, num), rng.randint(1, den))
        if x or not nonzero:
            return x


def unit_fraction(rng: random.Random, den: int = 12) -> nm.Rational:
    """Rational in the open interval (0, 1)."""
    d = rng.randint(2, den)
    return nm.Q(rng.randint(1, d - 1), d)


def int_point(rng: random.Random, bound: int = 12) -> HPoint:
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(3))
        if any(v):
            return HPoint(v)


def chart_square_point(rng: random.Random, metric: Metric, den: int = 12) -> HPoint:
    """Square point near [0:0:1]: (2u, 2v, 1 -+ (u^2+v^2)) for the canonical metrics."""
    while True:
        u = nm.Q(rng.randint(-den, den), den)
        v = nm.Q(rng.randint(-den, den), den)
        r2 = u * u + v * v
        z = (1 - r2) if not metric.is_hyperbolic else (1 + r2)
        if z != 0 and (not metric.is_hyperbolic or r2 != 1):
            return HPoint(2 * u, 2 * v, z).canonical()


def rational_isometry(rng: random.Random, metric: Metric, bound: int = 3):
    """Cayley transform (I - S)(I + S)^-1 with G S skew; preserves G."""
    G = metric.G.rows
    while True:
        a, b, c = (rng.randint(-bound, bound) for _ in range(3))
        K = ((0, a, b), (-a, 0, c), (-b, -c, 0))
        S = nm.mat_mul(G, nm.mat(K))
        I = nm.mat(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        P = tuple(tuple(I[i][j] + S[i][j] for j in range(3)) for i in range(3))
        d = nm.det(P)
        if d == 0:
            continue
        Pinv = tuple(tuple(x / d for x in r) for r in nm.adjugate(P))
        M = tuple(tuple(I[i][j] - S[i][j] for j in range(3)) for i in range(3))
        return nm.mat_mul(M, Pinv)


def square_point(rng: random.Random, metric: Metric, cls: str | None = None) -> HPoint:
    """Square point of the requested class (``inside``/``outside`` for hyperbolic)."""
    if cls is None and metric.is_hyperbolic:
        cls = rng.choice(("inside", "outside"))
    base = (1, 0, 0) if cls == "outside" else (0, 0, 1)
    v = nm.vec(base)
    for _ in range(2):
        v = nm.mat_vec(rational_isometry(rng, metric), v)
    return HPoint(v).canonical()


def anisotropic_point(rng: random.Random, metric: Metric, cls: str | None = None,
                      bound: int = 12) -> HPoint:
    while True:
        P = int_point(rng, bound)
        if is_isotropic(metric, P):
            continue
        if cls is None or point_class(metric, P) == cls:
            return P


def _general_position(pts) -> bool:
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i] == pts[j]:
                return False
    return not any(collinear(*t) for t in combinations(pts, 3))


def _well_conditioned(pts, bound: float = 0.02) -> bool:
    """Every triple of unit vectors spans a parallelepiped of volume >= bound."""
    us = []
    for P in pts:
        v = [float(x) for x in P.coords]
        n = math.sqrt(sum(x * x for x in v))
        us.append([x / n for x in v])
    return all(abs(nm.det3(*t)) >= bound for t in combinations(us, 3))


def random_quadrangle(rng: random.Random, metric: Metric, square: bool = False,
                      cls: str | None = None, tries: int = 200) -> Quadrangle:
    """Quadrangle with anisotropic vertices and diagonal points."""
    for _ in range(tries):
        pick = (lambda: square_point(rng, metric, cls)) if square else \
            (lambda: anisotropic_point(rng, metric, cls))
        V = [pick() for _ in range(4)]
        if not _general_position(V):
            continue
        Q = Quadrangle(*V)
        if any(is_isotropic(metric, P) for P in diagonal_points(Q)):
            continue
        return Q
    raise Rejected("no admissible quadrangle")


def random_tetragon(rng: random.Random, metric: Metric, signs=None, square: bool = False) -> Tetragon:
    if signs is None:
        signs = tuple(rng.choice((1, -1)) for _ in range(4))
    return Tetragon(random_quadrangle(rng, metric, square), signs)


# ---------------------------------------------------------------- circles

def point_on_dual_line(rng: random.Random, metric: Metric, O: HPoint) -> HPoint:
    L = dual_line(metric, O)
    while True:
        X = int_point(rng, 6)
        v = nm.cross(L.coords, X.coords)
        if any(v):
            M = HPoint(v)
            if not is_isotropic(metric, M):
                return M


def circle_orbit(rng: random.Random, metric: Metric, O: HPoint, A: HPoint, n: int) -> list:
    """n points of the circle about O through A, as images of A under reflections."""
    return [reflect(metric, point_on_dual_line(rng, metric, O), A).canonical() for _ in range(n)]


def random_center(rng: random.Random, metric: Metric, kind: str) -> HPoint:
    """Center for a circle of the requested kind (``inside``/``outside``/``isotropic``)."""
    if kind == "isotropic":
        while True:
            m, n = rng.randint(-6, 6), rng.randint(1, 6)
            if m:
                break
        v = nm.vec((m * m - n * n, 2 * m * n, m * m + n * n))
        return HPoint(nm.mat_vec(rational_isometry(rng, metric), v)).canonical()
    return anisotropic_point(rng, metric, kind if metric.is_hyperbolic else None, bound=6)


_CENTER_KINDS = ("inside", "inside", "outside", "isotropic")


def concyclic_quadrangle(rng: random.Random, metric: Metric, tries: int = 200,
                         kinds: tuple = _CENTER_KINDS):
    """(Quadrangle, center) with all four vertices on one circle; exact.

    ``kinds`` weights the hyperbolic center classes drawn.
    """
    for _ in range(tries):
        if metric.is_hyperbolic:
            kind = rng.choice(kinds)
            cls = rng.choice(("inside", "outside"))
        else:
            kind, cls = "any", None
        O = random_center(rng, metric, kind)
        A = square_point(rng, metric, cls)
        if A == O:
            continue
        try:
            pts = [A] + circle_orbit(rng, metric, O, A, 3)
        except GeometryError:
            continue
        if not _general_position(pts) or not _well_conditioned(pts):
            continue
        Q = Quadrangle(*pts)
        if any(is_isotropic(metric, P) for P in diagonal_points(Q)):
            continue
        return Q, O
    raise Rejected("no concyclic quadrangle")


def circle_through(metric: Metric, O: HPoint, X: HPoint) -> Conic:
    return circle_about(metric, O, X)


def second_intersection(K: Conic, P: HPoint, X: HPoint) -> HPoint:
    """Other meet of the line P v X with K, for P on K."""
    xx, px = conic_eval(K, X), K.mat.form(P.coords, X.coords)
    return HPoint(nm.sub(nm.smul(xx, P.coords), nm.smul(2 * px, X.coords)))


def rational_points_on(rng: random.Random, K: Conic, P: HPoint, n: int, tries: int = 400) -> list:
    out = []
    for _ in range(tries):
        if len(out) == n:
            return out
        X = int_point(rng, 9)
        try:
            R = second_intersection(K, P, X)
        except GeometryError:
            continue
        if R == P or any(R == S for S in out):
            continue
        out.append(R.canonical())
    if len(out) == n:
        return out
    raise Rejected("conic has too few rational points off P")


def concyclic_quadrangle_for_index(rng: random.Random, metric: Metric, index: int,
                                   tries: int = 400):
    """Concyclic quadrangle whose fourth vertex lies on circle ``index`` of the first three.

    Triangle 0 is symmetric in its vertices; triangles 1, 2, 3 single out
    A, B, C respectively, so swapping two of the first three vertices moves
    between them.
    """
    from ..segments import center_index
    # triangles 1-3 mostly arise from outside centers
    kinds = _CENTER_KINDS if index == 0 else ("inside", "outside", "outside", "isotropic")
    for _ in range(tries):
        Q, O = concyclic_quadrangle(rng, metric, kinds=kinds)
        V = list(Q.vertices)
        for last in rng.sample(range(4), 4):
            W = [V[k] for k in range(4) if k != last] + [V[last]]
            try:
                found = center_index(metric, O, *W[:3])
            except GeometryError:
                continue
            if found == index:
                return Quadrangle(*W), O
            if found is not None and found != 0 and index != 0:
                a, b = found - 1, index - 1
                W[a], W[b] = W[b], W[a]
                return Quadrangle(*W), O
    raise Rejected(f"no concyclic quadrangle for triangle {index}")


def two_circle_quadrangle(rng: random.Random, metric: Metric, pair=(0, 1), tries: int = 200):
    """Quadrangle whose fourth vertex lies on two circumcircles of the first three.

    The pencil member of the two circles through a third point of B v C is
    the line pair (B v C)(A v D); the polar of A in it is A v D.
    """
    from ..segments import circumcircle, concyclic
    i, j = pair
    for _ in range(tries):
        try:
            Q, _ = concyclic_quadrangle(rng, metric)
            A, B, C, _ = Q.vertices
            K0, K1 = (circumcircle(metric, k, A, B, C) for k in (i, j))
            X = HPoint(nm.add(B.coords, nm.smul(rng.randint(1, 5), C.coords)))
            pair_lines = pencil_member(K0, K1, conic_eval(K1, X), -conic_eval(K0, X))
            AD = polar(A, pair_lines)
            D = second_intersection(K0, A, HPoint(nm.cross(AD.coords, (1, 2, 3))))
            D = D.canonical()
            if is_isotropic(metric, D):
                continue
            Q2 = Quadrangle(A, B, C, D)
        except GeometryError:
            continue
        if (_general_position(Q2.vertices) and _well_conditioned(Q2.vertices)
                and concyclic(metric, *Q2.vertices) == {i, j}):
            return Q2
    raise Rejected("no two-circle quadrangle")


# ---------------------------------------------------------------- Anne

def convex_tetragon(rng: random.Random, metric: Metric, tries: int = 400) -> Tetragon:
    """Strictly convex T^(++++) of square points in the chart z > 0 (inside the absolute)."""
    from ..staudtian import is_strictly_convex
    for _ in range(tries):
        V = [chart_square_point(rng, metric, den=8) for _ in range(4)]
        if any(P[2] <= 0 for P in V) or not _general_position(V):
            continue
        cx = sum(P[0] / P[2] for P in V) / 4
        cy = sum(P[1] / P[2] for P in V) / 4
        V.sort(key=lambda P: math.atan2(float(P[1] / P[2] - cy), float(P[0] / P[2] - cx)))
        T = Tetragon.from_points(*V, signs="++++")
        if is_strictly_convex(T):
            return T
    raise Rejected("no convex tetragon")


def newton_interior_point(rng: random.Random, metric: Metric, T: Tetragon) -> HPoint:
    """alpha(A°+C°) + beta(B°+D°) with alpha, beta > 0."""
    A, B, C, D = (normalize(metric, X).vec for X in T.vertices)
    while True:
        al, be = nm.Q(rng.randint(1, 9)), nm.Q(rng.randint(1, 9))
        P = HPoint(nm.add(nm.smul(al, nm.add(A, C)), nm.smul(be, nm.add(B, D))))
        if not is_isotropic(metric, P):
            return P.canonical()


def interior_point(rng: random.Random, metric: Metric, T: Tetragon, avoid=None) -> HPoint:
    """Positive combination of the normalized vertices, off the line ``avoid``."""
    V = [normalize(metric, X).vec for X in T.vertices]
    while True:
        w = [nm.Q(rng.randint(1, 9)) for _ in range(4)]
        v = nm.smul(w[0], V[0])
        for k in range(1, 4):
            v = nm.add(v, nm.smul(w[k], V[k]))
        P = HPoint(v)
        if avoid is not None and nm.is_zero(nm.dot(avoid.coords, v), nm.supnorm(v)):
            continue
        if not is_isotropic(metric, P):
            return P.canonical()


# ---------------------------------------------------------------- Staudtian properties

def _apply(Tm, P: HPoint) -> HPoint:
    return HPoint(nm.mat_vec(Tm, P.coords)).canonical()


def staudtian_triangle(rng: random.Random, metric: Metric, square: bool = False,
                       cls: str | None = None):
    """Anisotropic non-collinear A, B, C with anisotropic dual point of A v B distinct from C."""
    from ..metric import dual_point
    from ..projective import join
    for _ in range(200):
        pick = (lambda: square_point(rng, metric, cls)) if square else \
            (lambda: anisotropic_point(rng, metric, cls))
        A, B, C = pick(), pick(), pick()
        if collinear(A, B, C):
            continue
        P = dual_point(metric, join(A, B))
        if is_isotropic(metric, P) or P == C:
            continue
        return A, B, C
    raise Rejected("no admissible triangle")


def property_configuration(rng: random.Random, metric: Metric, name: str) -> tuple:
    """Arguments for the Staudtian property check ``name`` (half positive, half negative cases)."""
    from ..metric import dual_point
    from ..projective import join
    hit = rng.random() < 0.5
    cls = "inside" if metric.is_hyperbolic else None
    if name == "transitivity":
        t1 = staudtian_triangle(rng, metric)
        if not hit:
            return t1, staudtian_triangle(rng, metric), staudtian_triangle(rng, metric)
        T1, T2 = rational_isometry(rng, metric), rational_isometry(rng, metric)
        return t1, tuple(_apply(T1, X) for X in t1), tuple(_apply(T2, X) for X in t1)
    if name == "foot_product":
        return staudtian_triangle(rng, metric)
    if name == "equal_height":
        A, B, C = staudtian_triangle(rng, metric)
        P = dual_point(metric, join(A, B))
        while True:
            try:
                C2 = circle_orbit(rng, metric, P, C, 1)[0] if hit else anisotropic_point(rng, metric)
            except GeometryError:
                continue
            if not is_isotropic(metric, C2):
                return A, B, C, C2
    A, B, C = staudtian_triangle(rng, metric, square=True, cls=cls)
    a, b = normalize(metric, A).vec, normalize(metric, B).vec
    while True:
        if name == "midpoint_balance":
            if hit:
                v = nm.add(a, nm.smul(rng.choice((1, -1)), b))
            else:
                v = nm.add(nm.smul(rng.randint(-9, 9), a), nm.smul(rng.randint(-9, 9), b))
        else:  # non_additivity
            if hit:
                v = rng.choice((a, b))
            else:
                v = nm.add(nm.smul(rng.randint(1, 9), a), nm.smul(rng.randint(1, 9), b))
        if nm.is_zero_vec(v):
            continue
        X = HPoint(v)
        if not is_isotropic(metric, X):
            return A, B, C, X.canonical()


# ---------------------------------------------------------------- tangential tetragons

def tangential_configuration(rng: random.Random, metric: Metric, same_class: bool = True,
                             tries: int = 200):
    """TangentialData of a circle with rational contact points (exact)."""
    from ..quadri.tangential import tangential_tetragon_from_circle
    for _ in range(tries):
        kind = rng.choice(("inside", "outside")) if metric.is_hyperbolic else "any"
        O = random_center(rng, metric, kind)
        X = square_point(rng, metric)
        if X == O:
            continue
        try:
            K = circle_through(metric, O, X)
            d = tangential_tetragon_from_circle(metric, K, [X] + rational_points_on(rng, K, X, 3))
        except (GeometryError, Rejected):
            continue
        if not d.concentric:
            continue
        A, B, C, D = d.tetragon.vertices
        P1, P2, P3 = diagonal_points(d.tetragon.quad)
        if any(is_isotropic(metric, P) for P in (P1, P2, P3)):
            continue
        if same_class and any(point_class(metric, U) != point_class(metric, V)
                              for U, V in ((A, C), (B, D), (P1, P3))):
            continue
        return d
    raise Rejected("no tangential tetragon")
