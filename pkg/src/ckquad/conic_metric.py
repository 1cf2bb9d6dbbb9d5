"""Metric properties of conics: symmetry points, circles and their centers.

A point P is a symmetry point of K when its polar with respect to K is its
dual line, i.e. P is a real generalized eigenvector of the pencil
``K - lam G``. K is a circle exactly when ``K - lam G`` has rank one for some
``lam``; then ``K = lam G + mu l l^t``, the line ``l`` is the symmetry axis and
its dual point the center.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import numerics as nm
from .errors import KIsAbsolute, PointOnConic, SingularConic
from .metric import Metric, dual_point, is_isotropic, point_class
from .projective import (Conic, HLine, HPoint, SymMat3, line_conic_intersect,
                         on_conic, polar)


class CircleKind(str, enum.Enum):
    PROPER_INSIDE = "proper-inside"
    PROPER_OUTSIDE = "proper-outside"
    HYPERCYCLE = "hypercycle"
    HOROCYCLE = "horocycle"
    NOT_A_CIRCLE = "not-a-circle"


@dataclass(frozen=True)
class CircleClass:
    kind: CircleKind
    center: HPoint | None = None
    axis: HLine | None = None
    # for hyper- and horocycles: whether sampled conic points lie inside the absolute
    points_inside_absolute: bool | None = None

    @property
    def is_circle(self) -> bool:
        return self.kind is not CircleKind.NOT_A_CIRCLE


@dataclass(frozen=True)
class Symmetry:
    """Symmetry points of a conic; for circles ``points == [center]`` plus the whole ``axis``."""

    points: list
    axis: HLine | None = None


# ---------------------------------------------------------------- pencil algebra

def _pencil(K: Conic, G: SymMat3, lam) -> tuple:
    return tuple(tuple(k - lam * g for k, g in zip(rk, rg)) for rk, rg in zip(K.mat.rows, G.rows))


def _charpoly(K: Conic, G: SymMat3) -> list:
    """Coefficients c0..c3 of det(K - lam G), by exact interpolation at 0..3."""
    ys = [nm.det(_pencil(K, G, nm.Q(x))) for x in range(4)]
    # Newton forward differences -> monomial basis
    d1 = [ys[i + 1] - ys[i] for i in range(3)]
    d2 = [d1[i + 1] - d1[i] for i in range(2)]
    d3 = d2[1] - d2[0]
    c3 = d3 / 6
    c2 = d2[0] / 2 - 3 * c3
    c1 = d1[0] - c2 - c3
    return [ys[0], c1, c2, c3]


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    while len(a) >= len(b) and a:
        k = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= k * c
        a = _poly_trim(a)
    return a


def _poly_gcd(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _rank_exact(m) -> int:
    return 3 - len(nm.kernel(m, 3))


def _rank_float(m) -> int:
    a = nm.to_numpy(m)
    s = np.linalg.svd(a / max(np.abs(a).max(), 1e-300), compute_uv=False)
    return int(np.sum(s > math.sqrt(nm.get_tol()) * max(s[0], 1e-300)))


def _exact_real_roots(c) -> list:
    """Rational roots of the cubic with coefficients c, located from float approximations."""
    c = _poly_trim(c)
    if len(c) <= 1:
        return []
    lcm = 1
    for x in c:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in c]
    lead = abs(ints[-1])
    out = []
    for r in np.roots([float(x) for x in reversed(ints)]):
        if abs(r.imag) > 1e-6 * max(1.0, abs(r.real)) or not math.isfinite(r.real):
            continue
        for den in sorted({d for d in range(1, min(lead, 64) + 1) if lead % d == 0} | {lead}):
            cand = nm.Q(round(r.real * den), den)
            if sum(ci * cand ** i for i, ci in enumerate(ints)) == 0:
                if cand not in out:
                    out.append(cand)
                break
    return out


def _circle_exact(K: Conic, G: SymMat3):
    c = _charpoly(K, G)
    p = _poly_trim(c)
    dp = [i * p[i] for i in range(1, len(p))]
    g = _poly_gcd(p, dp)
    if len(g) < 2:
        return None
    # roots of the gcd are the repeated eigenvalues
    roots = [-g[0] / g[1]] if len(g) == 2 else _exact_real_roots(g)
    for lam in roots:
        m = _pencil(K, G, lam)
        r = _rank_exact(m)
        if r == 0:
            raise KIsAbsolute("conic is the absolute conic")
        if r == 1:
            return lam, m
    return None


def _circle_float(K: Conic, G: SymMat3):
    k = nm.to_numpy(K.mat.rows)
    k = k / np.abs(k).max()
    g = nm.to_numpy(G.rows)
    ev = np.linalg.eigvals(np.linalg.solve(g, k))
    scale = max(1.0, float(np.abs(ev).max()))
    close = math.sqrt(nm.get_tol()) * scale * 10
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(ev[i] - ev[j]) <= close:
                lam = float(((ev[i] + ev[j]) / 2).real)
                m = nm.from_numpy(k - lam * g)
                r = _rank_float(m)
                if r == 0:
                    raise KIsAbsolute("conic is the absolute conic")
                if r == 1:
                    return lam, m
    return None


def _check(metric: Metric, K: Conic):
    if K.singular:
        raise SingularConic("conic is singular")
    if K == Conic(metric.G):
        raise KIsAbsolute("conic is the absolute conic")


def _rank_one_line(m) -> HLine:
    row = max(m, key=lambda r: nm.supnorm(r))
    return HLine(row)


def circle_data(metric: Metric, K: Conic):
    """(axis, center) when K is a circle, else ``None``."""
    _check(metric, K)
    found = (_circle_exact(K, metric.G) if K.exact and metric.G.exact
             else _circle_float(K, metric.G))
    if found is None:
        return None
    _, m = found
    axis = _rank_one_line(m)
    return axis, dual_point(metric, axis)


def is_circle(metric: Metric, K: Conic) -> bool:
    return circle_data(metric, K) is not None


def _eigenvectors(metric: Metric, K: Conic) -> list[HPoint]:
    G = metric.G
    pts: list[HPoint] = []
    if K.exact and G.exact:
        c = _charpoly(K, G)
        roots = _exact_real_roots(c)
        for lam in roots:
            for v in nm.kernel(_pencil(K, G, lam), 3):
                pts.append(HPoint(v))
        if len(roots) == len(_poly_trim(c)) - 1:
            return pts
        # irrational eigenvalues: fall through to floats for the remainder
    k = nm.to_numpy(K.mat.rows)
    k = k / np.abs(k).max()
    g = nm.to_numpy(G.rows)
    ev, vecs = np.linalg.eig(np.linalg.solve(g, k))
    for i in range(3):
        if abs(ev[i].imag) > 1e-9 * max(1.0, abs(ev[i])):
            continue
        v = vecs[:, i].real
        P = HPoint(nm.from_numpy(v / np.abs(v).max()))
        if not any(P == Q for Q in pts):
            pts.append(P)
    return pts


def symmetry_points(metric: Metric, K: Conic) -> Symmetry:
    data = circle_data(metric, K)
    if data is not None:
        axis, center = data
        return Symmetry([center], axis)
    pts = [P for P in _eigenvectors(metric, K) if not is_isotropic(metric, P)]
    return Symmetry(pts)


def centers(metric: Metric, K: Conic) -> list[HPoint]:
    """Center of a circle, else the symmetry points.

    Singular conics are accepted here: their anisotropic generalized
    eigenvectors (the double point among them) are returned.
    """
    if K.singular:
        return [P for P in _eigenvectors(metric, K) if not is_isotropic(metric, P)]
    return symmetry_points(metric, K).points


def point_inside_conic(K: Conic, P: HPoint) -> bool:
    """P is inside K iff its polar misses K."""
    if on_conic(K, P):
        raise PointOnConic(f"{P!r} lies on the conic")
    return not line_conic_intersect(polar(P, K), K)


def sample_conic(K: Conic, n: int = 8) -> list[HPoint]:
    """Up to ``n`` real points of K, spread over the conic (float)."""
    Kf = Conic(K.mat.to_float())
    start = None
    probes = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 2, 3), (3, -1, 2)]
    for L in probes:
        hits = line_conic_intersect(HLine(L), Kf)
        if hits:
            start = nm.unit_scale(hits[0].coords)
            break
    if start is None:
        return []
    # complete start to a basis; parametrize by the pencil of lines through it
    k = max(range(3), key=lambda i: abs(start[i]))
    u, v = [tuple(float(i == j) for j in range(3)) for i in range(3) if i != k]
    out = []
    for t in range(n):
        th = math.pi * t / n
        X = nm.add(nm.smul(math.cos(th), u), nm.smul(math.sin(th), v))
        xx, px = Kf.mat.form(X), Kf.mat.form(start, X)
        Q = nm.sub(nm.smul(xx, start), nm.smul(2 * px, X))
        if not nm.is_zero_vec(Q):
            out.append(HPoint(Q))
    return out


def classify_circle(metric: Metric, K: Conic) -> CircleClass:
    data = circle_data(metric, K)
    if data is None:
        return CircleClass(CircleKind.NOT_A_CIRCLE)
    axis, center = data
    if is_isotropic(metric, center):
        kind = CircleKind.HOROCYCLE
    elif point_inside_conic(K, center):
        kind = (CircleKind.PROPER_OUTSIDE if point_class(metric, center) == "outside"
                else CircleKind.PROPER_INSIDE)
    else:
        kind = CircleKind.HYPERCYCLE
    side = None
    if kind in (CircleKind.HYPERCYCLE, CircleKind.HOROCYCLE):
        sides = {point_class(metric, P) for P in sample_conic(K, 16)} - {"isotropic"}
        side = (sides == {"inside"}) if len(sides) == 1 else None
    return CircleClass(kind, center, axis, side)


def circle_about(metric: Metric, O: HPoint, X: HPoint) -> Conic:
    """Circle with center O through X: (X G X)(G O)(G O)^t - (O G X)^2 G."""
    g = metric.G
    l = g.apply(O.coords)
    xx = g.form(X.coords)
    ox = g.form(O.coords, X.coords)
    rows = tuple(tuple(xx * l[i] * l[j] - ox * ox * g.rows[i][j] for j in range(3)) for i in range(3))
    return Conic(rows).canonical()


def dual_conic(metric: Metric, K: Conic) -> Conic:
    """Conic of the dual points of the tangents of K: ``G adj(K) G``."""
    if K.singular:
        raise SingularConic("dual of a singular conic")
    G = metric.G.rows
    m = nm.mat_mul(G, nm.mat_mul(K.mat.adjugate().rows, G))
    if not nm.is_exact(m):
        m = tuple(tuple((m[i][j] + m[j][i]) / 2 for j in range(3)) for i in range(3))
    return Conic(m).canonical()
