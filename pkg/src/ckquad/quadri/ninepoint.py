"""Nine- and ten-point conics of quadrangles (projective and metric versions)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import numerics as nm
from ..errors import (DegenerateInput, KNotThroughVertices, LineThroughVertex,
                      SingularConic)
from ..metric import Metric, dual_line, normalize
from ..projective import (Conic, HLine, HPoint, conic_from_lines, harmonic_conjugate,
                          incident, join, line_conic_intersect, meet, on_conic,
                          pencil_member, pole)
from ..segments import (TRIANGLE_SIGNS, circumcenter, circumcircle, concyclic,
                        semi_midpoints, triangle_frame)
from ..conic_metric import centers, circle_about
from .figures import TETRAGRAPH_PAIRS, Quadrangle, diagonal_points
from .theorem1 import fit_through


# ---------------------------------------------------------------- projective

@dataclass(frozen=True)
class BocherData:
    conic: Conic
    conjugates: tuple       # harmonic conjugates of L ^ (X v Y), TETRAGRAPH_PAIRS order
    diagonal: tuple         # P1, P2, P3
    incidences: tuple       # nine booleans: conjugates then diagonal points

    @property
    def points(self) -> tuple:
        return self.conjugates + self.diagonal

    @property
    def ok(self) -> bool:
        return all(self.incidences)


def bocher_nine_point(Q: Quadrangle, L: HLine) -> BocherData:
    """Harmonic conjugates of the six points L ^ (X v Y) with respect to X, Y."""
    V = Q.vertices
    for X in V:
        if incident(X, L):
            raise LineThroughVertex(f"{X!r} lies on the line")
    conj = []
    for i, j in TETRAGRAPH_PAIRS:
        P = meet(L, join(V[i], V[j]))
        conj.append(harmonic_conjugate(P, V[i], V[j]))
    diag = diagonal_points(Q)
    pts = tuple(conj) + diag
    K = fit_through(pts)
    return BocherData(K, tuple(conj), diag, tuple(on_conic(K, P) for P in pts))


def odehnal_points(Q: Quadrangle, K: Conic, L: HLine) -> list[HPoint]:
    """The pole P of L and, per vertex pair, the meet of X v Y with P v pole(X v Y)."""
    if any(not on_conic(K, X) for X in Q.vertices):
        raise KNotThroughVertices("conic misses a vertex")
    if K.singular:
        raise SingularConic("Odehnal's construction needs a nonsingular conic")
    P = pole(L, K)
    V = Q.vertices
    out = []
    for i, j in TETRAGRAPH_PAIRS:
        side = join(V[i], V[j])
        R = pole(side, K)
        if R == P:
            raise DegenerateInput("pole of a side coincides with the pole of L")
        out.append(meet(join(P, R), side))
    out.append(P)
    return out


# ---------------------------------------------------------------- metric

def tetragraph_semi_midpoints(metric: Metric, Q: Quadrangle, signs) -> list:
    """Inner semi-midpoints (SemiSum) of the six tetragraph segments."""
    V = Q.vertices
    return [semi_midpoints(metric, V[a], V[b]).inner(s)
            for (a, b), s in zip(TETRAGRAPH_PAIRS, signs)]


def tetragraph_six_point_conic(metric: Metric, Q: Quadrangle, signs) -> Conic | None:
    """Conic through the six inner semi-midpoints, or ``None`` when no conic exists."""
    signs = tuple(signs)
    if len(signs) != 6:
        raise ValueError("a tetragraph has six segment signs")
    semi = tetragraph_semi_midpoints(metric, Q, signs)
    K = fit_through([m.point for m in semi])
    return K if all(m.on_conic(K) for m in semi) else None


def tetragraph_signs(metric: Metric, Q: Quadrangle, i: int) -> tuple:
    """Signs of the six tetragraph segments whose inner midpoints lie on the i-th nine-point conic."""
    e = TRIANGLE_SIGNS[i]
    F = triangle_frame(metric, *Q.vertices[:3])
    x = F.coords(normalize(metric, Q.D).vec)
    eps = nm.sign(sum(ek * xk for ek, xk in zip(e, x)), nm.supnorm(x))
    if eps == 0:
        raise DegenerateInput("fourth vertex is not separated by the triangle")
    sign_of = {(0, 1): e[0] * e[1], (1, 2): e[1] * e[2], (0, 2): e[0] * e[2],
               (2, 3): e[2] * eps, (3, 0): e[0] * eps, (1, 3): e[1] * eps}
    return tuple(sign_of[p] for p in TETRAGRAPH_PAIRS)


@dataclass(frozen=True)
class NinePointData:
    index: int
    conic: Conic
    circle: Conic
    center: HPoint
    line: HLine                 # dual line of the center
    antipodal: tuple            # conic ^ line (0, 1 or 2 points)
    signs: tuple                # tetragraph signs, TETRAGRAPH_PAIRS order
    incidences: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.incidences.values())


def nine_point_for_index(metric: Metric, Q: Quadrangle, i: int,
                         center: HPoint | None = None) -> NinePointData:
    """Nine-point data for circle i; a known exact ``center`` skips the frame computation."""
    V = Q.vertices
    if center is None:
        O = circumcenter(metric, i, *V[:3])
        circle = circumcircle(metric, i, *V[:3])
    else:
        O, circle = center, circle_about(metric, center, V[0])
    L = dual_line(metric, O)
    bd = bocher_nine_point(Q, L)
    K = bd.conic
    signs = tetragraph_signs(metric, Q, i)
    inc = {}
    for (a, b), s in zip(TETRAGRAPH_PAIRS, signs):
        sm = semi_midpoints(metric, V[a], V[b])
        tag = "ABCD"[a] + "ABCD"[b]
        inc[f"inner {tag}"] = sm.inner(s).on_conic(K)
        inc[f"outer {tag} on line"] = sm.outer(s).on_line(L)
    for name, P in zip(("P1", "P2", "P3"), bd.diagonal):
        inc[name] = on_conic(K, P)
    inc["center"] = on_conic(K, O)
    anti = tuple(line_conic_intersect(L, K))
    return NinePointData(i, K, circle, O, L, anti, signs, inc)


def nine_point_conic(metric: Metric, Q: Quadrangle) -> list[NinePointData]:
    """One entry per circle through A, B, C, D; empty when they are not concyclic."""
    idx = sorted(concyclic(metric, *Q.vertices))
    return [nine_point_for_index(metric, Q, i) for i in idx]


def vertex_pencil(Q: Quadrangle) -> tuple:
    """Two line pairs spanning the pencil of conics through the vertices."""
    A, B, C, D = Q.vertices
    return (conic_from_lines(join(A, B), join(C, D)), conic_from_lines(join(A, C), join(B, D)))


def pencil_conic(Q: Quadrangle, lam, mu) -> Conic:
    K1, K2 = vertex_pencil(Q)
    return pencil_member(K1, K2, lam, mu)


def pencil_conic_through(Q: Quadrangle, X: HPoint) -> Conic:
    """The member of the vertex pencil passing through X."""
    K1, K2 = vertex_pencil(Q)
    a, b = K1.mat.form(X.coords), K2.mat.form(X.coords)
    return pencil_member(K1, K2, b, -a)


def addendum_check(data: NinePointData, K: Conic) -> tuple:
    """(K touches the line, K passes through one of the antipodal points)."""
    touch = len(line_conic_intersect(data.line, K)) == 1
    through = any(on_conic(K, P) for P in data.antipodal)
    return touch, through


def theorem5_check(metric: Metric, data: NinePointData, K: Conic) -> bool:
    """K equals the circle, or every center of K lies on the nine-point conic."""
    if K == data.circle:
        return True
    return all(on_conic(data.conic, P) for P in centers(metric, K))
