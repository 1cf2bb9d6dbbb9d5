"""Tetragons circumscribed about a circle and their midpoint conics."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import CoincidentArguments, GeometryError, DegenerateInput, KIsCircle, ParallelTangents
from ..conic_metric import circle_about, circle_data, dual_conic, symmetry_points
from ..metric import Metric, dual_point, is_isotropic, point_class
from ..projective import Conic, HPoint, meet, on_conic, polar
from ..segments import center_index, semi_midpoints
from .figures import Quadrangle, Tetragon, diagonal_points
from .ninepoint import NinePointData, nine_point_for_index, tetragraph_semi_midpoints
from .theorem1 import fit_through


@dataclass(frozen=True)
class TangentialData:
    tetragon: Tetragon
    circle: Conic
    center: HPoint
    duals: tuple            # Ã, B̃, C̃, D̃: dual points of A v B, B v C, C v D, D v A
    dual_index: int         # triangle index of the circle through the dual points
    concentric: bool


def tangential_tetragon_from_circle(metric: Metric, circle: Conic, contacts) -> TangentialData:
    """Tetragon cut out by the tangents at four contact points of a circle.

    With tangents t1..t4 the vertices are A = t1^t2, B = t2^t3, C = t3^t4,
    D = t4^t1, so the sides A v B, B v C, C v D, D v A are t2, t3, t4, t1.
    """
    data = circle_data(metric, circle)
    if data is None:
        raise DegenerateInput("conic is not a circle")
    _, O = data
    if is_isotropic(metric, O):
        raise DegenerateInput("circle center is isotropic")
    if len(contacts) != 4 or any(not on_conic(circle, P) for P in contacts):
        raise DegenerateInput("need four contact points on the circle")
    t = [polar(P, circle) for P in contacts]
    try:
        V = [meet(t[k], t[(k + 1) % 4]) for k in range(4)]
    except CoincidentArguments:
        raise ParallelTangents("two consecutive tangents coincide") from None
    for X in V:
        if is_isotropic(metric, X):
            raise ParallelTangents("consecutive tangents meet on the absolute")
    T = Tetragon(Quadrangle(*V), (1, 1, 1, 1))
    sides = [t[1], t[2], t[3], t[0]]
    duals = tuple(dual_point(metric, L) for L in sides)
    try:
        i = center_index(metric, O, *duals[:3])
    except GeometryError:
        i = None
    if i is None or not on_conic(circle_about(metric, O, duals[0]), duals[3]):
        return TangentialData(T, circle, O, duals, -1, False)
    return TangentialData(T, circle, O, duals, i, True)


@dataclass(frozen=True)
class MidpointConicData:
    conic: Conic
    nine: NinePointData             # ten-point data of the dual quadrangle
    ten_points: tuple               # its six inner semi-midpoints, P1..P3 and the center
    diagonal_semi: tuple            # A°±C°, B°±D°, P1°±P3° of T as SemiSum
    incidences: dict = field(default_factory=dict)
    undefined: tuple = ()           # diagonals whose endpoints differ in class: no midpoints

    @property
    def ok(self) -> bool:
        return all(self.incidences.values())

    @property
    def verified_count(self) -> int:
        return sum(1 for v in self.incidences.values() if v)

    def sixteen_points(self) -> list:
        return list(self.ten_points) + [s.point for s in self.diagonal_semi]

    def distinct_count(self) -> int:
        out: list[HPoint] = []
        for P in self.sixteen_points():
            if not any(P == X for X in out):
                out.append(P)
        return len(out)


def theorem6_midpoint_conic(metric: Metric, data: TangentialData) -> MidpointConicData:
    """Nine-point conic of the dual quadrangle, checked on the diagonal semi-midpoints of T."""
    if not data.concentric:
        raise DegenerateInput("dual points are not concyclic about the incircle center")
    Qd = Quadrangle(*data.duals)
    nine = nine_point_for_index(metric, Qd, data.dual_index, center=data.center)
    K = nine.conic
    A, B, C, D = data.tetragon.vertices
    P1, _, P3 = diagonal_points(data.tetragon.quad)
    semi = []
    inc = {}
    undefined = []
    for name, (X, Y) in (("AC", (A, C)), ("BD", (B, D)), ("P1P3", (P1, P3))):
        if point_class(metric, X) != point_class(metric, Y):
            undefined.append(name)
            continue
        sm = semi_midpoints(metric, X, Y)
        for s, lab in ((1, "+"), (-1, "-")):
            semi.append(sm.inner(s))
            inc[f"{name}{lab}"] = sm.inner(s).on_conic(K)
    inc["incircle center"] = on_conic(K, data.center)
    for k, v in nine.incidences.items():
        if not k.startswith("outer") and k != "center":
            inc[f"dual {k}"] = v
    ten = ([m.point for m in tetragraph_semi_midpoints(metric, Qd, nine.signs)]
           + list(diagonal_points(Qd)) + [nine.center])
    return MidpointConicData(K, nine, tuple(ten), tuple(semi), inc, tuple(undefined))


def inconic_from_dual(metric: Metric, data: TangentialData, extra: HPoint) -> Conic:
    """Conic touching the four sidelines: dual of the conic through Ã..D̃ and ``extra``."""
    N = fit_through(list(data.duals) + [extra])
    return dual_conic(metric, N)


def theorem7_inconic_check(metric: Metric, data: TangentialData, K: Conic,
                           midpoint_conic: Conic) -> bool:
    """Every symmetry point of the inconic K lies on the midpoint conic."""
    if circle_data(metric, K) is not None:
        raise KIsCircle("inconic is a circle; use the tangential-circle path")
    pts = symmetry_points(metric, K).points
    return bool(pts) and all(on_conic(midpoint_conic, P) for P in pts)
