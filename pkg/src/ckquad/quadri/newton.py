"""Semi-centroids, Newton lines and Shatunov-Tokarev lines of tetragons."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .. import numerics as nm
from ..errors import (CoincidentArguments, CoincidentCentroids, CoincidentMidpoints,
                      DegenerateSymmetricInput, GeometryError, IsotropicPoint,
                      UndefinedCentroid)
from ..metric import (Metric, dual_line, dual_point, normalize,
                      segment_congruence_invariant)
from ..projective import HLine, HPoint, join, meet
from ..segments import semi_midpoints
from .figures import Tetragon


def side_midpoints(metric: Metric, T: Tetragon) -> list:
    """Inner semi-midpoints (SemiSum) of the four sides of T."""
    V = T.vertices
    return [semi_midpoints(metric, V[i], V[j]).inner(s) for i, j, s in T.sides()]


def semi_centroid(metric: Metric, T: Tetragon) -> HPoint:
    """Meet of the lines joining inner semi-midpoints of opposite sides."""
    m = [x.point for x in side_midpoints(metric, T)]
    try:
        return meet(join(m[0], m[2]), join(m[1], m[3]))
    except CoincidentArguments as exc:
        raise CoincidentMidpoints(str(exc)) from None


def _centroid(metric, T):
    try:
        return semi_centroid(metric, T)
    except (CoincidentMidpoints, IsotropicPoint) as exc:
        raise UndefinedCentroid(str(exc)) from None


def newton_line(metric: Metric, T: Tetragon) -> HLine:
    G1, G2 = _centroid(metric, T), _centroid(metric, T.complementary())
    if G1 == G2:
        raise CoincidentCentroids("T and its complement share the semi-centroid")
    return join(G1, G2)


def shatunov_tokarev_line(metric: Metric, T: Tetragon) -> HLine:
    """Dual line of the semi-centroid of the complementary tetragon."""
    return dual_line(metric, _centroid(metric, T.complementary()))


def newton_duality_holds(metric: Metric, T: Tetragon) -> bool:
    """dual point of the Newton line == meet of the two Shatunov-Tokarev lines."""
    N = newton_line(metric, T)
    P = meet(shatunov_tokarev_line(metric, T), shatunov_tokarev_line(metric, T.complementary()))
    return dual_point(metric, N) == P


def frame_newton_coefficients(F) -> tuple:
    """Newton line of T^(+--+) in canonical-frame coordinates."""
    s, t, a, b, c, d = F.s, F.t, F.a, F.b, F.c, F.d
    return (t * (a * b + c * d), s * (a * d + b * c), s * t * (a + c) * (d - b))


def frame_newton_line(F) -> HLine:
    """The frame formula mapped to ambient line coordinates."""
    l = frame_newton_coefficients(F)
    M = F.basis
    # a line l in frame coordinates x has ambient coefficients l E^-1
    adj = nm.adjugate(M)
    return HLine(tuple(nm.dot(l, col) for col in zip(*adj)))


@dataclass(frozen=True)
class DiagonalIncidence:
    """Which semi-midpoints A°±C°, B°±D° lie on the Newton line."""

    ac: tuple   # signs s with A° + s C° on the line
    bd: tuple
    plus_count: int
    degenerate: bool = False

    @property
    def expected(self) -> int:
        return 1 if self.plus_count % 2 == 0 else 0

    @property
    def ok(self) -> bool:
        return len(self.ac) == self.expected and len(self.bd) == self.expected


def theorem6b_check(metric: Metric, T: Tetragon) -> DiagonalIncidence:
    try:
        N = newton_line(metric, T)
    except (UndefinedCentroid, CoincidentCentroids) as exc:
        raise DegenerateSymmetricInput(str(exc)) from None
    A, B, C, D = T.vertices
    smAC, smBD = semi_midpoints(metric, A, C), semi_midpoints(metric, B, D)
    ac = tuple(s for s in (1, -1) if smAC.inner(s).on_line(N))
    bd = tuple(s for s in (1, -1) if smBD.inner(s).on_line(N))
    degenerate = len(ac) > 1 or len(bd) > 1
    return DiagonalIncidence(ac, bd, T.plus_count, degenerate)


@dataclass(frozen=True)
class EquidistantPoint:
    point: HPoint
    residual: float   # |c(C,R) - c(D,R)| at a root of c(A,R) - c(B,R)


def st_equidistant_points(metric: Metric, T: Tetragon, samples: int = 720) -> list:
    """Points R on the Shatunov-Tokarev line with [A,R] ~ [B,R], scored by [C,R] ~ [D,R].

    A float scan with bisection refinement; a diagnostic, not a certificate.
    """
    L = shatunov_tokarev_line(metric, T)
    l = [float(x) for x in nm.unit_scale(L.coords)]
    k = max(range(3), key=lambda i: abs(l[i]))
    u, v = [nm.unit_scale(nm.cross(l, tuple(float(i == j) for j in range(3))))
            for i in range(3) if i != k]
    A, B, C, D = (X.to_float() for X in T.vertices)

    def point(th):
        return HPoint(nm.add(nm.smul(math.cos(th), u), nm.smul(math.sin(th), v)))

    def f(th):
        try:
            R = point(th)
            return (segment_congruence_invariant(metric, A, R)
                    - segment_congruence_invariant(metric, B, R))
        except GeometryError:
            return math.nan

    out = []
    ths = [math.pi * i / samples for i in range(samples + 1)]
    vals = [f(th) for th in ths]
    for (t0, f0), (t1, f1) in zip(zip(ths, vals), zip(ths[1:], vals[1:])):
        if not (math.isfinite(f0) and math.isfinite(f1)) or f0 * f1 > 0 or abs(f0 - f1) > 1.0:
            continue
        for _ in range(60):
            tm = (t0 + t1) / 2
            fm = f(tm)
            if not math.isfinite(fm):
                break
            if f0 * fm <= 0:
                t1, f1 = tm, fm
            else:
                t0, f0 = tm, fm
        R = point((t0 + t1) / 2)
        try:
            g = abs(segment_congruence_invariant(metric, C, R)
                    - segment_congruence_invariant(metric, D, R))
        except GeometryError:
            continue
        out.append(EquidistantPoint(R, g))
    return out
