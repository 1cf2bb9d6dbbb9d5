"""Conics through harmonic pairs on the three diagonals of a quadrangle (and the dual)."""

from __future__ import annotations

from dataclasses import dataclass

from .. import numerics as nm
from ..errors import (DegenerateInput, DegenerateSymmetricInput, ParameterOutOfRange,
                      UnderDetermined)
from ..metric import Metric
from ..projective import (Conic, HLine, HPoint, SymMat3, congruent_transform,
                          conic_through_points,
                          join, on_conic, touches)
from ..segments import semi_midpoints
from .figures import Quadrangle, canonical_frame, diagonal_points


def _m_entries(s, t, u, v, w):
    k = s * s * u * u - t * t
    m11 = s * t * u * u * (v * v - 1) * (1 - w * w)
    m12 = t * k * (v * v * w * w - 1)
    m22 = s * t * (v * v - 1) * (1 - w * w) * k
    m23 = s * (v * v - w * w) * k
    m33 = s * t * (1 - v * v) * (1 - w * w)
    return m11, m12, 0 * m11, m22, m23, m33


def harmonic_matrix(s, t, u, v, w) -> SymMat3:
    """The conic matrix in the frame (P1, P2, P3); no range checks."""
    return SymMat3.from_entries(*_m_entries(*(nm.to_scalar(x) for x in (s, t, u, v, w))))


def _check_params(s, t, u, v, w):
    if s == 0 or t == 0:
        raise ParameterOutOfRange("s and t must be nonzero")
    for name, x in (("u", u), ("v", v), ("w", w)):
        if not 0 < x < 1:
            raise ParameterOutOfRange(f"{name} must lie in (0, 1)")


def theorem1_conic(s, t, u, v, w) -> Conic:
    s, t, u, v, w = (nm.to_scalar(x) for x in (s, t, u, v, w))
    _check_params(s, t, u, v, w)
    return Conic(harmonic_matrix(s, t, u, v, w))


def theorem1_points(s, t, u, v, w) -> list[HPoint]:
    """U+, U-, V+, V-, W+, W- in the frame (P1, P2, P3)."""
    s, t, u, v, w = (nm.to_scalar(x) for x in (s, t, u, v, w))
    _check_params(s, t, u, v, w)
    pts = [HPoint(1, 0, u), HPoint(1, 0, -u)]
    for sg in (1, -1):
        pts.append(HPoint((-1 + sg * v) * s, 1 + sg * v, (1 - sg * v) * t))
    for sg in (1, -1):
        pts.append(HPoint((-1 + sg * w) * s, 1 + sg * w, (-1 + sg * w) * t))
    return pts


def theorem1_vertices(s, t) -> tuple:
    """A, B, C, D of the frame: [-s:1:t], [-s:1:-t], [s:1:-t], [s:1:t]."""
    s, t = nm.to_scalar(s), nm.to_scalar(t)
    return (HPoint(-s, 1, t), HPoint(-s, 1, -t), HPoint(s, 1, -t), HPoint(s, 1, t))


def fit_through(points) -> Conic:
    """Conic through the first window of five consecutive points that determines one."""
    pts = list(points)
    for i in range(len(pts) - 4):
        try:
            K = conic_through_points(pts[i:i + 5])
            break
        except UnderDetermined:
            continue
    else:
        try:
            K = conic_through_points(pts)
        except UnderDetermined:
            raise DegenerateInput("points do not determine a conic") from None
    return K


# ---------------------------------------------------------------- dual form

@dataclass(frozen=True)
class DualHarmonicData:
    lines: tuple      # U+, U-, V+, V-, W+, W- as HLines
    conic: Conic      # point conic touched by all six lines
    touching: tuple   # touches(line, conic) per line


def theorem2_lines(Q: Quadrangle, u, v, w) -> tuple:
    """Six lines forming harmonic pencils with the opposite side pairs.

    Each pair is ``L1 + k L2, L1 - k L2`` for the opposite sides ``L1, L2``
    through a diagonal point, which separates them harmonically.
    """
    A, B, C, D = Q.vertices
    pairs = ((join(A, D), join(B, C), u), (join(B, D), join(A, C), v), (join(C, D), join(A, B), w))
    out = []
    for L1, L2, k in pairs:
        k = nm.to_scalar(k)
        l1, l2 = nm.unit_scale(L1.coords), nm.unit_scale(L2.coords)
        out.append(HLine(nm.add(l1, nm.smul(k, l2))))
        out.append(HLine(nm.sub(l1, nm.smul(k, l2))))
    return tuple(out)


def theorem2_conic(Q: Quadrangle, u, v, w) -> DualHarmonicData:
    """Fit the line conic through the six lines and return its point conic."""
    lines = theorem2_lines(Q, u, v, w)
    as_points = [HPoint(L.coords) for L in lines]
    N = conic_through_points(as_points[:5])
    if not on_conic(N, as_points[5]):
        raise DegenerateInput("sixth line misses the fitted line conic")
    K = Conic(N.mat.adjugate()).canonical()
    return DualHarmonicData(lines, K, tuple(touches(L, K) for L in lines))


# ---------------------------------------------------------------- metric version

@dataclass(frozen=True)
class SemiMidpointConic:
    conic: Conic                # from the closed formula
    fitted: Conic               # through five of the semi-midpoints
    semi: tuple                 # P1°±P3°, A°±C°, B°±D° as SemiSum
    on_formula: tuple
    on_fit: tuple


def theorem3_conic(metric: Metric, Q: Quadrangle) -> SemiMidpointConic:
    """Conic through the semi-midpoints of (P1,P3), (A,C), (B,D)."""
    F = canonical_frame(metric, Q)
    P1, P2, P3 = diagonal_points(Q)
    A, B, C, D = Q.vertices
    semi = []
    for X, Y in ((P1, P3), (A, C), (B, D)):
        sm = semi_midpoints(metric, X, Y)
        semi.extend([sm.plus, sm.minus])
    pts = [x.point for x in semi]
    if any(pts[i] == pts[j] for i in range(6) for j in range(i)):
        raise DegenerateSymmetricInput("two semi-midpoints coincide; the conic is not unique")
    # the closed formula lives in the frame (P1°, P2°, P3°) with u = 1, v = a/c, w = b/d
    m = harmonic_matrix(F.s, F.t, 1, F.a / F.c, F.b / F.d)
    e1, e2, e3 = (tuple(col) for col in zip(*F.basis))
    T = nm.columns(e1, e3, e2)
    adj = nm.adjugate(T)
    K = Conic(congruent_transform(m, adj)).canonical()
    fitted = fit_through(pts)
    return SemiMidpointConic(K, fitted, tuple(semi),
                             tuple(s.on_conic(K) for s in semi),
                             tuple(s.on_conic(fitted) for s in semi))
