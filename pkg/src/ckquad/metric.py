"""Metric layer of a regular Cayley-Klein plane.

The metric is a regular symmetric matrix ``G``; its polarity is the duality,
reflections in anisotropic points generate the isometries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics as nm
from .errors import DegenerateInput, IsotropicMirror, IsotropicPoint
from .projective import HLine, HPoint, SymMat3


class Metric:
    """Regular metric matrix with its signature tag (``elliptic`` / ``hyperbolic``)."""

    __slots__ = ("G", "signature", "inside_sign")

    def __init__(self, G):
        if not isinstance(G, SymMat3):
            G = SymMat3(G)
        d = G.det()
        if nm.is_zero(d, G.supnorm() ** 3):
            raise DegenerateInput("metric matrix must be regular")
        if G.exact:
            r = G.rows
            m1, m2 = r[0][0], r[0][0] * r[1][1] - r[0][1] * r[1][0]
            if m1 > 0 and m2 > 0 and d > 0:
                npos = 3
            elif m1 < 0 and m2 > 0 and d < 0:
                npos = 0
            else:
                npos = int(np.sum(np.linalg.eigvalsh(nm.to_numpy(r)) > 0))
        else:
            npos = int(np.sum(np.linalg.eigvalsh(nm.to_numpy(G.rows)) > 0))
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "signature", "elliptic" if npos in (0, 3) else "hyperbolic")
        # inside the absolute conic <=> the form has the sign of the lone eigenvalue
        object.__setattr__(self, "inside_sign", -1 if npos == 2 else (1 if npos == 1 else 0))

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    @classmethod
    def elliptic(cls) -> "Metric":
        return cls(SymMat3.diag(1, 1, 1))

    @classmethod
    def hyperbolic(cls) -> "Metric":
        return cls(SymMat3.diag(1, 1, -1))

    @classmethod
    def canonical(cls, plane: str) -> "Metric":
        if plane == "elliptic":
            return cls.elliptic()
        if plane == "hyperbolic":
            return cls.hyperbolic()
        raise ValueError(f"unknown plane {plane!r}")

    @property
    def is_hyperbolic(self) -> bool:
        return self.signature == "hyperbolic"

    def __repr__(self):
        return f"Metric({self.signature}, {self.G!r})"


def bilinear(metric: Metric, p, q):
    return metric.G.form(p, q)


def norm_square(metric: Metric, p):
    return metric.G.form(p)


def _rel_norm(metric: Metric, p) -> float:
    u = nm.unit_scale(p)
    return abs(float(metric.G.form(u))) / metric.G.supnorm()


def is_isotropic(metric: Metric, P: HPoint) -> bool:
    if metric.G.exact and P.exact:
        return metric.G.form(P.coords) == 0
    return _rel_norm(metric, P.coords) <= nm.get_tol()


def point_class(metric: Metric, P: HPoint) -> str:
    """``"isotropic"``, ``"inside"`` or ``"outside"`` the absolute (elliptic: ``"elliptic"``)."""
    if not metric.is_hyperbolic:
        return "elliptic"
    if is_isotropic(metric, P):
        return "isotropic"
    q = metric.G.form(P.coords)
    return "inside" if (q > 0) == (metric.inside_sign > 0) else "outside"


def congruent_points(metric: Metric, P: HPoint, Q: HPoint) -> bool:
    """{P} is congruent to {Q}: always in the elliptic plane, same class in the hyperbolic one."""
    return point_class(metric, P) == point_class(metric, Q)


chi = nm.chi


@dataclass(frozen=True)
class NormalizedPoint:
    """Canonical representative ``P° = base / sqrt|q|``.

    ``base`` has positive chi and is primitive integral on the rational
    backend; ``q = base[G]base``. ``root`` is ``sqrt|q|`` when it is rational.
    """

    base: tuple
    q: object
    root: object
    source: HPoint

    @property
    def exact(self) -> bool:
        return self.root is not None

    @property
    def vec(self):
        r = self.root if self.root is not None else nm.sqrt_scalar(abs(self.q))
        if not nm.is_rational(r):
            return tuple(float(x) / r for x in self.base)
        return tuple(x / r for x in self.base)

    @property
    def q_sign(self) -> int:
        return 1 if self.q > 0 else -1


_NORM_CACHE: dict = {}


def _normalize_exact(G: SymMat3, coords: tuple):
    key = (G.rows, coords)
    hit = _NORM_CACHE.get(key)
    if hit is None:
        if len(_NORM_CACHE) > 8192:
            _NORM_CACHE.clear()
        base = nm.canonical(coords)
        q = G.form(base)
        hit = _NORM_CACHE[key] = (base, q, nm.sqrt_exact(abs(q)))
    return hit


def normalize(metric: Metric, P: HPoint) -> NormalizedPoint:
    if is_isotropic(metric, P):
        raise IsotropicPoint(f"{P!r} is isotropic")
    if metric.G.exact and P.exact:
        return NormalizedPoint(*_normalize_exact(metric.G, P.coords), P)
    base = nm.canonical(P.coords)
    q = metric.G.form(base)
    root = nm.sqrt_exact(abs(q)) if nm.is_rational(q) else None
    return NormalizedPoint(base, q, root, P)


def dual_line(metric: Metric, P: HPoint) -> HLine:
    return HLine(metric.G.apply(P.coords))


def dual_point(metric: Metric, L: HLine) -> HPoint:
    return HPoint(metric.G.adjugate().apply(L.coords))


def reflect(metric: Metric, M: HPoint, P: HPoint) -> HPoint:
    """Image of P under the reflection in the anisotropic point M."""
    if is_isotropic(metric, M):
        raise IsotropicMirror(f"mirror {M!r} is isotropic")
    m, p = nm.unit_scale(M.coords), nm.unit_scale(P.coords)
    mm = metric.G.form(m)
    mp = metric.G.form(m, p)
    # (2 mp / mm) m - p, scaled by mm
    return HPoint(nm.sub(nm.smul(2 * mp, m), nm.smul(mm, p)))


def segment_congruence_invariant(metric: Metric, P: HPoint, Q: HPoint):
    """(P[G]Q)^2 / ((P[G]P)(Q[G]Q)); invariant under isometries and rescaling."""
    for X in (P, Q):
        if is_isotropic(metric, X):
            raise IsotropicPoint(f"{X!r} is isotropic")
    p, q = nm.unit_scale(P.coords), nm.unit_scale(Q.coords)
    pq = metric.G.form(p, q)
    return pq * pq / (metric.G.form(p) * metric.G.form(q))
