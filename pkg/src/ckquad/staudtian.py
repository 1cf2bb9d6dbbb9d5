"""The Staudtian of finite point sets and the balance of a convex tetragon.

``psi`` is the Gram determinant of the normalized representatives and
``sigma = sqrt|psi| / (s-1)!``. On the rational backend ``psi`` is exact
(the Gram determinant of integral representatives divided by the product of
their norm-squares), so ``sigma**2`` is always exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numerics as nm
from .errors import NonConvex, PNotInside, SideConditionViolated
from .metric import Metric, dual_point, is_isotropic, normalize, point_class
from .projective import HPoint, collinear, join, meet
from .quadri.figures import Tetragon


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return nm.det(m)
    if nm.is_exact(m):
        # fraction-free elimination
        a = [list(r) for r in m]
        sign, prev = 1, 1
        for k in range(n - 1):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                return 0 * a[0][0]
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    return float(np.linalg.det(nm.to_numpy(m)))


def psi(metric: Metric, points) -> object:
    """Gram determinant of the normalized points; 0 if any point is isotropic."""
    pts = list(points)
    if not pts or any(is_isotropic(metric, P) for P in pts):
        return 0
    n = [normalize(metric, P) for P in pts]
    gram = [[metric.G.form(a.base, b.base) for b in n] for a in n]
    denom = 1
    for x in n:
        denom = denom * abs(x.q)
    return _det(gram) / denom


def sigma_squared(metric: Metric, points):
    pts = list(points)
    f = math.factorial(len(pts) - 1)
    return abs(psi(metric, pts)) / (f * f)


def sigma(metric: Metric, points):
    """Staudtian; 0 when psi vanishes (the definition leaves that case open)."""
    return nm.sqrt_scalar(sigma_squared(metric, points))


def _as_exact(x):
    return nm.is_rational(x)


def sum_equals(terms, total) -> bool:
    """sqrt(x1) + sqrt(x2) == sqrt(y) for non-negative squares x1, x2, y."""
    x1, x2 = terms
    if _as_exact(x1) and _as_exact(x2) and _as_exact(total):
        rhs = total - x1 - x2            # = 2 sqrt(x1 x2)
        return rhs >= 0 and rhs * rhs == 4 * x1 * x2
    s = math.sqrt(float(x1)) + math.sqrt(float(x2))
    t = math.sqrt(float(total))
    return nm.is_zero(s - t, max(1.0, t))


# ---------------------------------------------------------------- Anne

def orientation_signs(T: Tetragon, P: HPoint | None = None):
    """Signs of det(V_k, V_k+1, X) over sides k and the remaining vertices X (or P)."""
    V = [nm.canonical(X.coords) for X in T.vertices]
    out = []
    for k in range(4):
        a, b = V[k], V[(k + 1) % 4]
        others = [V[j] for j in range(4) if j not in (k, (k + 1) % 4)] if P is None \
            else [nm.canonical(P.coords)]
        for X in others:
            out.append(nm.sign(nm.det3(a, b, X), nm.supnorm(a) * nm.supnorm(b) * nm.supnorm(X)))
    return out


def is_strictly_convex(T: Tetragon) -> bool:
    if T.signs != (1, 1, 1, 1):
        return False
    s = orientation_signs(T)
    return 0 not in s and len(set(s)) == 1


def is_inside(T: Tetragon, P: HPoint) -> bool:
    """Strictly inside the convex tetragon T^(++++) (either representative of P)."""
    s = orientation_signs(T, P)
    return 0 not in s and len(set(s)) == 1


@dataclass(frozen=True)
class AnneBalance:
    defect: object           # sigma(PAB) + sigma(PCD) - sigma(PBC) - sigma(PDA)
    determinant: object      # det(P°, A°+C°, B°+D°) / 2
    agree: bool              # |defect| == |determinant|

    @property
    def balanced(self) -> bool:
        return nm.is_zero(self.defect)


def anne_balance(metric: Metric, T: Tetragon, P: HPoint) -> AnneBalance:
    if not is_strictly_convex(T):
        raise NonConvex("tetragon is not strictly convex with + sides")
    if metric.is_hyperbolic and len({point_class(metric, X) for X in T.vertices}) != 1:
        raise SideConditionViolated("vertices are not all inside or all outside the absolute")
    if is_isotropic(metric, P) or not is_inside(T, P):
        raise PNotInside("P is not an anisotropic interior point")
    A, B, C, D = T.vertices
    sig = {}
    for name, tri in (("PAB", (P, A, B)), ("PCD", (P, C, D)), ("PBC", (P, B, C)), ("PDA", (P, D, A))):
        sig[name] = sigma(metric, tri)
    defect = sig["PAB"] + sig["PCD"] - sig["PBC"] - sig["PDA"]
    p, a, b, c, d = (normalize(metric, X).vec for X in (P, A, B, C, D))
    det = nm.det3(p, nm.add(a, c), nm.add(b, d)) / 2
    g = nm.sqrt_scalar(abs(metric.G.det()))
    det = det * g if nm.is_exact(det, g) else float(det) * float(g)
    if nm.is_exact(defect, det):
        agree = abs(defect) == abs(det)
    else:
        agree = nm.is_zero(abs(float(defect)) - abs(float(det)),
                           max(1.0, abs(float(det))))
    return AnneBalance(defect, det, agree)


# ---------------------------------------------------------------- identities

def gram_det_identity(metric: Metric, v1, v2, v3) -> bool:
    """det(v_i [G] v_j) == det(v1, v2, v3)^2 * det G (unit |det G| gives the square)."""
    vs = (v1, v2, v3)
    gram = [[metric.G.form(a, b) for b in vs] for a in vs]
    lhs, rhs = nm.det(gram), nm.det3(v1, v2, v3) ** 2 * metric.G.det()
    if nm.is_exact(lhs, rhs):
        return lhs == rhs
    return nm.is_zero(float(lhs) - float(rhs), max(1.0, abs(float(rhs))))


def alternating_det_identity(w, v1, v2, v3, v4) -> bool:
    lhs = (nm.det3(w, v1, v2) - nm.det3(w, v2, v3)
           + nm.det3(w, v3, v4) - nm.det3(w, v4, v1))
    rhs = nm.det3(w, nm.add(v1, v3), nm.add(v2, v4))
    if nm.is_exact(lhs, rhs):
        return lhs == rhs
    return nm.is_zero(float(lhs) - float(rhs), max(1.0, abs(float(rhs))))


# ---------------------------------------------------------------- properties

def _same(x, y) -> bool:
    if nm.is_exact(x, y):
        return x == y
    return nm.is_zero(float(x) - float(y), max(1.0, abs(float(x)), abs(float(y))))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise SideConditionViolated(msg)


def _triangle_side(metric: Metric, A, B, C):
    _require(not any(is_isotropic(metric, X) for X in (A, B, C)), "isotropic point")
    _require(not collinear(A, B, C), "collinear triple")
    P = dual_point(metric, join(A, B))
    _require(not is_isotropic(metric, P) and P != C, "dual of A v B is isotropic or equals C")
    return P


def check_transitivity(metric: Metric, t1, t2, t3) -> bool:
    """sigma(t1) = sigma(t2) and sigma(t2) = sigma(t3) imply sigma(t1) = sigma(t3)."""
    s1, s2, s3 = (sigma_squared(metric, t) for t in (t1, t2, t3))
    return not (_same(s1, s2) and _same(s2, s3)) or _same(s1, s3)


def check_foot_product(metric: Metric, A, B, C) -> bool:
    """sigma(ABC) = 1/2 sigma(AB) sigma(CQ) with Q = (C v P) ^ (A v B)."""
    P = _triangle_side(metric, A, B, C)
    Q = meet(join(C, P), join(A, B))
    _require(not is_isotropic(metric, Q), "foot point is isotropic")
    lhs = sigma_squared(metric, (A, B, C))
    rhs = sigma_squared(metric, (A, B)) * sigma_squared(metric, (C, Q)) / 4
    return _same(lhs, rhs)


def on_circle_about(metric: Metric, P, C, X) -> bool:
    """X on the circle about P through C."""
    g = metric.G
    r = g.form(C.coords) * g.form(P.coords, X.coords) ** 2 \
        - g.form(P.coords, C.coords) ** 2 * g.form(X.coords)
    scale = (nm.supnorm(C.coords) * nm.supnorm(P.coords) * nm.supnorm(X.coords)) ** 2 \
        * g.supnorm() ** 3
    return nm.is_zero(r, scale)


def check_equal_height(metric: Metric, A, B, C, C2) -> bool:
    """sigma(ABC) = sigma(ABC2) iff C2 lies on the circle about P through C."""
    P = _triangle_side(metric, A, B, C)
    _require(not is_isotropic(metric, C2), "isotropic point")
    equal = _same(sigma_squared(metric, (A, B, C)), sigma_squared(metric, (A, B, C2)))
    return equal == on_circle_about(metric, P, C, C2)


def is_midpoint(metric: Metric, A, B, Q) -> bool:
    """Q = A° +- B° for some sign (Q on A v B)."""
    a, b = normalize(metric, A), normalize(metric, B)
    n = nm.cross(a.base, b.base)
    lam = nm.det3(Q.coords, b.base, n)
    mu = nm.det3(a.base, Q.coords, n)
    # Q ~ lam p + mu q, and p/sqrt|qa| +- q/sqrt|qb| needs mu^2 |qb| = lam^2 |qa|
    x, y = mu * mu * abs(b.q), lam * lam * abs(a.q)
    return _same(x, y)


def check_midpoint_balance(metric: Metric, A, B, C, Q) -> bool:
    """sigma(AQC) = sigma(QBC) iff Q is an inner or outer midpoint of [A, B]."""
    _triangle_side(metric, A, B, C)
    _require(collinear(A, B, Q) and not is_isotropic(metric, Q), "Q not an anisotropic point of A v B")
    equal = _same(sigma_squared(metric, (A, Q, C)), sigma_squared(metric, (Q, B, C)))
    return equal == is_midpoint(metric, A, B, Q)


def check_non_additivity(metric: Metric, A, B, C, D) -> bool:
    """sigma(ADC) + sigma(DBC) = sigma(ABC) iff D is A or B."""
    _triangle_side(metric, A, B, C)
    _require(collinear(A, B, D) and not is_isotropic(metric, D), "D not an anisotropic point of A v B")
    additive = sum_equals((sigma_squared(metric, (A, D, C)), sigma_squared(metric, (D, B, C))),
                          sigma_squared(metric, (A, B, C)))
    return additive == (D == A or D == B)


PROPERTY_CHECKS = {
    "transitivity": check_transitivity,
    "foot_product": check_foot_product,
    "equal_height": check_equal_height,
    "midpoint_balance": check_midpoint_balance,
    "non_additivity": check_non_additivity,
}


def staudtian_properties_check(metric: Metric, configurations) -> dict:
    """Run ``(property, args)`` pairs; returns {property: [bool per configuration]}."""
    report: dict = {k: [] for k in PROPERTY_CHECKS}
    for name, args in configurations:
        report[name].append(PROPERTY_CHECKS[name](metric, *args))
    return report
