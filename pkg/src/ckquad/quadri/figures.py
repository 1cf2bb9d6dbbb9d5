"""Quadrangles, tetragons and the canonical frame of the diagonal triangle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .. import numerics as nm
from ..errors import (DegenerateQuadrangle, FrameNotRealizable, IsotropicElement,
                      IsotropicPoint)
from ..metric import Metric, normalize
from ..projective import HLine, HPoint, collinear, join, meet

VERTEX_NAMES = ("A", "B", "C", "D")
# the six vertex pairs of a complete tetragraph: sides first, then diagonals
TETRAGRAPH_PAIRS = ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3))


def parse_signs(signs) -> tuple:
    """``"+--+"`` or an iterable of +-1 -> tuple of ints."""
    if isinstance(signs, str):
        if any(ch not in "+-" for ch in signs):
            raise ValueError(f"bad sign string {signs!r}")
        return tuple(1 if ch == "+" else -1 for ch in signs)
    out = tuple(int(s) for s in signs)
    if any(s not in (1, -1) for s in out):
        raise ValueError("signs must be +1 or -1")
    return out


def format_signs(signs) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


@dataclass(frozen=True)
class Quadrangle:
    A: HPoint
    B: HPoint
    C: HPoint
    D: HPoint

    def __post_init__(self):
        for tri in combinations(self.vertices, 3):
            if collinear(*tri):
                raise DegenerateQuadrangle("three vertices are collinear")

    @property
    def vertices(self) -> tuple:
        return (self.A, self.B, self.C, self.D)

    def line(self, i: int, j: int) -> HLine:
        V = self.vertices
        return join(V[i], V[j])

    def diagonal_points(self) -> tuple:
        return diagonal_points(self)


def diagonal_points(Q: Quadrangle) -> tuple:
    """P1 = (A v D) ^ (B v C), P2 = (B v D) ^ (A v C), P3 = (C v D) ^ (A v B)."""
    A, B, C, D = Q.vertices
    P1 = meet(join(A, D), join(B, C))
    P2 = meet(join(B, D), join(A, C))
    P3 = meet(join(C, D), join(A, B))
    return tuple(P.canonical() for P in (P1, P2, P3))


@dataclass(frozen=True)
class Tetragon:
    quad: Quadrangle
    signs: tuple = (1, 1, 1, 1)

    def __post_init__(self):
        object.__setattr__(self, "signs", parse_signs(self.signs))
        if len(self.signs) != 4:
            raise ValueError("a tetragon has four side signs")

    @classmethod
    def from_points(cls, A, B, C, D, signs="++++") -> "Tetragon":
        return cls(Quadrangle(A, B, C, D), signs)

    @property
    def vertices(self) -> tuple:
        return self.quad.vertices

    def complementary(self) -> "Tetragon":
        return Tetragon(self.quad, tuple(-s for s in self.signs))

    def sides(self):
        """(i, j, sign) for the sides [A,B], [B,C], [C,D], [D,A]."""
        return [(k, (k + 1) % 4, self.signs[k]) for k in range(4)]

    @property
    def plus_count(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    def __repr__(self):
        return f"Tetragon^({format_signs(self.signs)}){list(self.vertices)}"


@dataclass(frozen=True)
class CanonicalFrame:
    """A° = (-s,t,1)/a, B° = (-s,-t,1)/b, C° = (s,-t,1)/c, D° = (s,t,1)/d.

    Coordinates refer to the normalized diagonal points in the order
    (P1°, P3°, P2°); ``basis`` holds those three vectors as columns.
    """

    s: object
    t: object
    a: object
    b: object
    c: object
    d: object
    basis: tuple

    @property
    def normalizers(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    @property
    def uniform(self) -> bool:
        return len({nm.sign(x) for x in self.normalizers}) == 1

    def coords(self, X) -> tuple:
        M = self.basis
        d = nm.det(M)
        return tuple(v / d for v in nm.mat_vec(nm.adjugate(M), X))

    def ambient(self, x) -> tuple:
        return nm.mat_vec(self.basis, x)


def _normalized(metric: Metric, P: HPoint):
    try:
        return normalize(metric, P)
    except IsotropicPoint as exc:
        raise IsotropicElement(str(exc)) from None


def canonical_frame(metric: Metric, Q: Quadrangle, strict: bool = False) -> CanonicalFrame:
    """Recover s, t and the normalizers a..d from the quadrangle.

    With ``strict`` the normalizers must share one sign (they can be made
    positive); otherwise signed values are returned.
    """
    P1, P2, P3 = diagonal_points(Q)
    e = [_normalized(metric, P).vec for P in (P1, P3, P2)]
    E = nm.columns(*e)
    dE = nm.det(E)
    adj = nm.adjugate(E)
    V = [_normalized(metric, X).vec for X in Q.vertices]
    if not nm.is_exact(E, V):
        dE = float(dE)
    x = [tuple(v / dE for v in nm.mat_vec(adj, Vk)) for Vk in V]
    a, b, c, d = (1 / xk[2] for xk in x)
    s = -x[0][0] * a
    t = x[0][1] * a
    F = CanonicalFrame(s, t, a, b, c, d, E)
    if strict and not F.uniform:
        raise FrameNotRealizable("normalizers a, b, c, d do not share a sign")
    return F
