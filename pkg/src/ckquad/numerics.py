"""Scalar backends, homogeneous-vector arithmetic and the tolerance policy.

Two backends share every code path:

* rational -- ``gmpy2.mpq`` (exposed as :data:`Rational`), all predicates exact;
* float -- Python floats, predicates evaluated after scaling each
  homogeneous vector to sup-norm 1 and compared against a relative
  tolerance (default ``1e-9``).

A computation is carried out on the float backend as soon as one of its
inputs is a float; the vector helpers convert mixed input to floats.
"""

from __future__ import annotations

import contextlib
import contextvars
import enum
import math
from fractions import Fraction
from typing import Sequence, Union

import gmpy2
import numpy as np

from .errors import FullRank, RankDeficientAmbiguous, ZeroVector

Rational = type(gmpy2.mpq(0))
_Integer = type(gmpy2.mpz(0))
_Real = type(gmpy2.mpfr(0))
_EXACT = (Rational, _Integer, int, Fraction)
_EXACT_TYPES = frozenset(_EXACT)
Scalar = Union[Rational, float]
Vec3 = tuple  # (x1, x2, x3) of Scalars
Mat3 = tuple  # three row tuples

_ZERO = gmpy2.mpq(0)

DEFAULT_TOL = 1e-9
_tol: contextvars.ContextVar[float] = contextvars.ContextVar("ckquad_tol", default=DEFAULT_TOL)


class Backend(str, enum.Enum):
    RATIONAL = "rational"
    FLOAT = "float"


def get_tol() -> float:
    return _tol.get()


def set_tol(eps: float) -> None:
    if not eps > 0:
        raise ValueError("tolerance must be positive")
    _tol.set(float(eps))


@contextlib.contextmanager
def tolerance(eps: float):
    """Temporarily override the relative tolerance used by float predicates."""
    token = _tol.set(float(eps))
    try:
        yield
    finally:
        _tol.reset(token)


# ---------------------------------------------------------------- scalars

def Q(num, den=1) -> Rational:
    """Exact rational ``num / den``."""
    if isinstance(num, Fraction):
        num, den = num.numerator * 1, num.denominator * den
    return gmpy2.mpq(num, den)


def is_rational(x) -> bool:
    return isinstance(x, _EXACT)


def to_scalar(x) -> Scalar:
    """Coerce ints, Fractions, floats and ``"p/q"`` / decimal strings."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, Rational):
        return x
    if isinstance(x, (int, _Integer, np.integer)):
        return gmpy2.mpq(int(x))
    if isinstance(x, Fraction):
        return Q(x)
    if isinstance(x, (float, np.floating, _Real)):
        return float(x)
    if isinstance(x, str):
        s = x.strip()
        if any(c in s for c in ".eEn"):  # decimal literal, inf, nan
            return float(s)
        return Q(Fraction(s))
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def format_scalar(x: Scalar) -> str | float:
    if is_rational(x):
        x = Q(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return float(x)


def is_exact(*values) -> bool:
    stack = list(values)
    while stack:
        v = stack.pop()
        t = type(v)
        if t in _EXACT_TYPES:
            continue
        if t is tuple or t is list:
            stack.extend(v)
        elif isinstance(v, (tuple, list)):
            stack.extend(v)
        elif t is float or not isinstance(v, _EXACT):
            return False
    return True


def backend_of(*values) -> Backend:
    return Backend.RATIONAL if is_exact(*values) else Backend.FLOAT


def convert(v, backend: Backend):
    """Convert a scalar / nested tuple of scalars to ``backend``."""
    if isinstance(v, (tuple, list)):
        return tuple(convert(x, backend) for x in v)
    if backend is Backend.FLOAT:
        return float(v)
    if isinstance(v, float):
        return Q(Fraction(v))
    return to_scalar(v)


def is_zero(x: Scalar, scale: float = 1.0) -> bool:
    """Exact zero test on rationals; ``|x| <= eps * scale`` on floats."""
    if isinstance(x, _EXACT):
        return x == 0
    return abs(x) <= get_tol() * scale


def sign(x: Scalar, scale: float = 1.0) -> int:
    if is_zero(x, scale):
        return 0
    return 1 if x > 0 else -1


def sqrt_exact(q) -> Rational | None:
    """Rational square root of a non-negative rational, or ``None``."""
    if q < 0:
        return None
    q = Q(q)
    n, d = q.numerator, q.denominator
    if gmpy2.is_square(n) and gmpy2.is_square(d):
        return gmpy2.mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))
    return None


def sqrt_scalar(q: Scalar) -> Scalar:
    """Square root, exact whenever the rational argument is a perfect square."""
    if is_rational(q):
        r = sqrt_exact(q)
        if r is not None:
            return r
    return math.sqrt(float(q))


# ---------------------------------------------------------------- vectors

def vec(*xs) -> Vec3:
    if len(xs) == 1 and isinstance(xs[0], (tuple, list, np.ndarray)):
        xs = tuple(xs[0])
    return tuple(to_scalar(x) for x in xs)


def _floats(v):
    return tuple(float(x) for x in v)




def _flat_exact(v) -> bool:
    for x in v:
        if type(x) not in _EXACT_TYPES:
            return False
    return True


def _agree(a, b):
    """Bring two vectors onto one backend (floats if either is inexact)."""
    if _flat_exact(a) and _flat_exact(b):
        return a, b
    return _floats(a), _floats(b)


def dot(a, b) -> Scalar:
    a, b = _agree(a, b)
    if len(a) == 3:
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + (_ZERO if type(a[0]) in _EXACT_TYPES else 0.0)
    return sum((x * y for x, y in zip(a, b)), _ZERO if type(a[0]) in _EXACT_TYPES else 0.0)


def cross(a: Vec3, b: Vec3) -> Vec3:
    a, b = _agree(a, b)
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def add(a, b):
    a, b = _agree(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    a, b = _agree(a, b)
    return tuple(x - y for x, y in zip(a, b))


def smul(k, a):
    if type(k) in _EXACT_TYPES and _flat_exact(a):
        return tuple(k * x for x in a)
    k = float(k)
    return tuple(k * float(x) for x in a)


def lincomb(*pairs):
    """``lincomb((k1, v1), (k2, v2), ...)`` = k1*v1 + k2*v2 + ..."""
    out = None
    for k, v in pairs:
        term = smul(k, v)
        out = term if out is None else add(out, term)
    return out


def det3(a: Vec3, b: Vec3, c: Vec3) -> Scalar:
    """Determinant of the matrix with columns (equivalently rows) a, b, c."""
    return dot(a, cross(b, c))


def supnorm(a) -> float:
    return max(abs(float(x)) for x in a)


def is_zero_vec(a) -> bool:
    # strict on both backends: a tiny float vector is still a valid representative
    return all(x == 0 for x in a)


def chi(p) -> int:
    """Sign of the highest-index nonzero coordinate (0 for the zero vector)."""
    for x in reversed(tuple(p)):
        if x != 0:
            return 1 if x > 0 else -1
    return 0


def unit_scale(a):
    """Scale to sup-norm 1 (floats); rationals are returned unchanged."""
    if is_exact(a):
        return tuple(a)
    m = supnorm(a)
    if m == 0:
        return tuple(float(x) for x in a)
    return tuple(float(x) / m for x in a)


def canonical(a):
    """Canonical representative of the projective class of ``a``.

    Rationals: primitive integer vector with positive chi. Floats: sup-norm 1
    with positive chi.
    """
    if is_zero_vec(a):
        raise ZeroVector("zero vector has no projective class")
    if is_exact(a):
        a = tuple(to_scalar(x) for x in a)
        lcm = gmpy2.mpz(1)
        for x in a:
            lcm = gmpy2.lcm(lcm, x.denominator)
        ints = [(x * lcm).numerator for x in a]
        g = gmpy2.mpz(0)
        for x in ints:
            g = gmpy2.gcd(g, x)
        s = chi(ints)
        return tuple(gmpy2.mpq(s * x, g) for x in ints)
    u = unit_scale(a)
    # chi on floats ignores components that are numerically zero
    s = 1
    for x in reversed(u):
        if abs(x) > get_tol():
            s = 1 if x > 0 else -1
            break
    return tuple(s * x for x in u)


def projectively_equal(a, b) -> bool:
    """True iff the nonzero vectors a and b span the same line."""
    if is_zero_vec(a) or is_zero_vec(b):
        raise ZeroVector("projective equality needs nonzero vectors")
    if is_exact(a) and is_exact(b):
        return all(x == 0 for x in cross(a, b))
    c = cross(unit_scale(a), unit_scale(b))
    return supnorm(c) <= get_tol()


# ---------------------------------------------------------------- matrices

def mat(rows) -> Mat3:
    return tuple(tuple(to_scalar(x) for x in r) for r in rows)


def mat_vec(m: Mat3, v) -> Vec3:
    if len(m) != 3 or len(v) != 3:
        return tuple(dot(r, v) for r in m)
    r0, r1, r2 = m
    if _flat_exact(v) and _flat_exact(r0) and _flat_exact(r1) and _flat_exact(r2):
        zero = _ZERO
    else:
        v, r0, r1, r2, zero = _floats(v), _floats(r0), _floats(r1), _floats(r2), 0.0
    x, y, z = v
    return (r0[0] * x + r0[1] * y + r0[2] * z + zero,
            r1[0] * x + r1[1] * y + r1[2] * z + zero,
            r2[0] * x + r2[1] * y + r2[2] * z + zero)


def transpose(m: Mat3) -> Mat3:
    return tuple(zip(*m))


def mat_mul(a: Mat3, b: Mat3) -> Mat3:
    bt = transpose(b)
    return tuple(tuple(dot(r, c) for c in bt) for r in a)


def columns(*cols) -> Mat3:
    """Matrix whose columns are the given vectors (floats if any column is inexact)."""
    if not all(_flat_exact(c) for c in cols):
        cols = [_floats(c) for c in cols]
    return transpose(tuple(tuple(c) for c in cols))


def det(m: Mat3) -> Scalar:
    return det3(m[0], m[1], m[2])


def adjugate(m: Mat3) -> Mat3:
    """Classical adjugate; ``m @ adj(m) = det(m) * I``."""
    r0, r1, r2 = m
    c0, c1, c2 = cross(r1, r2), cross(r2, r0), cross(r0, r1)
    return columns(c0, c1, c2)


def quad_form(m: Mat3, p, q=None) -> Scalar:
    w = mat_vec(m, p if q is None else q)
    if type(w[0]) is float:
        p = _floats(p)
    return dot(p, w)


def mat_supnorm(m) -> float:
    return max(abs(float(x)) for r in m for x in r)


# ---------------------------------------------------------------- kernels

def _kernel_exact(rows: Sequence[Sequence[Rational]], n: int) -> list[tuple]:
    a = [[to_scalar(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [_ZERO] * n
        v[f] = gmpy2.mpq(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][f]
        basis.append(tuple(v))
    return basis


def _kernel_float(rows, n: int) -> list[tuple]:
    a = np.array([[float(x) for x in r] for r in rows], dtype=float)
    if a.size == 0:
        return [tuple(float(i == j) for j in range(n)) for i in range(n)]
    norms = np.abs(a).max(axis=1)
    norms[norms == 0] = 1.0
    a = a / norms[:, None]
    _, s, vt = np.linalg.svd(a)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > get_tol() * max(smax, 1e-300)))
    return [tuple(float(x) for x in vt[i]) for i in range(rank, n)]


def kernel(rows, n: int) -> list[tuple]:
    """Basis of the right null space of ``rows`` (m x n).

    Exact rows: reduced row echelon form, one basis vector per free column
    with that column set to 1. Float rows: SVD with the relative tolerance.
    """
    if is_exact(rows):
        return _kernel_exact(rows, n)
    return _kernel_float(rows, n)


def solve_linear_3(rows) -> Vec3:
    """Nonzero kernel vector of a rank-2 system with three unknowns."""
    ker = kernel(rows, 3)
    if not ker:
        raise FullRank("system has only the zero solution")
    if len(ker) > 1:
        raise RankDeficientAmbiguous(f"kernel has dimension {len(ker)}")
    return ker[0]


def to_numpy(v) -> np.ndarray:
    return np.array([[float(x) for x in r] for r in v] if isinstance(v[0], (tuple, list)) else
                    [float(x) for x in v], dtype=float)


def from_numpy(a: np.ndarray):
    if a.ndim == 1:
        return tuple(float(x) for x in a)
    return tuple(tuple(float(x) for x in r) for r in a)


def proportional(a, b) -> bool:
    """True iff the nonzero vectors ``a`` and ``b`` (any length) are parallel."""
    if is_exact(a) and is_exact(b):
        k = next(i for i, x in enumerate(a) if x != 0)
        if b[k] == 0:
            return False
        return all(x * b[k] == y * a[k] for x, y in zip(a, b))
    ua, ub = unit_scale(a), unit_scale(b)
    err = min(max(abs(x - y) for x, y in zip(ua, ub)),
              max(abs(x + y) for x, y in zip(ua, ub)))
    return err <= get_tol()
