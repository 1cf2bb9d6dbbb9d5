"""Deterministic SVG rendering of scenes in an affine or Klein-disk chart."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .. import numerics as nm
from ..errors import InvalidScene, UnrenderableElement
from ..metric import normalize
from ..projective import Conic, HLine, HPoint, SymMat3, line_conic_intersect
from .scene import Scene

SIZE = 800
CHARTS = ("affine", "klein-disk")
MIN_SAMPLES = 256


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class Viewport:
    def __init__(self, xmin, xmax, ymin, ymax):
        self.xmin, self.xmax, self.ymin, self.ymax = xmin, xmax, ymin, ymax

    def inside(self, x, y, slack=0.0) -> bool:
        w, h = self.xmax - self.xmin, self.ymax - self.ymin
        return (self.xmin - slack * w <= x <= self.xmax + slack * w
                and self.ymin - slack * h <= y <= self.ymax + slack * h)

    def to_svg(self, x, y):
        sx = (x - self.xmin) / (self.xmax - self.xmin) * SIZE
        sy = (self.ymax - y) / (self.ymax - self.ymin) * SIZE
        return sx, sy


def _chart(v):
    x, y, z = (float(c) for c in v)
    if abs(z) <= 1e-12 * max(abs(x), abs(y), 1e-300):
        return None
    return x / z, y / z


def _viewport(scene: Scene, chart: str) -> Viewport:
    if chart == "klein-disk":
        return Viewport(-1.15, 1.15, -1.15, 1.15)
    pts = [_chart(P.coords) for P in scene.points.values()]
    for T in scene.tetragons.values():
        pts += [_chart(P.coords) for P in T.vertices]
    pts = [p for p in pts if p is not None]
    if not pts:
        return Viewport(-2, 2, -2, 2)
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - min(xs), max(ys) - min(ys), 1e-6) / 2 * 1.3
    return Viewport(cx - half, cx + half, cy - half, cy + half)


def _clip_line(L: HLine, vp: Viewport):
    a, b, c = (float(x) for x in L.coords)
    if abs(a) < 1e-12 and abs(b) < 1e-12:
        raise UnrenderableElement("line at infinity of the chart")
    pts = []
    for x in (vp.xmin, vp.xmax):
        if abs(b) > 1e-15:
            y = -(a * x + c) / b
            if vp.ymin - 1e-9 <= y <= vp.ymax + 1e-9:
                pts.append((x, y))
    for y in (vp.ymin, vp.ymax):
        if abs(a) > 1e-15:
            x = -(b * y + c) / a
            if vp.xmin - 1e-9 <= x <= vp.xmax + 1e-9:
                pts.append((x, y))
    pts = sorted(set((round(x, 9), round(y, 9)) for x, y in pts))
    if len(pts) < 2:
        return None
    return pts[0], pts[-1]


def _polyline_paths(samples, vp: Viewport) -> list:
    """Split a sequence of homogeneous samples into chart polylines."""
    paths, cur = [], []
    prev = None
    for v in samples:
        p = _chart(v)
        ok = p is not None and vp.inside(*p, slack=0.5)
        # a sign change of the last coordinate means the curve passed through infinity
        if cur and (not ok or float(prev[2]) * float(v[2]) < 0):
            paths.append(cur)
            cur = []
        if ok:
            cur.append(vp.to_svg(*p))
        prev = v
    if cur:
        paths.append(cur)
    return [p for p in paths if len(p) > 1]


def _path_d(paths) -> str:
    parts = []
    for pts in paths:
        parts.append("M " + " L ".join(f"{_f(x)} {_f(y)}" for x, y in pts))
    return " ".join(parts)


def _point_on(K: Conic):
    """A real point of K (floats), or None."""
    for k in range(48):
        phi = math.pi * k / 48
        for off in (0.0, 0.5, -0.5, 2.0, -2.0):
            L = HLine((math.cos(phi), math.sin(phi), off))
            try:
                pts = line_conic_intersect(L, Conic(K.mat.to_float()))
            except Exception:
                continue
            if pts:
                return [float(x) for x in pts[0].coords]
    return None


def conic_samples(K: Conic, n: int = MIN_SAMPLES) -> list:
    """Homogeneous points of K from the pencil of lines through one of its points."""
    M = [[float(x) for x in r] for r in K.mat.rows]
    P = _point_on(K)
    if P is None:
        raise UnrenderableElement("conic has no real points")

    def form(u, v):
        return sum(u[i] * M[i][j] * v[j] for i in range(3) for j in range(3))

    # two directions spanning lines through P, kept away from P itself
    e = sorted(range(3), key=lambda i: abs(P[i]))
    D1 = [0.0, 0.0, 0.0]
    D2 = [0.0, 0.0, 0.0]
    D1[e[0]], D2[e[1]] = 1.0, 1.0

    def at(phi):
        D = [math.cos(phi) * a + math.sin(phi) * b for a, b in zip(D1, D2)]
        dd, pd = form(D, D), form(P, D)
        # second meet of P v D with K: (D K D) P - 2 (P K D) D
        return [dd * p - 2 * pd * d for p, d in zip(P, D)]

    return [at(math.pi * k / n) for k in range(n + 1)]


def _sample_adaptive(K: Conic, vp: Viewport, n: int = MIN_SAMPLES):
    samples = conic_samples(K, n)
    # refine where consecutive finite samples are far apart on screen
    refined = [samples[0]]
    fine = None
    for k in range(1, len(samples)):
        a, b = _chart(samples[k - 1]), _chart(samples[k])
        if a and b and vp.inside(*a, 0.5) and vp.inside(*b, 0.5):
            sa, sb = vp.to_svg(*a), vp.to_svg(*b)
            if math.dist(sa, sb) > 12 and float(samples[k - 1][2]) * float(samples[k][2]) > 0:
                if fine is None:
                    fine = conic_samples(K, 4 * n)
                refined.extend(fine[4 * (k - 1) + 1: 4 * k])
        refined.append(samples[k])
    return refined


def _segment_samples(metric, P, Q, sign, n: int = 64):
    a, b = normalize(metric, P).vec, normalize(metric, Q).vec
    a = [float(x) for x in a]
    b = [float(x) for x in b]
    return [[(1 - t) * x + sign * t * y for x, y in zip(a, b)] for t in (k / n for k in range(n + 1))]


def render_svg(scene: Scene, chart: str = "affine") -> str:
    if chart not in CHARTS:
        raise InvalidScene(f"unknown chart {chart!r}")
    metric = scene.metric
    if chart == "klein-disk":
        G = metric.G
        if not (metric.is_hyperbolic and G == SymMat3.diag(1, 1, -1)):
            raise InvalidScene("the Klein-disk chart needs the metric diag(1, 1, -1)")
    vp = _viewport(scene, chart)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" '
           f'height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
           '<style>.pt{fill:#222}.lbl{font:14px sans-serif}.ln{stroke:#555;fill:none}'
           '.cn{stroke:#c33;fill:none;stroke-width:1.5}.abs{stroke:#36c;fill:none;'
           'stroke-width:2;stroke-dasharray:6 3}.side{stroke:#282;fill:none;stroke-width:2}</style>']
    if metric.is_hyperbolic:
        d = _path_d(_polyline_paths(_sample_adaptive(Conic(metric.G), vp), vp))
        out.append(f'<path id="absolute" class="abs" d="{d}"/>')
    for name, K in sorted(scene.conics.items()):
        d = _path_d(_polyline_paths(_sample_adaptive(K, vp), vp))
        out.append(f'<path id="conic-{escape(name)}" class="cn" d="{d}"/>')
    for name, L in sorted(scene.lines.items()):
        seg = _clip_line(L, vp)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = (vp.to_svg(*p) for p in seg)
        out.append(f'<line id="line-{escape(name)}" class="ln" x1="{_f(x1)}" y1="{_f(y1)}" '
                   f'x2="{_f(x2)}" y2="{_f(y2)}"/>')
    for name, T in sorted(scene.tetragons.items()):
        for k, (i, j, s) in enumerate(T.sides()):
            V = T.vertices
            d = _path_d(_polyline_paths(_segment_samples(metric, V[i], V[j], s), vp))
            out.append(f'<path id="tetragon-{escape(name)}-side{k}" class="side" d="{d}"/>')
    for name, P in sorted(scene.points.items()):
        p = _chart(P.coords)
        if p is None:
            raise UnrenderableElement(f"point {name} is at infinity of the chart")
        x, y = vp.to_svg(*p)
        out.append(f'<circle id="point-{escape(name)}" class="pt" cx="{_f(x)}" cy="{_f(y)}" r="4"/>')
        out.append(f'<text class="lbl" x="{_f(x + 6)}" y="{_f(y - 6)}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
