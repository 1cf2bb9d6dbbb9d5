"""Scene files: a metric plus named points, lines, conics and tetragons, as JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .. import numerics as nm
from ..errors import GeometryError, InvalidScene, UnknownFixture
from ..metric import Metric, is_isotropic
from ..projective import Conic, HLine, HPoint, SymMat3
from ..quadri.figures import Tetragon, format_signs


@dataclass
class Scene:
    metric: Metric
    points: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict)
    conics: dict = field(default_factory=dict)
    tetragons: dict = field(default_factory=dict)
    backend: str = "rational"
    tol: float = nm.DEFAULT_TOL
    notes: dict = field(default_factory=dict)


def _scalar(x):
    try:
        return nm.to_scalar(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidScene(f"bad number {x!r}") from exc


def _triple(raw, what: str):
    if not isinstance(raw, (list, tuple)) or len(raw) != 3:
        raise InvalidScene(f"{what} needs three coordinates")
    return tuple(_scalar(x) for x in raw)


def _metric(raw) -> Metric:
    try:
        if "signature" in raw:
            return Metric(SymMat3.diag(*(_scalar(x) for x in raw["signature"])))
        if "matrix" in raw:
            m = [_scalar(x) for x in raw["matrix"]]
            if len(m) != 6:
                raise InvalidScene("metric matrix needs six entries m11 m12 m13 m22 m23 m33")
            return Metric(SymMat3.from_entries(*m))
    except GeometryError as exc:
        raise InvalidScene(str(exc)) from exc
    except (TypeError, ValueError) as exc:
        raise InvalidScene(f"bad metric: {exc}") from exc
    raise InvalidScene("metric needs 'signature' or 'matrix'")


def scene_from_dict(data: dict) -> Scene:
    if not isinstance(data, dict) or "metric" not in data:
        raise InvalidScene("scene needs a metric")
    backend = data.get("backend", "rational")
    if backend not in ("rational", "float"):
        raise InvalidScene(f"unknown backend {backend!r}")
    scene = Scene(_metric(data["metric"]), backend=backend,
                  tol=float(data.get("tol", nm.DEFAULT_TOL)), notes=dict(data.get("notes", {})))
    try:
        for name, raw in data.get("points", {}).items():
            scene.points[name] = HPoint(_triple(raw, f"point {name}"))
        for name, raw in data.get("lines", {}).items():
            scene.lines[name] = HLine(_triple(raw, f"line {name}"))
        for name, raw in data.get("conics", {}).items():
            m = [_scalar(x) for x in raw]
            if len(m) != 6:
                raise InvalidScene(f"conic {name} needs six entries")
            scene.conics[name] = Conic(SymMat3.from_entries(*m))
        for name, raw in data.get("tetragons", {}).items():
            verts = []
            for v in raw["vertices"]:
                if isinstance(v, str):
                    if v not in scene.points:
                        raise InvalidScene(f"tetragon {name} names unknown point {v!r}")
                    verts.append(scene.points[v])
                else:
                    verts.append(HPoint(_triple(v, f"vertex of {name}")))
            if len(verts) != 4:
                raise InvalidScene(f"tetragon {name} needs four vertices")
            for P in verts:
                if is_isotropic(scene.metric, P):
                    raise InvalidScene(f"tetragon {name} has an isotropic vertex")
            scene.tetragons[name] = Tetragon.from_points(*verts, signs=raw.get("signs", "++++"))
    except GeometryError as exc:
        raise InvalidScene(f"{type(exc).__name__}: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidScene(str(exc)) from exc
    if scene.backend == "float":
        scene.points = {k: P.to_float() for k, P in scene.points.items()}
        scene.lines = {k: L.to_float() for k, L in scene.lines.items()}
    return scene


def load_scene(path) -> Scene:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidScene(f"not JSON: {exc}") from exc
    return scene_from_dict(data)


def _num(x):
    return nm.format_scalar(x)


def scene_to_dict(scene: Scene) -> dict:
    G = scene.metric.G
    out: dict = {"metric": {"matrix": [_num(x) for x in G.entries]},
                 "backend": scene.backend, "tol": scene.tol}
    if scene.points:
        out["points"] = {k: [_num(x) for x in P.coords] for k, P in scene.points.items()}
    if scene.lines:
        out["lines"] = {k: [_num(x) for x in L.coords] for k, L in scene.lines.items()}
    if scene.conics:
        out["conics"] = {k: [_num(x) for x in K.mat.entries] for k, K in scene.conics.items()}
    if scene.tetragons:
        names = {id(P): k for k, P in scene.points.items()}
        out["tetragons"] = {
            k: {"vertices": [names.get(id(P)) or [_num(x) for x in P.coords] for P in T.vertices],
                "signs": format_signs(T.signs)}
            for k, T in scene.tetragons.items()}
    if scene.notes:
        out["notes"] = scene.notes
    return out


def dump_scene(scene: Scene) -> str:
    return json.dumps(scene_to_dict(scene), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------- fixtures

def _hyperbolic_d():
    import math
    r30 = math.sqrt(30)
    root = math.sqrt(37607 - 6866 * r30)
    return [6 * root - 150 * r30 + 820, -3 * root + 75 * r30 - 413, 4]


FIXTURES = {
    "elliptic-sixpoint": lambda: {
        "metric": {"signature": [1, 1, 1]},
        "points": {"A": ["-3", "0", "4"], "B": ["0", "3", "4"], "C": ["75", "-24", "32"],
                   "D": ["0", "-3", "4"], "P1": ["-50", "41", "12"], "P2": ["0", "-2", "11"],
                   "P3": ["-6", "-3", "4"]},
        "conics": {"six_point": ["-43", "16", "6", "75", "6", "0"]},
        "tetragons": {"T": {"vertices": ["A", "B", "C", "D"], "signs": "++++"}},
    },
    "hyperbolic-noncongruent": lambda: {
        "metric": {"signature": [1, 1, -1]},
        "backend": "float",
        "points": {"A": ["-1", "-1", "2"], "B": ["0", "1", "4"], "C": ["1", "-1", "2"],
                   "D": _hyperbolic_d()},
        "notes": {"D": "float evaluation of [6r - 150s + 820 : -3r + 75s - 413 : 4] with "
                       "s = sqrt(30), r = sqrt(37607 - 6866 s)"},
    },
    "canonical-square": lambda: {
        "metric": {"signature": [1, 1, 1]},
        "points": {"A": ["-1", "1", "1"], "B": ["-1", "-1", "1"], "C": ["1", "-1", "1"],
                   "D": ["1", "1", "1"]},
        "tetragons": {"T": {"vertices": ["A", "B", "C", "D"], "signs": "++++"}},
    },
}


def fixture_dict(name: str) -> dict:
    if name not in FIXTURES:
        raise UnknownFixture(name)
    return FIXTURES[name]()


def fixture(name: str) -> Scene:
    return scene_from_dict(fixture_dict(name))


def fixture_json(name: str) -> str:
    return json.dumps(fixture_dict(name), indent=2, sort_keys=True) + "\n"
