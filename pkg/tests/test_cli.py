import json
import re

import pytest

from ckquad.cli import campaigns
from ckquad.cli.__main__ import EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_USAGE, main
from ckquad.cli.render import render_svg
from ckquad.cli.scene import dump_scene, fixture, load_scene, scene_from_dict
from ckquad.errors import InvalidScene, UnrenderableElement
from ckquad.projective import HPoint
from ckquad.quadri.figures import Quadrangle, diagonal_points
from ckquad.quadri.newton import semi_centroid


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestVerify:
    def test_thm4(self, capsys):
        code, out, _ = run(capsys, "verify", "thm4", "--plane", "elliptic", "--trials", "200",
                           "--seed", "7")
        assert code == EXIT_OK and "200 passed" in out

    def test_thm1_exact_residuals(self, capsys):
        code, out, _ = run(capsys, "verify", "thm1", "--backend", "rational", "--trials", "100",
                           "--json")
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["counters"]["zero_residual"] == report["passed"] == 100

    def test_thm7_anne(self, capsys):
        code, _, _ = run(capsys, "verify", "thm7-anne", "--plane", "hyperbolic", "--trials", "100",
                         "--tol", "1e-8")
        assert code == EXIT_OK

    @pytest.mark.parametrize("argv", [
        ["verify", "thm99"],
        ["verify"],
        ["verify", "thm1", "--tol", "0"],
        ["verify", "--replay", "not-base64!"],
        ["fixture", "no-such-fixture"],
    ])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == EXIT_USAGE

    def test_bad_flag_value(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "thm1", "--plane", "parabolic"])
        assert exc.value.code == EXIT_USAGE

    def test_failure_replays(self, capsys, monkeypatch):
        def flaky(ctx):
            return campaigns.Outcome("fail" if ctx.trial == 3 else "pass", {"trial": ctx.trial})
        monkeypatch.setitem(campaigns.TRIALS, "thm1", flaky)
        code, out, _ = run(capsys, "verify", "thm1", "--trials", "5", "--json")
        report = json.loads(out)
        assert code == EXIT_COUNTEREXAMPLE and report["failed"] == 1
        blob = report["failures"][0]["replay"]
        code, out, _ = run(capsys, "verify", "--replay", blob, "--json")
        assert code == EXIT_COUNTEREXAMPLE
        replayed = json.loads(out)
        assert replayed["trial"] == 3 and replayed["status"] == "fail"

    def test_report_is_deterministic(self, capsys):
        outs = [run(capsys, "verify", "thm6-newton", "--trials", "20", "--seed", "5",
                    "--json", "--jobs", str(j))[1] for j in (1, 1, 2)]
        assert outs[0] == outs[1] == outs[2]


class TestFixtures:
    def test_elliptic_sixpoint(self, tmp_path, capsys):
        path = tmp_path / "six.json"
        assert run(capsys, "fixture", "elliptic-sixpoint", "-o", str(path))[0] == EXIT_OK
        s = load_scene(path)
        Q = Quadrangle(*(s.points[k] for k in "ABCD"))
        assert diagonal_points(Q) == tuple(s.points[k] for k in ("P1", "P2", "P3"))

    def test_canonical_square(self):
        s = fixture("canonical-square")
        T = next(iter(s.tetragons.values()))
        assert semi_centroid(s.metric, T) == HPoint((0, 0, 1))

    def test_round_trip(self):
        for name in ("elliptic-sixpoint", "hyperbolic-noncongruent", "canonical-square"):
            s = fixture(name)
            assert dump_scene(scene_from_dict(json.loads(dump_scene(s)))) == dump_scene(s)


class TestScene:
    def test_isotropic_vertex_rejected(self):
        with pytest.raises(InvalidScene):
            scene_from_dict({"metric": {"signature": [1, 1, -1]},
                             "tetragons": {"T": {"vertices": [[1, 0, 1], [0, 0, 1], [1, 2, 3],
                                                              [2, 1, 5]]}}})

    @pytest.mark.parametrize("metric", [{}, {"signature": [1, 1, 0]}, {"matrix": [1, 2, 3]}])
    def test_bad_metric(self, metric):
        with pytest.raises(InvalidScene):
            scene_from_dict({"metric": metric})

    def test_rational_strings(self):
        s = scene_from_dict({"metric": {"matrix": [1, 0, 0, 1, 0, 1]},
                             "points": {"A": ["1/2", "0", 1], "B": [0, 1, 0], "C": [0, 0, 1]}})
        assert s.points["A"] == HPoint((1, 0, 2))


class TestRender:
    def test_sixpoint_structure(self):
        svg = render_svg(fixture("elliptic-sixpoint"))
        assert svg.startswith("<?xml") or svg.startswith("<svg")
        assert 'version="1.1"' in svg and "viewBox" in svg
        dots = re.findall(r'<circle id="point-(\w+)"', svg)
        assert set("ABCD") <= set(dots) and {"P1", "P2", "P3"} <= set(dots)
        assert len(re.findall(r'id="conic-', svg)) == 1

    def test_deterministic(self):
        s = fixture("hyperbolic-noncongruent")
        assert render_svg(s, "klein-disk") == render_svg(s, "klein-disk")

    def test_absolute_drawn_in_hyperbolic_charts(self):
        s = fixture("hyperbolic-noncongruent")
        for chart in ("affine", "klein-disk"):
            assert 'id="absolute"' in render_svg(s, chart)
        assert 'id="absolute"' not in render_svg(fixture("elliptic-sixpoint"))

    def test_point_at_infinity(self, tmp_path, capsys):
        s = scene_from_dict({"metric": {"signature": [1, 1, 1]}, "points": {"X": [1, 2, 0]}})
        with pytest.raises(UnrenderableElement):
            render_svg(s)
        path = tmp_path / "inf.json"
        path.write_text(dump_scene(s))
        assert run(capsys, "render", str(path))[0] == EXIT_USAGE

    def test_klein_needs_hyperbolic(self):
        with pytest.raises(InvalidScene):
            render_svg(fixture("elliptic-sixpoint"), "klein-disk")
