"""``ckquad`` command line: verify, fixture, render."""

from __future__ import annotations

import argparse
import sys
import time

from .. import numerics as nm
from ..errors import InvalidScene, InvalidTheoremId, UnknownFixture, UnrenderableElement
from .campaigns import BACKENDS, PLANES, TRIALS, Context, report_json, run_campaign, run_trial
from .render import CHARTS, render_svg
from .scene import FIXTURES, fixture_json, load_scene

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ckquad", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a seeded randomized campaign for one theorem")
    v.add_argument("theorem", nargs="?", help="one of: " + ", ".join(TRIALS))
    v.add_argument("--plane", choices=PLANES, default="elliptic")
    v.add_argument("--backend", choices=BACKENDS, default="rational")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=nm.DEFAULT_TOL)
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--json", action="store_true", help="print the machine-readable report")
    v.add_argument("--replay", metavar="BLOB", help="rerun the single trial of a failure entry")

    f = sub.add_parser("fixture", help="write a named example scene")
    f.add_argument("name", help="one of: " + ", ".join(FIXTURES))
    f.add_argument("-o", "--output", help="file to write (default: stdout)")

    r = sub.add_parser("render", help="render a scene file as SVG")
    r.add_argument("scene")
    r.add_argument("--chart", choices=CHARTS, default="affine")
    r.add_argument("-o", "--output", help="file to write (default: stdout)")
    return p


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summary(report: dict, seconds: float) -> str:
    lines = [f"{report['theorem']} [{report['plane']}, {report['backend']}, seed {report['seed']}]: "
             f"{report['passed']} passed, {report['failed']} failed, {report['skipped']} skipped "
             f"of {report['trials']} ({seconds:.2f} s)"]
    for k, v in report["counters"].items():
        lines.append(f"  {k}: {v}")
    for f in report["failures"]:
        lines.append(f"  FAIL trial {f['trial']}: {f['detail']}")
        lines.append(f"    replay: ckquad verify --replay {f['replay']}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    if args.replay:
        try:
            ctx = Context.from_blob(args.replay)
        except (ValueError, KeyError, TypeError) as exc:
            print(f"error: bad replay blob: {exc}", file=sys.stderr)
            return EXIT_USAGE
        out = run_trial(ctx)
        report = {"theorem": ctx.theorem, "plane": ctx.plane, "backend": ctx.backend,
                  "seed": ctx.seed, "tol": ctx.tol, "trial": ctx.trial,
                  "status": out.status, "detail": out.detail}
        sys.stdout.write(report_json(report) if args.json else
                         f"trial {ctx.trial} of {ctx.theorem}: {out.status} {out.detail or ''}\n")
        return EXIT_COUNTEREXAMPLE if out.status == "fail" else EXIT_OK
    if not args.theorem:
        print("error: a theorem id or --replay is required", file=sys.stderr)
        return EXIT_USAGE
    if args.trials < 0 or args.jobs < 1 or not args.tol > 0:
        print("error: trials >= 0, jobs >= 1 and tol > 0 are required", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    report = run_campaign(args.theorem, args.plane, args.trials, args.seed, args.backend,
                          args.tol, args.jobs)
    seconds = time.perf_counter() - t0
    sys.stdout.write(report_json(report) if args.json else _summary(report, seconds))
    return EXIT_COUNTEREXAMPLE if report["failed"] else EXIT_OK


def cmd_fixture(args) -> int:
    _write(fixture_json(args.name), args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    _write(render_svg(load_scene(args.scene), args.chart), args.output)
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    handler = {"verify": cmd_verify, "fixture": cmd_fixture, "render": cmd_render}[args.command]
    try:
        return handler(args)
    except (InvalidTheoremId, UnknownFixture) as exc:
        print(f"error: unknown name {exc.args[0]!r}", file=sys.stderr)
    except (InvalidScene, UnrenderableElement, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
