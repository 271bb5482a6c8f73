"""Command line entry point: ``rigidfan {build,analyze,verify,render,session}``.

Exit codes: 0 success / certified, 1 error, 2 inconclusive certificate,
3 fan enumeration refused (too many folds).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io as fio
from .construction import build
from .errors import RigidFanError, StressSearchUnsupported, TooManyFolds
from .geometry import Configuration
from .oracle import F_MAX, enumerate_fan, flex_search_summary, perturbation_flex_search
from .render import render_svg
from .rigidity import superstability_test
from .session import Session, read_log

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_TOO_MANY_FOLDS = 0, 1, 2, 3


def _err(msg):
    print(f"rigidfan: {msg}", file=sys.stderr)


def _certify(fw):
    try:
        report = superstability_test(fw)
    except StressSearchUnsupported as exc:
        return exc.report
    return report


def cmd_build(args) -> int:
    if args.points_random:
        if args.dim not in (2, 3):
            _err("--points-random needs --dim 2 or 3")
            return EXIT_ERROR
        rng = np.random.default_rng(args.seed)
        config = Configuration(rng.random((args.points_random, args.dim)))
    elif args.input:
        config = fio.read_points(args.input)
        if args.dim and config.dim != args.dim:
            _err(f"input has dimension {config.dim}, --dim says {args.dim}")
            return EXIT_ERROR
    else:
        _err("need --input or --points-random")
        return EXIT_ERROR
    fw, fan = build(config, args.multifan)
    report = _certify(fw)
    text = fio.dumps_framework(fw, fan, report)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"edges={len(fw.edges)} {report.summary()}", file=sys.stderr if not args.output else sys.stdout)
    return EXIT_OK if report.superstable else EXIT_INCONCLUSIVE


def cmd_analyze(args) -> int:
    fw, _, _ = fio.read_framework(args.input)
    status = EXIT_OK
    try:
        report = superstability_test(fw)
    except StressSearchUnsupported as exc:
        report, status = exc.report, EXIT_INCONCLUSIVE
    out = report.to_dict()
    out["omega_spectrum_head"] = out.pop("omega_spectrum")[: args.head]
    out.pop("stress", None)
    print(json.dumps(out, indent=1))
    return status


def cmd_verify(args) -> int:
    fw, fan, _ = fio.read_framework(args.input)
    ok = True
    if args.oracle in ("fan", "both"):
        if fan is None or fan.kind not in ("fan2d", "fan3d"):
            _err("fan oracle needs a single-fan decomposition (fan2d/fan3d); try --oracle perturb")
            return EXIT_ERROR
        try:
            fcs = enumerate_fan(fan, fw.config, args.f_max)
        except TooManyFolds as exc:
            _err(f"{exc}; use --oracle perturb")
            return EXIT_TOO_MANY_FOLDS
        count_ok = len(fcs.sign_vectors) == 2**fcs.f
        max_ok = fcs.unfolded_is_unique_max()
        ok &= count_ok and max_ok
        print(f"fan: f={fcs.f} configurations={len(fcs.sign_vectors)} "
              f"unfolded-unique-max={'yes' if max_ok else 'NO'}")
    if args.oracle in ("perturb", "both"):
        ambient = args.ambient or fw.dim
        magnitude = args.magnitude if args.magnitude is not None else 0.01 * fw.config.scale()
        results = perturbation_flex_search(fw, ambient, args.trials, magnitude, rng=args.seed)
        summary = flex_search_summary(fw, results)
        ok &= summary["noncongruent"] == 0
        print(f"perturb: ambient={ambient} trials={summary['trials']} converged={summary['converged']} "
              f"noncongruent={summary['noncongruent']}")
        if summary["witnesses"]:
            print("witness:", json.dumps(summary["witnesses"][0].coords.tolist()))
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_ERROR


def cmd_render(args) -> int:
    fw, fan, report = fio.read_framework(args.input)
    stress = (report or {}).get("stress")
    if stress is not None and len(stress) != len(fw.edges):
        _err("stress length does not match the edge list")
        return EXIT_ERROR
    Path(args.output).write_text(render_svg(fw, fan, stress))
    if stress is None:
        _err("warning: no stress data in input; drew plain edges")
        return EXIT_ERROR
    return EXIT_OK


def cmd_session(args) -> int:
    events = read_log(Path(args.events).read_text().splitlines())
    dim = args.dim
    if dim is None:
        first = next((e for e in events if e.get("op") in ("add", "move")), None)
        if first is None:
            _err("cannot infer dimension; pass --dim")
            return EXIT_ERROR
        dim = len(first["point"])
    sess = Session(dim)
    all_ok = True
    for ev in events:
        sess.apply(ev)
        all_ok &= sess.certified
    text = "\n".join(sess.log_lines()) + ("\n" if sess.history else "")
    if args.log:
        Path(args.log).write_text(text)
    n = len(sess.nodes)
    print(f"epoch={sess.epoch} nodes={n} edges={len(sess.edges())} "
          f"certified={'all' if all_ok else 'NOT all'}")
    return EXIT_OK if all_ok else EXIT_INCONCLUSIVE


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rigidfan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a minimal universally rigid framework")
    p.add_argument("--input", help="CSV or JSON point file")
    p.add_argument("--dim", type=int, choices=(2, 3))
    p.add_argument("--multifan", type=int, metavar="N", help="number of fan centers (2D, N=2)")
    p.add_argument("--output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points-random", type=int, metavar="N")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze", help="rigidity report for any framework file")
    p.add_argument("--input", required=True)
    p.add_argument("--head", type=int, default=6, help="spectrum entries to print")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run the brute-force oracles")
    p.add_argument("--input", required=True)
    p.add_argument("--oracle", choices=("fan", "perturb", "both"), default="fan")
    p.add_argument("--ambient", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--magnitude", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--f-max", type=int, default=F_MAX)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a framework file as SVG")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("session", help="replay add/remove/move events")
    p.add_argument("--events", required=True)
    p.add_argument("--log")
    p.add_argument("--dim", type=int, choices=(2, 3))
    p.set_defaults(func=cmd_session)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RigidFanError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
