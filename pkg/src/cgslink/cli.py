"""Command-line interface for generating scenes and checking linking identities.

Exit codes: 0 success / all identities hold, 1 identity or oracle failure,
2 bad input (flags, scene file, generation failure).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import __version__
from .cycles import OrientedCycle, count_cycles, count_disjoint_pairs, enumerate_cycles, enumerate_disjoint_pairs
from .generate import DEFAULT_COORD_BOUND, GenerationError, moment_curve_scene, random_scene, threaded_loop_scene
from .geometry import DEFAULT_BOUND
from .linking import Loop, build_crossing_table, gauss_estimate, linking_number
from .rng import SplitMix64
from .scene import SceneFormatError, ValidityError, dumps, load, save, validate
from .theorems import SUITES, applicable_reports, sum_lk_squared, sum_lk_squared_loop

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("cgslink")


class InputError(Exception):
    pass


def _load_valid(path: str, bound: int):
    try:
        scene = load(path, bound=bound)
        validate(scene)
    except OSError as exc:
        raise InputError(f"cannot read scene {path}: {exc}") from exc
    except SceneFormatError as exc:
        raise InputError(f"malformed scene {path}: {exc}") from exc
    except ValidityError as exc:
        raise InputError(f"invalid scene {path}: {exc}") from exc
    return scene


def _parse_cycle(text: str):
    text = text.strip()
    if text.lower().startswith(("loop:", "loop")):
        idx = text.split(":", 1)[1] if ":" in text else text[4:]
        try:
            return Loop(int(idx))
        except ValueError:
            raise InputError(f"malformed loop reference {text!r}") from None
    try:
        verts = tuple(int(v) for v in text.split(","))
        return OrientedCycle(verts)
    except ValueError as exc:
        raise InputError(f"malformed cycle {text!r}: {exc}") from None


def cmd_gen(args) -> int:
    try:
        if args.model == "random":
            scene = random_scene(args.n, args.seed, args.bound, args.waypoints, bound=args.max_bound)
        elif args.model == "moment":
            scene = moment_curve_scene(args.n, args.spacing, bound=args.max_bound)
        else:
            scene = threaded_loop_scene(args.n, args.seed, args.bound, bound=args.max_bound)
    except (ValueError, GenerationError) as exc:
        raise InputError(str(exc)) from exc
    validate(scene)
    n_segments = sum(1 for _ in scene.segments())
    summary = f"valid K_{scene.n} scene: {n_segments} segments, {len(scene.loops)} loop(s)"
    if args.out in (None, "-"):
        sys.stdout.write(dumps(scene))
        print(summary, file=sys.stderr)
    else:
        save(scene, args.out)
        print(f"{summary} -> {args.out}")
    return EXIT_OK


def cmd_validate(args) -> int:
    _load_valid(args.scene, args.max_bound)
    print("ok")
    return EXIT_OK


def cmd_verify(args) -> int:
    scene = _load_valid(args.scene, args.max_bound)
    if args.sample < 0:
        raise InputError("--sample must be >= 0")
    table = build_crossing_table(scene)
    t0 = time.perf_counter()
    try:
        reports = applicable_reports(table, args.suite, sample=args.sample, rng=SplitMix64(args.sample_seed))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not reports:
        raise InputError(f"suite {args.suite!r} has no identity applicable to a K_{scene.n} scene "
                         f"with {len(scene.loops)} loop(s)")
    for r in reports:
        print(r)
    ok = all(r.passed for r in reports)
    print(f"{sum(r.passed for r in reports)}/{len(reports)} passed in {time.perf_counter() - t0:.2f}s")
    if args.report:
        doc = {
            "scene": {"path": args.scene, "n": scene.n, "loops": len(scene.loops), "frame": list(table.frame.d)},
            "suite": args.suite,
            "results": [r.to_json() for r in reports],
        }
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lk(args) -> int:
    scene = _load_valid(args.scene, args.max_bound)
    if len(args.cycle) != 2:
        raise InputError("give exactly two --cycle arguments")
    a, b = (_parse_cycle(c) for c in args.cycle)
    for x in (a, b):
        if isinstance(x, Loop) and not 0 <= x.index < len(scene.loops):
            raise InputError(f"scene has no loop {x.index}")
        if isinstance(x, OrientedCycle) and not all(1 <= v <= scene.n for v in x.vertices):
            raise InputError(f"cycle {x} has a vertex outside 1..{scene.n}")
    try:
        print(linking_number(build_crossing_table(scene), a, b))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK


def cmd_sums(args) -> int:
    scene = _load_valid(args.scene, args.max_bound)
    table = build_crossing_table(scene)
    try:
        if args.loop is not None:
            print(sum_lk_squared_loop(table, args.loop, args.p))
        else:
            if args.q is None:
                raise InputError("--q is required unless --loop is given")
            print(sum_lk_squared(table, args.p, args.q))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK


def cmd_counts(args) -> int:
    try:
        if args.q is None:
            count = sum(1 for _ in enumerate_cycles(args.n, args.p))
            expected = count_cycles(args.n, args.p)
        else:
            count = sum(1 for _ in enumerate_disjoint_pairs(args.n, args.p, args.q))
            expected = count_disjoint_pairs(args.n, args.p, args.q)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(count)
    if count != expected:
        print(f"enumeration disagrees with closed form {expected}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _sample_pairs(scene, count: int, rng: SplitMix64):
    """Random disjoint (cycle/loop, cycle/loop) pairs for the oracle check."""
    n = scene.n
    n_loops = len(scene.loops)
    options = []
    if n >= 6:
        options.append("cycles")
    if n_loops:
        options.append("loop")
    if n_loops >= 2:
        options.append("loops")
    if not options:
        return []
    pairs = []
    for _ in range(count):
        kind = options[rng.randbelow(len(options))]
        if kind == "loops":
            a, b = rng.randbelow(n_loops), rng.randbelow(n_loops - 1)
            pairs.append((Loop(a), Loop(b + (b >= a))))
            continue
        perm = list(range(1, n + 1))
        for i in range(n - 1, 0, -1):
            j = rng.randbelow(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        if kind == "loop":
            p = 3 + rng.randbelow(n - 2)
            pairs.append((Loop(rng.randbelow(n_loops)), OrientedCycle(tuple(perm[:p]))))
        else:
            p = 3 + rng.randbelow(n - 5)
            q = 3 + rng.randbelow(n - p - 2)
            pairs.append((OrientedCycle(tuple(perm[:p])), OrientedCycle(tuple(perm[p:p + q]))))
    return pairs


def cmd_oracle_check(args) -> int:
    scene = _load_valid(args.scene, args.max_bound)
    table = build_crossing_table(scene)
    pairs = _sample_pairs(scene, args.samples, SplitMix64(args.seed))
    if not pairs:
        raise InputError("scene has no disjoint cycle pairs (needs n >= 6 or a loop)")
    worst = 0.0
    for a, b in pairs:
        worst = max(worst, abs(linking_number(table, a, b) - gauss_estimate(scene, a, b)))
    print(f"{len(pairs)} pairs, max |exact - gauss| = {worst:.3e}")
    return EXIT_OK if worst < 0.25 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cgslink", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--max-bound", type=int, default=DEFAULT_BOUND,
                        help="coordinate magnitude bound B (default 2^20)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a scene file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=DEFAULT_COORD_BOUND, help="coordinate cube half-width")
    p.add_argument("--waypoints", type=int, default=0, help="bend points per edge (random model)")
    p.add_argument("--model", choices=("random", "moment", "loop"), default="random")
    p.add_argument("--spacing", type=int, default=1, help="parameter spacing (moment model)")
    p.add_argument("--out", help="output path ('-' or omitted: stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="check that a scene file is an embedding")
    p.add_argument("--scene", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("verify", help="run identity suites and write a JSON report")
    p.add_argument("--scene", required=True)
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--report", help="path of the JSON report")
    p.add_argument("--sample", type=int, default=10, help="(i,j,m) triples for the subdivision identity")
    p.add_argument("--sample-seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lk", help="linking number of two disjoint cycles or loops")
    p.add_argument("--scene", required=True)
    p.add_argument("--cycle", action="append", default=[], help="'1,2,3' or 'loop:0'; give twice")
    p.set_defaults(func=cmd_lk)

    p = sub.add_parser("sums", help="sum of squared linking numbers")
    p.add_argument("--scene", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--loop", type=int, help="sum lk(loop, gamma)^2 over p-cycles instead")
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("counts", help="enumerate p-cycles or disjoint (p,q) pairs of K_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("oracle-check", help="compare exact lk with the Gauss integral")
    p.add_argument("--scene", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
