"""Command line entry point: ``goodrawings <command> ...``.

Exit status is 0 on success, 1 when the input is well formed but the
operation fails (invalid drawing, bad move, mismatch), and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .archdeacon import convex_scheme, count_nonplanar_k4, dump_scheme, harary_hill, hill_climb, load_scheme
from .gen import convex_drawing, cylindrical_drawing, perturb
from .map_core import CrossingData, DrawingError, from_crossing_data, parse_rotation, rotation_scheme_of, validate
from .moves import MoveSequence, MoveSequenceError, apply_sequence
from .render import render_svg
from .rotation_facts import crossing_set_of
from .transform import TransformError, drawings_equivalent, gioan_transform


class Failure(Exception):
    """Domain failure; reported on stderr with exit status 1."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise Failure(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise Failure(f"cannot write {path}: {exc.strerror}") from None


def _load_drawing(path: str):
    try:
        return from_crossing_data(CrossingData.loads(_read(path)))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise Failure(f"{path}: malformed drawing file ({exc})") from None


def _load_rotation(path: str):
    """Rotation block of a scheme file or a drawing file."""
    try:
        obj = json.loads(_read(path))
        return parse_rotation(int(obj["n"]), obj["rotation"])
    except (KeyError, TypeError, ValueError) as exc:
        raise Failure(f"{path}: malformed scheme ({exc})") from None


def _load_moves(path: str) -> MoveSequence:
    try:
        return MoveSequence.loads(_read(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise Failure(f"{path}: malformed move file ({exc})") from None


def cmd_generate(args) -> int:
    make = convex_drawing if args.kind == "convex" else cylindrical_drawing
    d = make(args.n)
    if args.perturb:
        d, seq = perturb(d, args.perturb, args.seed)
        if seq.short:
            print(f"note: only {len(seq)} of {args.perturb} moves were available", file=sys.stderr)
        if args.moves_out:
            _write(args.moves_out, seq.dumps())
    _write(args.out, d.crossing_data().dumps())
    return 0


def cmd_infer(args) -> int:
    rot = _load_rotation(args.file)
    for pair in sorted(tuple(sorted(p)) for p in crossing_set_of(rot)):
        (a, b), (c, d) = pair
        print(f"{a}-{b} x {c}-{d}")
    return 0


def cmd_count(args) -> int:
    s = load_scheme(_read(args.scheme))
    print(count_nonplanar_k4(s))
    return 0


def cmd_hillclimb(args) -> int:
    start = load_scheme(_read(args.start)) if args.start else convex_scheme(args.n)
    if len(start) != args.n:
        raise Failure(f"start scheme has {len(start)} vertices, expected {args.n}")
    results = [hill_climb(start, args.seed + r, args.budget, args.stop_at) for r in range(args.restarts)]
    best = min(results, key=lambda r: r.count)
    h = harary_hill(args.n)
    for r, res in enumerate(results):
        print(f"restart {r} seed {args.seed + r}: {res.count} (H = {h})")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["restart", "seed", "count", "proposals", "accepted", "harary_hill"])
            for r, res in enumerate(results):
                w.writerow([r, args.seed + r, res.count, res.proposals, res.accepted, h])
    if args.out:
        _write(args.out, dump_scheme(best.scheme))
    print(f"best: {best.count}")
    return 0


def cmd_transform(args) -> int:
    d1 = _load_drawing(args.source)
    d2 = _load_drawing(args.target)
    seq = gioan_transform(d1, d2, debug=not args.no_checks)
    _write(args.out, seq.dumps())
    print(f"{len(seq)} moves")
    return 0


def cmd_verify(args) -> int:
    d = _load_drawing(args.drawing)
    seq = _load_moves(args.moves)
    try:
        out = apply_sequence(d, seq, strict=args.strict)
    except MoveSequenceError as exc:
        raise Failure(f"invalid move at index {exc.index}: {exc.reason}") from None
    if args.target:
        t = _load_drawing(args.target)
        if not drawings_equivalent(out, t):
            raise Failure("replayed drawing is not equivalent to the target")
    print(f"ok: {len(seq)} moves replayed")
    return 0


def cmd_render(args) -> int:
    d = _load_drawing(args.drawing)
    panels = [d]
    titles = None
    if args.moves:
        try:
            panels.append(apply_sequence(d, _load_moves(args.moves)))
        except MoveSequenceError as exc:
            raise Failure(f"invalid move at index {exc.index}: {exc.reason}") from None
        titles = ["before", "after"]
    _write(args.out, render_svg(panels, outer=args.outer, titles=titles))
    return 0


def cmd_validate(args) -> int:
    try:
        data = CrossingData.loads(_read(args.drawing))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise Failure(f"{args.drawing}: malformed drawing file ({exc})") from None
    d = from_crossing_data(data)
    rep = validate(d)
    if rep:
        for msg in rep.violations:
            print(msg)
        return 1
    if rotation_scheme_of(d) != data.rotation:
        print("rotation scheme read back from the map differs from the file")
        return 1
    print(f"ok: n={d.n}, {d.num_crossings()} crossings, {len(d.faces)} faces")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="goodrawings", description="Good drawings of complete graphs and Reidemeister moves.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a convex or cylindrical drawing")
    g.add_argument("--kind", choices=("convex", "cylindrical"), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--perturb", type=int, default=0, metavar="K")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.add_argument("--moves-out")
    g.set_defaults(func=cmd_generate)

    i = sub.add_parser("infer-crossings", help="crossing pairs forced by a rotation scheme")
    i.add_argument("file", help="scheme or drawing file")
    i.set_defaults(func=cmd_infer)

    c = sub.add_parser("count-k4", help="number of induced nonplanar K4s")
    c.add_argument("--scheme", required=True)
    c.set_defaults(func=cmd_count)

    h = sub.add_parser("hillclimb", help="local search on rotation schemes")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--budget", type=int, default=100000)
    h.add_argument("--restarts", type=int, default=1)
    h.add_argument("--stop-at", type=int)
    h.add_argument("--start", help="start scheme (default: convex)")
    h.add_argument("--csv")
    h.add_argument("--out", help="write the best scheme here")
    h.set_defaults(func=cmd_hillclimb)

    t = sub.add_parser("transform", help="moves from one drawing to another with the same scheme")
    t.add_argument("--from", dest="source", required=True)
    t.add_argument("--to", dest="target", required=True)
    t.add_argument("--out", required=True)
    t.add_argument("--no-checks", action="store_true", help="skip the internal consistency checks")
    t.set_defaults(func=cmd_transform)

    v = sub.add_parser("verify", help="replay a move file")
    v.add_argument("--drawing", required=True)
    v.add_argument("--moves", required=True)
    v.add_argument("--target")
    v.add_argument("--strict", action="store_true", help="also check each move's flip tag")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="SVG picture of a drawing")
    r.add_argument("--drawing", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--outer", type=int, help="face index to draw as the outer face")
    r.add_argument("--moves", help="add a second panel after these moves")
    r.set_defaults(func=cmd_render)

    a = sub.add_parser("validate", help="check a drawing file")
    a.add_argument("drawing")
    a.set_defaults(func=cmd_validate)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command in ("generate", "hillclimb") and args.n < 3:
        parser.print_usage(sys.stderr)
        print("goodrawings: error: --n must be at least 3", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (Failure, DrawingError, TransformError, ValueError) as exc:
        print(f"goodrawings: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
