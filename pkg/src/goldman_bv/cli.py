"""Command-line front end.

Exit status: 0 success, 1 a verification failed, 2 bad input,
3 the geometry did not stabilise or was degenerate.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import bv, serialize
from .fuchsian import DegenerateGeometryError, NotHyperbolicError, build_representation
from .goldman import BracketConfig, GoldmanBracket, NonStabilizedError, verify_goldman
from .surface import LoopClass, _PAIR, conjugacy_canonical, enumerate_classes
from .words import Word

__all__ = ["parse_word", "build_parser", "run", "main"]

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_GEOMETRY = 0, 1, 2, 3


class CommandError(ValueError):
    """Bad command-line input."""


def parse_word(text: str, genus: int) -> Word:
    """Parse ``"a1 B2"``; genus 1 also takes an exponent pair ``"(p,q)"``."""
    m = _PAIR.match(text.strip())
    if m:
        if genus != 1:
            raise CommandError(f"exponent pair {text!r} is only valid for genus 1")
        p, q = int(m.group(1)), int(m.group(2))
        return Word(1, (0 if p > 0 else 1,) * abs(p) + (2 if q > 0 else 3,) * abs(q))
    if "(" in text or ")" in text:
        raise CommandError(f"malformed exponent pair {text!r}")
    return Word.parse(text, genus)


def _parse_class(text: str, genus: int) -> LoopClass:
    return conjugacy_canonical(parse_word(text, genus))


def _config(args) -> BracketConfig:
    return BracketConfig(max_conjugator_length=args.depth, tolerance=args.tolerance)


def _bracket(args, genus: int) -> GoldmanBracket:
    return GoldmanBracket(genus, _config(args))


def _genus(g: int) -> int:
    if g < 1:
        raise CommandError(f"genus must be >= 1, got {g}")
    return g


class Result:
    def __init__(self, text: str, payload, status: int = EXIT_OK):
        self.text, self.payload, self.status = text, payload, status


# ---------------------------------------------------------------- subcommands


def cmd_bracket(args) -> Result:
    g = _genus(args.genus)
    x, y = _parse_class(args.w1, g), _parse_class(args.w2, g)
    res = _bracket(args, g)(x, y)
    if args.svg:
        from .plot import bracket_svg

        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(bracket_svg(x, y, _config(args)))
    return Result(f"[{x}, {y}] = {res}", serialize.sum_to_json(res))


def _dims(genus: int, n_classes: int) -> dict:
    return {"HH0": 1, "HH1": 2 * genus + n_classes - 1, "HH2": n_classes}


def cmd_classes(args) -> Result:
    g = _genus(args.genus)
    classes = enumerate_classes(g, args.max_len)
    dims = _dims(g, len(classes))
    lines = [f"genus {g}, canonical length <= {args.max_len}: {len(classes)} classes"]
    lines += [f"{i:5d}  {str(c) or '1'}" for i, c in enumerate(classes)]
    lines.append(f"dim HH^0 = {dims['HH0']}, dim HH^1 = {dims['HH1']}, dim HH^2 = {dims['HH2']}")
    payload = {"genus": g, "max_len": args.max_len, "classes": [str(c) for c in classes], "dims": dims}
    return Result("\n".join(lines), payload)


def _element(path: str, genus: int) -> bv.BVElement:
    return serialize.load_element(path, genus)


def _signs(args) -> bv.SignConfig:
    return bv.SignConfig.parse(args.signs)


def _elem_result(x: bv.BVElement) -> Result:
    return Result(str(x), serialize.element_to_json(x))


def cmd_cup(args) -> Result:
    g = _genus(args.genus)
    x, y = _element(args.e1, g), _element(args.e2, g)
    return _elem_result(bv.cup(x, y, _signs(args), _bracket(args, g)))


def cmd_delta(args) -> Result:
    g = _genus(args.genus)
    return _elem_result(bv.bv_delta(_element(args.e, g)))


def cmd_gerstenhaber(args) -> Result:
    g = _genus(args.genus)
    x, y = _element(args.e1, g), _element(args.e2, g)
    return _elem_result(bv.gerstenhaber(x, y, _signs(args), _bracket(args, g)))


def _report_text(title: str, checks: dict) -> str:
    lines = [title]
    for name, r in checks.items():
        mark = "PASS" if r["passed"] else "FAIL"
        lines.append(f"  {mark} {name} ({r['checked']} checks)")
        if r["counterexample"] is not None:
            lines.append("    counterexample: " + json.dumps(r["counterexample"], sort_keys=True))
    return "\n".join(lines)


def cmd_verify(args) -> Result:
    g = _genus(args.genus)
    if args.suite == "goldman":
        rep = verify_goldman(g, args.samples, args.seed, args.max_class_len, _bracket(args, g))
        d = rep.to_dict()
        title = f"goldman suite, genus {g}, {args.samples} samples, seed {args.seed}"
        text = _report_text(title, d["checks"])
    else:
        rep = bv.verify_axioms(g, args.max_class_len, args.samples, args.seed, _signs(args), _bracket(args, g))
        d = rep.to_dict()
        title = f"bv suite, genus {g}, signs {rep.signs}, {args.samples} samples, seed {args.seed}"
        text = _report_text(title, d["axioms"])
    return Result(text, d, EXIT_OK if rep.passed else EXIT_FAILED)


def cmd_resolve_signs(args) -> Result:
    g = _genus(args.genus)
    try:
        res = bv.resolve_signs(g, args.max_class_len, args.samples, args.seed, _bracket(args, g))
    except bv.SignResolutionError as exc:
        return Result(f"error: {exc}", {"error": {"type": "SignResolutionError", "message": str(exc)}}, EXIT_FAILED)
    lines = [f"sign configurations (s1,s2,s3,s4), genus {g}, {args.samples} samples, seed {args.seed}"]
    for s, rep in res.reports.items():
        failed = rep.failed_axioms()
        lines.append(f"  {s}  " + ("pass" if not failed else "fail: " + ", ".join(failed)))
    lines.append(f"passing: {' '.join(str(s) for s in res.passing)}")
    lines.append(f"default: {res.default}")
    return Result("\n".join(lines), res.to_dict())


def cmd_rep_check(args) -> Result:
    g = _genus(args.genus)
    if g < 2:
        raise CommandError("rep-check needs genus >= 2 (the torus has no Fuchsian representation)")
    info = build_representation(g, args.tolerance).check(args.max_len)
    ok = bool(info["relator_ok"] and info["hyperbolic_ok"])
    text = "\n".join(f"{k}: {v}" for k, v in info.items())
    return Result(text, dict(info, passed=ok), EXIT_OK if ok else EXIT_FAILED)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit schema JSON instead of text")
    common.add_argument("--depth", type=int, default=8, help="conjugator depth for the geometric bracket")
    common.add_argument("--tolerance", type=float, default=1e-9, help="geometric tolerance")
    common.add_argument("--signs", default=str(bv.DEFAULT_SIGNS), help="cup product signs, e.g. '+,+,-,+'")

    p = argparse.ArgumentParser(prog="goldman-bv", description="Goldman bracket and the BV algebra of a surface group.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bracket", parents=[common], help="Goldman bracket of two loop classes")
    s.add_argument("genus", type=int)
    s.add_argument("w1")
    s.add_argument("w2")
    s.add_argument("--svg", metavar="PATH", help="write a picture of the crossings")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("classes", parents=[common], help="loop classes up to a canonical length")
    s.add_argument("genus", type=int)
    s.add_argument("max_len", type=int)
    s.set_defaults(func=cmd_classes)

    for name, func, nargs in (("cup", cmd_cup, 2), ("delta", cmd_delta, 1), ("gerstenhaber", cmd_gerstenhaber, 2)):
        s = sub.add_parser(name, parents=[common], help=f"{name} of BV elements given as JSON files")
        s.add_argument("genus", type=int)
        if nargs == 1:
            s.add_argument("e")
        else:
            s.add_argument("e1")
            s.add_argument("e2")
        s.set_defaults(func=func)

    s = sub.add_parser("verify", parents=[common], help="run a randomized identity suite")
    s.add_argument("--suite", choices=("goldman", "bv"), required=True)
    s.add_argument("--genus", type=int, default=1)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-class-len", type=int, default=2)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("resolve-signs", parents=[common], help="test all 16 sign configurations")
    s.add_argument("--genus", type=int, default=1)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-class-len", type=int, default=2)
    s.set_defaults(func=cmd_resolve_signs)

    s = sub.add_parser("rep-check", parents=[common], help="check the Fuchsian representation")
    s.add_argument("genus", type=int)
    s.add_argument("--max-len", type=int, default=6)
    s.set_defaults(func=cmd_rep_check)
    return p


def _error(exc: Exception, status: int) -> Result:
    return Result(f"error: {exc}", {"error": {"type": type(exc).__name__, "message": str(exc), "exit_code": status}}, status)


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Execute a command line; returns ``(status, output)`` without printing."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        res = args.func(args)
    except (NonStabilizedError, DegenerateGeometryError, NotHyperbolicError) as exc:
        res = _error(exc, EXIT_GEOMETRY)
    except (ValueError, OSError) as exc:
        res = _error(exc, EXIT_INPUT)
    if args.json:
        return res.status, serialize.dumps(res.payload)
    return res.status, res.text


def main(argv: Sequence[str] | None = None) -> int:
    try:
        status, out = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_INPUT if exc.code else EXIT_OK
    stream = sys.stderr if status in (EXIT_INPUT, EXIT_GEOMETRY) and out.startswith("error:") else sys.stdout
    print(out, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
