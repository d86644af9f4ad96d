"""``verify`` command line front end."""
from __future__ import annotations

import argparse
import json
import sys

from .polyring import CubicSurface
from .suites import SUITES, Options, run_suites

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def load_surface(path: str) -> CubicSurface:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None
    try:
        return CubicSurface.from_dict(data)
    except ValueError as exc:
        line = _line_of_key(text, str(exc))
        where = f"{path}:{line}" if line else path
        raise InputError(f"{where}: {exc}") from None


def _line_of_key(text: str, message: str) -> int | None:
    """Line of the first quoted key mentioned in an error message."""
    start = message.find("'")
    end = message.find("'", start + 1)
    if start < 0 or end < 0:
        return None
    key = message[start + 1 : end]
    for n, line in enumerate(text.splitlines(), 1):
        if f'"{key}"' in line:
            return n
    return None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify", description="Run exact verification suites.")
    p.add_argument("suite", choices=[*SUITES, "all"])
    p.add_argument("--surface", metavar="FILE", help="cubic surface JSON for the ivhs suite")
    p.add_argument("--random", action="store_true", help="add seeded random smooth cubics to ivhs")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--json", metavar="OUT", help="write JSON-lines report to OUT instead of stdout")
    p.add_argument("--summary", action="store_true", help="print a human-readable table")
    return p


def _table(results) -> str:
    width = max((len(r.suite) + len(r.check) + 3 for r in results), default=10)
    lines = []
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        label = f"{r.suite}: {r.check}"
        lines.append(f"{mark}  {label:<{width}}  expected {r.expected}  computed {r.computed}")
    npass = sum(r.passed for r in results)
    lines.append(f"{npass}/{len(results)} checks passed")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.count < 0:
        print("verify: --count must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    opts = Options(random=args.random, seed=args.seed, count=args.count)
    if args.surface:
        try:
            opts.surface = load_surface(args.surface)
        except InputError as exc:
            print(f"verify: {exc}", file=sys.stderr)
            return EXIT_INPUT
    results = run_suites(args.suite, opts)
    report = "".join(r.to_json() + "\n" for r in results)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report)
    elif not args.summary:
        sys.stdout.write(report)
    if args.summary:
        print(_table(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
