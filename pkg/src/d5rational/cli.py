"""Command-line front end.

Exit status: 0 on success, 1 on a mathematical negative (not a solution,
no rational solution, failed relations), 2 on a usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import parse_expr, parse_scalar
from .backlund import apply_word, expand_word, param_action, relations_summary, verify_relations
from .classify import classify
from .errors import ChartError, D5Error, NotASolution, ParseError, ParamsError, WordError
from .laurent import INF, expand
from .solutions import construct
from .system import Params, Solution, residual, solutions_from_json

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _split_tuple(text):
    inner = text.strip()[1:-1]
    parts, depth, cur = [], 0, []
    for ch in inner:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    parts.append("".join(cur))
    return parts


def read_solutions(source: str) -> list:
    """Tuple shorthand ``(x,y,z,w)``, inline JSON, ``-`` for stdin, or a file path."""
    text = source.strip()
    if text.startswith("("):
        parts = _split_tuple(text)
        if len(parts) != 4:
            raise ParseError(f"solution tuple needs 4 components, got {len(parts)}", token=text)
        return [Solution.finite(*(parse_expr(p) for p in parts))]
    if text == "-":
        text = sys.stdin.read()
    elif not text.startswith(("{", "[")):
        if not os.path.exists(text):
            raise ParseError(f"no such solution file or literal: {text!r}", token=text)
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", token=text[exc.pos:exc.pos + 10]) from None
    return solutions_from_json(data)


def read_params(source: str) -> Params:
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            source = fh.read()
    return Params.parse(source)


def read_point(source: str):
    s = source.strip()
    if s in ("inf", "oo", "infinity"):
        return INF
    if s.startswith("c="):
        s = s[2:]
    return parse_scalar(s)


def _emit(obj):
    # one line per top-level entry keeps long series readable
    dump = lambda o: json.dumps(o, ensure_ascii=False)
    if isinstance(obj, dict):
        body = ",\n".join(f"  {dump(k)}: {dump(v)}" for k, v in obj.items())
        print("{\n" + body + "\n}")
    elif isinstance(obj, list):
        print("[\n" + ",\n".join("  " + dump(v) for v in obj) + "\n]")
    else:
        print(dump(obj))


def cmd_check(args):
    params = read_params(args.params)
    ok_all = True
    for sol in read_solutions(args.solution):
        res = residual(sol, params)
        ok = all(r.is_zero() for r in res)
        ok_all &= ok
        print(f"exact solution: {'true' if ok else 'false'}")
        if not ok:
            for name, r in zip("xyzw", res):
                if not r.is_zero():
                    print(f"  residual {name}: {r}")
    return EXIT_OK if ok_all else EXIT_NEGATIVE


def cmd_transform(args):
    params = read_params(args.params)
    word = expand_word(args.word)
    if args.solution is None:
        for g in word:
            params = param_action(g, params)
        _emit({"params": params.to_json()})
        return EXIT_OK
    out = []
    for sol in read_solutions(args.solution):
        img, p = apply_word(word, sol, params)
        out.append({"params": p.to_json(), "solution": img.to_json()})
    _emit(out)
    return EXIT_OK


def cmd_classify(args):
    rep = classify(read_params(args.params), args.budget, args.condition8)
    _emit(rep.to_json())
    return EXIT_OK if rep.exists else EXIT_NEGATIVE


def cmd_construct(args):
    params = read_params(args.params)
    built = construct(params, args.budget)
    _emit({"params": params.to_json(), "solutions": [c.to_json() for c in built]})
    return EXIT_OK if built else EXIT_NEGATIVE


def cmd_expand(args):
    point = read_point(args.at)
    if args.order < 1:
        raise UsageError("--order must be positive")
    out = []
    for sol in read_solutions(args.solution):
        series = expand(sol, point, args.order)
        out.append({"point": "inf" if point == INF else str(point),
                    **{n: s.to_json() for n, s in zip("xyzw", series)}})
    _emit(out if len(out) != 1 else out[0])
    return EXIT_OK


def cmd_group_check(args):
    report = verify_relations(seed=args.seed)
    print(relations_summary(report))
    for f in report["failures"]:
        print(f"  failed: {f}")
    return EXIT_OK if report["ok"] else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="d5rational", description="Rational solutions of the D5(1) Hamiltonian system.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="residual check of a candidate solution")
    c.add_argument("--params", required=True)
    c.add_argument("--solution", required=True)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("transform", help="apply a Backlund word")
    c.add_argument("--word", required=True)
    c.add_argument("--params", required=True)
    c.add_argument("--solution")
    c.set_defaults(func=cmd_transform)

    c = sub.add_parser("classify", help="decide existence of rational solutions")
    c.add_argument("--params", required=True)
    c.add_argument("--budget", type=int, default=8)
    c.add_argument("--condition8", choices=("printed", "symmetric"), default="printed")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("construct", help="build rational solutions from seeds")
    c.add_argument("--params", required=True)
    c.add_argument("--budget", type=int, default=8)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("expand", help="Laurent expansion of a solution")
    c.add_argument("--solution", required=True)
    c.add_argument("--at", default="inf")
    c.add_argument("--order", type=int, default=4)
    c.set_defaults(func=cmd_expand)

    c = sub.add_parser("group-check", help="verify the group relations")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_group_check)
    return p


_VALUE_FLAGS = ("--params", "--solution", "--word", "--at")


def _glue_values(argv):
    """Attach values such as "-1,1,0,0,1,0" to their flag so they are not read as options."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and argv[i + 1] not in _VALUE_FLAGS and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv=None) -> int:
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        tok = f" (at {exc.token!r})" if exc.token is not None else ""
        print(f"parse error: {exc}{tok}", file=sys.stderr)
        return EXIT_USAGE
    except (ParamsError, WordError, ChartError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotASolution as exc:
        print(f"{exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except D5Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
