"""Command-line front end.

Diagram arguments are inline DSL or a path to a file holding DSL; vectors
are comma-separated rationals (an empty string or ``()`` is the empty
vector).  Output is deterministic: rationals print as ``p/q`` and rows in
sorted order.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
from contextlib import redirect_stderr

from . import apps, semantics, stateful
from . import diagram as dg
from .exactla import format_rational, parse_rational
from .polyhedra import FMRowLimitError, exact_redundancy

VERBS = ("eval", "nf", "fgnf", "polar", "op", "include", "equiv", "empty", "axioms",
         "maxflow", "petri-step", "petri-encode", "st-step")


class UsageError(Exception):
    pass


def _read_diagram(arg: str) -> dg.Diagram:
    text = arg
    if os.path.isfile(arg):
        with open(arg) as fh:
            text = fh.read()
    try:
        return dg.parse_dsl(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _vector(arg: str) -> tuple:
    arg = arg.strip()
    if arg in ("", "()"):
        return ()
    try:
        return tuple(parse_rational(x) for x in arg.strip("()").split(","))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _bool(value: bool, fmt: str) -> str:
    return _dumps({"result": value}) if fmt == "json" else ("true" if value else "false")


def _diagram_out(d: dg.Diagram, fmt: str) -> str:
    text = dg.print_dsl(d)
    if fmt == "json":
        n, m, frag = dg.validate(d)
        return _dumps({"diagram": text, "left": n, "right": m, "fragment": frag.name})
    return text


def _net_bool(args, fmt):
    net = apps.PetriNet.from_json(_read_json(args.net))
    y, z = _vector(args.y), _vector(args.z)
    fn = apps.petri_step_via_process if args.process else apps.petri_can_step
    return fn(net, y, z)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyrel", description="exact diagrammatic polyhedra")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--strict", action="store_true",
                   help="boolean verbs report a false answer with exit code 1")
    p.add_argument("--exact-redundancy", action="store_true",
                   help="remove every implied row at operation boundaries")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb in ("eval", "nf", "fgnf", "polar", "op", "empty"):
        sub.add_parser(verb).add_argument("diagram")
    for verb in ("include", "equiv"):
        s = sub.add_parser(verb)
        s.add_argument("lhs")
        s.add_argument("rhs")
    sub.add_parser("axioms")
    sub.add_parser("maxflow").add_argument("net", help="flow network JSON file")
    s = sub.add_parser("petri-step")
    s.add_argument("net", help="Petri net JSON file")
    s.add_argument("y")
    s.add_argument("z")
    s.add_argument("--process", action="store_true", help="decide through the encoded process")
    sub.add_parser("petri-encode").add_argument("net", help="Petri net JSON file")
    s = sub.add_parser("st-step")
    s.add_argument("diagram")
    s.add_argument("u")
    s.add_argument("l")
    return p


_GLOBAL_FLAGS = ("--strict", "--exact-redundancy")


def _hoist_globals(argv):
    """Allow global flags after the verb too."""
    front, rest = [], []
    it = iter(argv)
    for a in it:
        if a in _GLOBAL_FLAGS or a.startswith("--format="):
            front.append(a)
        elif a == "--format":
            front.append(a)
            front.append(next(it, ""))
        else:
            rest.append(a)
    return front + rest


def _dispatch(args) -> tuple:
    fmt = args.format
    verb = args.verb
    if verb == "eval":
        return 0, _dumps(semantics.evaluate(_read_diagram(args.diagram)).to_json())
    if verb == "nf":
        return 0, _diagram_out(semantics.poly_nf(_read_diagram(args.diagram)), fmt)
    if verb == "fgnf":
        return 0, _diagram_out(semantics.fg_nf(_read_diagram(args.diagram)), fmt)
    if verb == "polar":
        return 0, _diagram_out(dg.polar_syntactic(_read_diagram(args.diagram)), fmt)
    if verb == "op":
        return 0, _diagram_out(dg.opposite(_read_diagram(args.diagram)), fmt)
    if verb in ("include", "equiv", "empty"):
        if verb == "empty":
            ans = semantics.is_empty(_read_diagram(args.diagram))
        else:
            fn = semantics.includes if verb == "include" else semantics.equiv
            ans = fn(_read_diagram(args.lhs), _read_diagram(args.rhs))
        return (1 if args.strict and not ans else 0), _bool(ans, fmt)
    if verb == "axioms":
        verdicts = semantics.axiom_suite()
        ok = all(v.passed for v in verdicts)
        if fmt == "json":
            out = _dumps([{"name": v.entry.name, "group": v.entry.group,
                           "instance": v.entry.instance, "relation": v.entry.relation,
                           "pass": v.passed} for v in verdicts])
        else:
            width = max(len(v.entry.name) for v in verdicts)
            lines = [f"{v.entry.name:<{width}}  {v.entry.instance or '-':<14} "
                     f"{'pass' if v.passed else 'FAIL'}" for v in verdicts]
            out = "\n".join(lines)
        return (1 if args.strict and not ok else 0), out
    if verb == "maxflow":
        net = apps.FlowNetwork.from_json(_read_json(args.net))
        value = apps.max_flow(net)
        text = "inf" if value == float("inf") else format_rational(value)
        return 0, _dumps({"max_flow": text}) if fmt == "json" else text
    if verb == "petri-step":
        ans = _net_bool(args, fmt)
        return (1 if args.strict and not ans else 0), _bool(ans, fmt)
    if verb == "petri-encode":
        net = apps.PetriNet.from_json(_read_json(args.net))
        d = apps.encode_petri(net)
        if fmt == "json":
            return 0, _dumps({"diagram": dg.print_dsl(d),
                              "process": apps.petri_process(net).to_json()})
        return 0, dg.print_dsl(d)
    if verb == "st-step":
        proc = stateful.st_eval(_read_diagram(args.diagram))
        return 0, _dumps(stateful.st_step_set(proc, _vector(args.u), _vector(args.l)).to_json())
    raise UsageError(f"unknown verb {verb!r}")


def run(argv) -> tuple:
    """Run one command; returns ``(exit_code, stdout)``.  Diagnostics go to
    stderr."""
    argv = _hoist_globals(list(argv))
    err = io.StringIO()
    try:
        with redirect_stderr(err):
            args = _parser().parse_args(argv)
    except SystemExit as exc:
        sys.stderr.write(err.getvalue())
        return (0 if exc.code in (0, None) else 2), ""
    token = exact_redundancy.set(args.exact_redundancy)
    if args.exact_redundancy:
        semantics._eval.cache_clear()
        stateful._st_eval.cache_clear()
    try:
        code, out = _dispatch(args)
        return code, out + "\n"
    except FMRowLimitError as exc:
        sys.stderr.write(f"polyrel: {exc}\n")
        return 3, ""
    except KeyError as exc:
        sys.stderr.write(f"polyrel: missing field {exc} in input\n")
        return 2, ""
    except (UsageError, ValueError, TypeError) as exc:
        sys.stderr.write(f"polyrel: {exc}\n")
        return 2, ""
    finally:
        exact_redundancy.reset(token)
        if args.exact_redundancy:
            semantics._eval.cache_clear()
            stateful._st_eval.cache_clear()


def main(argv=None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
