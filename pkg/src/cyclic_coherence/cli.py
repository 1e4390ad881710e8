"""Command-line front end.

Every TERM argument is a path to a file holding the term; when no such file
exists the argument itself is read as the term.  Exit codes: 0 success or
EQUAL, 1 NOT-PARALLEL or sign violation, 2 input error, 3 resource bound.
"""

from __future__ import annotations

import argparse
import os
import sys

from .bijections import BijectionError, fmt_set
from .engine import (
    MODES,
    EngineError,
    ResourceError,
    check_mode,
    decide_equal,
    explicit_skeleton,
    format_trace,
    pipeline,
    sign_sweep,
    sign_table,
    skeleton_choice,
)
from .parse import ParseError, parse_arrow, parse_object
from .reduction0 import red0_object
from .reduction1 import ReductionError, nf_object
from .reduction2 import root_term
from .reduction3 import SkeletalError, red3_object
from .terms import TermTypeError, infer_signature, typecheck_object
from .trees import TreeError, admissible_words, delta_inv, parse_tree, rooted_words

INPUT_ERRORS = (ParseError, TermTypeError, BijectionError, TreeError, SkeletalError, ReductionError, EngineError)


def read_input(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] if line.lstrip().startswith("#") else line for line in text.splitlines())


def parse_any(text: str):
    """('tree' | 'object' | 'arrow', parsed value)."""
    text = _strip_comments(text).strip()
    if text.startswith("tree"):
        return "tree", parse_tree(text)
    try:
        return "object", parse_object(text)
    except ParseError as e1:
        try:
            return "arrow", parse_arrow(text)
        except ParseError as e2:
            far = max((e1, e2), key=lambda e: (e.line or 0, e.col or 0))
            raise far from None


def load_skeleton(choice, seed):
    if choice in ("lex", "rev", "rot", "random"):
        return skeleton_choice(choice, seed)
    orders = {}
    for line in read_input(choice).splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, _, rest = line.partition(":")
        orders[name.strip()] = tuple(rest.replace(",", " ").split())
    return explicit_skeleton(orders)


# ---------------------------------------------------------------- commands


def cmd_typecheck(args, out):
    kind, value = parse_any(read_input(args.term))
    if kind == "tree":
        value.check()
        print(fmt_set(value.fv), file=out)
        return 0
    if kind == "object":
        sig = infer_signature(value, units=args.mode == "with-units")
        print(fmt_set(typecheck_object(value, sig)), file=out)
        return 0
    s, t = check_mode(value, args.mode)
    print(fmt_set(s.type), file=out)
    print(f"{s} => {t}", file=out)
    return 0


def _object_stage(W, stage, root, choose):
    W0 = red0_object(W)
    if stage == 0:
        return W0
    W1 = nf_object(W0)
    if stage == 1:
        return W1
    t = delta_inv(W1)
    x = min(t.tree.fv) if root is None else root
    if x not in t.tree.fv:
        raise EngineError(f"root {x} is not a free entry of {fmt_set(t.tree.fv)}")
    r = root_term(t, x)
    if stage == 2:
        return r
    return red3_object(r, choose(t.tree, x))


def cmd_reduce(args, out):
    kind, value = parse_any(read_input(args.term))
    choose = load_skeleton(args.skeleton, args.seed)
    if kind == "tree":
        raise ParseError("reduce takes an object or arrow term, not a bare tree")
    if kind == "object":
        sig = infer_signature(value, units=args.mode == "with-units")
        typecheck_object(value, sig)
        print(_object_stage(value, args.stage, args.root, choose), file=out)
        return 0
    p = pipeline(value, args.root, choose, args.mode)
    name = ("red0", "red1", "red2", "red3")[args.stage]
    a = p.stages.get(name, p.stages["red0"])
    print(a, file=out)
    if args.trace:
        s, t = a.ends
        print(f"source: {s}", file=out)
        print(f"target: {t}", file=out)
        if p.root is not None:
            print(f"root: {p.root}", file=out)
    return 0


def cmd_decide(args, out):
    kinds = [parse_any(read_input(t)) for t in (args.left, args.right)]
    for kind, _ in kinds:
        if kind != "arrow":
            raise ParseError("decide compares two arrow terms")
    phi, psi = kinds[0][1], kinds[1][1]
    check_mode(phi, args.mode)
    check_mode(psi, args.mode)
    v = decide_equal(phi, psi, args.root, load_skeleton(args.skeleton, args.seed), args.mode)
    print("EQUAL" if v.equal else f"NOT-PARALLEL at {v.stage}", file=out)
    if args.trace:
        for line in format_trace(v):
            print(line, file=out)
    return 0 if v.equal else 1


def cmd_sweep(args, out):
    if args.corollas > args.max_corollas:
        raise ResourceError(f"at most {args.max_corollas} corollas (raise --max-corollas)")
    table = sign_table(args.gamma_sign, args.beta_sign)
    try:
        sizes = tuple(int(n) for n in args.entries.split(","))
    except ValueError:
        raise ParseError(f"bad --entries {args.entries!r}") from None
    if not sizes or min(sizes) < 1:
        raise ParseError("every corolla needs at least one entry")
    r = sign_sweep(args.corollas, args.depth, sizes=sizes, table=table, limit=args.limit)
    lines = r.lines()
    if not args.full:
        lines = [ln for ln in lines if not ln.startswith("PAIR")]
    for line in lines:
        print(line, file=out)
    return 1 if r.violations else 0


def cmd_words(args, out):
    kind, T = parse_any(read_input(args.tree))
    if kind != "tree":
        raise ParseError("words takes a tree")
    T.check()
    ws = rooted_words(T, args.root) if args.root else admissible_words(T)
    for w in sorted(str(w) for w in ws):
        print(w, file=out)
    return 0


def cmd_cells(args, out):
    from .cells import CELLS

    bad = 0
    for c in CELLS:
        if args.name and c.name not in args.name:
            continue
        for v, (l, r) in c.instances():
            verdict = decide_equal(l, r, mode="with-units")
            bad += not verdict.equal
            tag = ",".join(map(str, v))
            print(f"{c.name} [{tag}] {'EQUAL' if verdict.equal else 'NOT-PARALLEL'}", file=out)
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclic-coherence", description="Decide equality of arrow terms in free cyclic operads.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, root=True):
        p.add_argument("--mode", choices=MODES, default="with-units")
        p.add_argument("--seed", type=int, default=0)
        if root:
            p.add_argument("--root", default=None, help="free entry used as root (default: least)")
            p.add_argument("--skeleton", default="lex", help="lex, rev, rot, random, or a file of 'corolla: inputs' lines")
            p.add_argument("--trace", action="store_true")

    p = sub.add_parser("typecheck", help="print the type of an object, arrow or tree")
    p.add_argument("term")
    common(p, root=False)
    p.set_defaults(func=cmd_typecheck)

    p = sub.add_parser("reduce", help="print a reduction stage")
    p.add_argument("term")
    p.add_argument("--stage", type=int, choices=range(4), default=3)
    common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("decide", help="decide equality of two arrow terms")
    p.add_argument("left")
    p.add_argument("right")
    common(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("sweep", help="check that parallel arrows have equal signs")
    p.add_argument("--corollas", type=int, default=3)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--max-corollas", type=int, default=4)
    p.add_argument("--entries", default="2,3", help="entry counts of the corollas, cycled")
    p.add_argument("--limit", type=int, default=2_000_000, help="bound on enumerated arrows")
    p.add_argument("--gamma-sign", type=int, choices=(-1, 1), default=-1, help="debug: sign given to gamma")
    p.add_argument("--beta-sign", type=int, choices=(-1, 1), default=1, help="debug: sign given to beta")
    p.add_argument("--full", action="store_true", help="print every PAIR line")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("words", help="list the admissible words of a tree (operadic ones with --root)")
    p.add_argument("tree")
    p.add_argument("--root", default=None)
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("cells", help="decide every catalogued coherence cell")
    p.add_argument("name", nargs="*")
    p.set_defaults(func=cmd_cells)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ResourceError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except RecursionError:
        print("error: term too deep", file=sys.stderr)
        return 3
    except INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
