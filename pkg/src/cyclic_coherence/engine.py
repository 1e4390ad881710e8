"""The staged decision procedure, enumeration of arrows, and sign sweeps."""

from __future__ import annotations

import hashlib
import itertools
import random
from collections import defaultdict
from dataclasses import dataclass, field

from .bijections import Bijection
from .reduction0 import red0_arrow
from .reduction1 import red1, relaxed_witnesses
from .reduction2 import red2
from .reduction3 import canonical_skeletalisation, check_skeletalisation, red3
from .terms import (
    Beta,
    BetaInv,
    Comp,
    Gamma,
    HComp,
    Id,
    Param,
    TermTypeError,
    Unit,
    VComp,
    count_generators,
    generator_sign,
    infer_signature,
    typecheck_arrow,
)
from .trees import TreeTerm, UnrootedTree, admissible_words, delta, delta_inv_arrow

MODES = ("strict", "relaxed-eq", "with-units")
STAGES = ("input", "red0", "red1", "tree", "red2", "red3")


class EngineError(ValueError):
    pass


class ResourceError(EngineError):
    pass


# ---------------------------------------------------------------- skeletalisations


def skeleton_choice(kind="lex", seed=0):
    """A function (tree, root) -> skeletalisation.

    ``lex`` orders inputs by name, ``rev`` reverses that, ``rot`` rotates it
    by one, ``random`` shuffles with the given seed.
    """
    if kind not in ("lex", "rev", "rot", "random"):
        raise EngineError(f"unknown skeletalisation {kind!r}")

    def choose(tree, root):
        base = canonical_skeletalisation(tree, root)
        if kind == "lex":
            return base
        if kind == "rev":
            return {k: tuple(reversed(v)) for k, v in base.items()}
        if kind == "rot":
            return {k: v[1:] + v[:1] for k, v in base.items()}
        if kind == "random":
            rng = random.Random(f"{seed}:{sorted(base.items())}")
            out = {}
            for k in sorted(base):
                v = list(base[k])
                rng.shuffle(v)
                out[k] = tuple(v)
        return out

    return choose


def explicit_skeleton(orders: dict):
    def choose(tree, root):
        return check_skeletalisation(tree, root, orders)

    return choose


# ---------------------------------------------------------------- pipeline


@dataclass
class Staged:
    stages: dict = field(default_factory=dict)
    root: str | None = None
    skeleton: dict | None = None
    witnesses: tuple | None = None

    def ends(self, stage):
        a = self.stages[stage]
        return a.ends


def _unit_only(a) -> bool:
    return isinstance(a, Id) and isinstance(a.obj, Unit)


def check_mode(phi, mode):
    if mode not in MODES:
        raise EngineError(f"unknown mode {mode!r}")
    sig = infer_signature(phi, units=(mode == "with-units"))
    return typecheck_arrow(phi, sig)


def pipeline(phi, root=None, skeleton=None, mode="with-units") -> Staged:
    """Run every reduction stage on phi.

    ``root`` defaults to the least free entry; ``skeleton`` is a function
    (tree, root) -> skeletalisation, lexicographic by default.
    """
    check_mode(phi, mode)
    out = Staged()
    out.stages["input"] = phi
    a0 = red0_arrow(phi)
    out.stages["red0"] = a0
    if _unit_only(a0):
        return out
    a1 = red1(a0)
    out.stages["red1"] = a1
    if mode == "relaxed-eq":
        out.witnesses = relaxed_witnesses(a0)
        for w in out.witnesses:
            w.ends
    t = delta_inv_arrow(a1)
    out.stages["tree"] = t
    fv = t.source.tree.fv
    x = min(fv) if root is None else root
    if x not in fv:
        raise EngineError(f"root {x} is not a free entry of {sorted(fv)}")
    out.root = x
    r = red2(t, x)
    out.stages["red2"] = r
    choose = skeleton or skeleton_choice("lex")
    svec = check_skeletalisation(t.source.tree, x, choose(t.source.tree, x))
    out.skeleton = svec
    out.stages["red3"] = red3(r, svec)
    for a in out.stages.values():
        a.ends
    return out


@dataclass
class Verdict:
    equal: bool
    reason: str
    stage: str | None
    trace: list

    def __str__(self):
        return "EQUAL" if self.equal else "NOT-PARALLEL"


def decide_equal(phi, psi, root=None, skeleton=None, mode="with-units") -> Verdict:
    """Compare the (source, target) pairs of phi and psi stage by stage."""
    if phi.source.type != psi.source.type:
        return Verdict(False, "NotParallel", "input", [("input", False, None, None)])
    if root is None:
        root = None  # chosen per run; the types agree so both runs pick the same
    p = pipeline(phi, root, skeleton, mode)
    q = pipeline(psi, root, skeleton, mode)
    trace = []
    for st in STAGES:
        a, b = p.stages.get(st), q.stages.get(st)
        if a is None and b is None:
            continue
        same = a is not None and b is not None and a.ends == b.ends
        trace.append((st, same, a, b))
        if not same:
            return Verdict(False, "NotParallel", st, trace)
    return Verdict(True, "ParallelByCoherence", None, trace)


def format_trace(v: Verdict) -> list:
    lines = []
    for st, same, a, b in v.trace:
        mark = "same" if same else "differ"
        lines.append(f"{st}: {mark}")
        for tag, x in (("L", a), ("R", b)):
            if x is not None:
                s, t = x.ends
                lines.append(f"  {tag} {s} => {t}")
    return lines


# ---------------------------------------------------------------- steps


def _replace(W, path, new):
    if not path:
        return new
    if path[0] == "0":
        return Comp(_replace(W.left, path[1:], new), W.x, W.y, W.right)
    return Comp(W.left, W.x, W.y, _replace(W.right, path[1:], new))


def _positions(W, path=""):
    yield path, W
    if isinstance(W, Comp):
        yield from _positions(W.left, path + "0")
        yield from _positions(W.right, path + "1")


def whisker(W, path, gen):
    """gen placed at position path of W, identities elsewhere."""
    if not path:
        return gen
    if path[0] == "0":
        return HComp(whisker(W.left, path[1:], gen), W.x, W.y, Id(W.right))
    return HComp(Id(W.left), W.x, W.y, whisker(W.right, path[1:], gen))


def local_generators(S):
    """Beta, betainv and gamma generators with source S."""
    out = []
    if not isinstance(S, Comp):
        return out
    out.append(Gamma(S.left, S.right, S.x, S.y))
    if isinstance(S.left, Comp):
        L = S.left
        out.append(Beta(L.left, L.right, S.right, L.x, L.y, S.x, S.y))
    if isinstance(S.right, Comp):
        R = S.right
        out.append(BetaInv(S.left, R.left, R.right, S.x, S.y, R.x, R.y))
    good = []
    for g in out:
        try:
            g.ends
            good.append(g)
        except (TermTypeError, ValueError):
            pass
    return good


def steps(W):
    """Every single-generator arrow out of W, whiskered into context."""
    out = []
    for path, S in _positions(W):
        for g in local_generators(S):
            out.append(whisker(W, path, g))
    return out


def enumerate_arrows(src, tgt, depth):
    """Arrows src -> tgt that are sequences of at most ``depth`` whiskered
    generators.  Identity arrows only appear as the empty sequence."""
    seen = set()
    if src == tgt:
        seen.add(str(Id(src)))
        yield Id(src)

    def go(cur, chain, left):
        if left == 0:
            return
        for st in steps(cur):
            new = chain + [st]
            if st.target == tgt:
                a = new[0]
                for b in new[1:]:
                    a = VComp(b, a)
                key = str(a)
                if key not in seen:
                    seen.add(key)
                    yield a
            yield from go(st.target, new, left - 1)

    yield from go(src, [], depth)


# ---------------------------------------------------------------- pools


def corolla_pool(n, sizes=(2, 3)):
    """Corollas a, b, c, ... with entries a1.. ak; sizes cycle through ``sizes``."""
    out = []
    for i in range(n):
        name = "abcdefgh"[i]
        k = sizes[i % len(sizes)]
        out.append(Param(name, frozenset(f"{name}{j}" for j in range(1, k + 1))))
    return out


def trees_on(corollas):
    """Every tree whose vertices are exactly these corollas."""
    cs = list(corollas)
    n = len(cs)
    if n == 1:
        yield UnrootedTree(tuple(cs), frozenset())
        return
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for shape in itertools.combinations(pairs, n - 1):
        choices = []
        for i, j in shape:
            choices.append([(a, b) for a in sorted(cs[i].fv) for b in sorted(cs[j].fv)])
        for pick in itertools.product(*choices):
            used = [h for e in pick for h in e]
            if len(set(used)) != len(used):
                continue
            T = UnrootedTree(tuple(cs), frozenset(frozenset(e) for e in pick))
            try:
                T.check()
            except ValueError:
                continue
            yield T


def object_pool(max_corollas=3, sizes=(2, 3)):
    """Linear symmetry-free object terms, grouped by tree."""
    groups = []
    for n in range(1, max_corollas + 1):
        cs = corolla_pool(n, sizes)
        for T in trees_on(cs):
            groups.append([delta(TreeTerm(T, w)) for w in admissible_words(T)])
    return groups


def term_hash(W) -> str:
    return hashlib.sha256(str(W).encode()).hexdigest()[:12]


# ---------------------------------------------------------------- sign sweep


@dataclass
class SweepReport:
    pairs: list
    violations: list
    checked_pairs: int = 0
    arrows: int = 0

    def lines(self):
        out = []
        for s, t, signs, count in self.pairs:
            sg = "".join("+" if x > 0 else "-" for x in sorted(signs, reverse=True))
            out.append(f"PAIR {term_hash(s)} {term_hash(t)} SIGN {sg} COUNT {count}")
        for s, t, detail in self.violations:
            out.append(f"VIOLATION {term_hash(s)} {term_hash(t)} {detail}")
        out.append(f"SUMMARY pairs={self.checked_pairs} arrows={self.arrows} violations={len(self.violations)}")
        return out


def sign_table(gamma_sign=-1, beta_sign=1) -> dict:
    return {Beta: beta_sign, BetaInv: beta_sign, Gamma: gamma_sign}


def table_sign(phi, table) -> int:
    """Product of per-generator signs; generators missing from the table count +1."""
    phi.ends
    out = 1
    for kind, s in table.items():
        out *= s ** count_generators(phi, (kind,))
    return out


def sign_sweep(max_corollas=3, depth=5, gamma_sign=-1, sizes=(2, 3), limit=2_000_000, table=None):
    """Count, for every pair of objects in a pool, the arrows between them
    of each sign, by dynamic programming over the step graph."""
    table = table or sign_table(gamma_sign)
    pairs, violations = [], []
    total = 0
    for group in object_pool(max_corollas, sizes):
        edges = {W: [(st.target, table.get(type(_core(st)), 1)) for st in steps(W)] for W in group}
        for src in group:
            # counts[(node, sign)] = number of paths of the current length
            layer = {(src, 1): 1}
            acc = defaultdict(int)
            acc[(src, 1)] += 1
            for _ in range(depth):
                nxt = defaultdict(int)
                for (node, sg), c in layer.items():
                    for tgt, s in edges[node]:
                        nxt[(tgt, sg * s)] += c
                layer = nxt
                for k, c in layer.items():
                    acc[k] += c
                total += sum(layer.values())
                if total > limit:
                    raise ResourceError(f"sweep exceeded {limit} arrows")
            by_tgt = defaultdict(dict)
            for (node, sg), c in acc.items():
                by_tgt[node][sg] = c
            for tgt in sorted(by_tgt, key=str):
                signs = by_tgt[tgt]
                count = sum(signs.values())
                pairs.append((src, tgt, set(signs), count))
                if len(signs) > 1:
                    violations.append((src, tgt, f"plus={signs[1]} minus={signs[-1]}"))
    return SweepReport(pairs, violations, len(pairs), total)


def _core(st):
    while isinstance(st, HComp):
        st = st.left if not isinstance(st.left, Id) else st.right
    return st


def explicit_signs(src, tgt, depth, table=None):
    """Signs of all enumerated arrows src -> tgt (slow oracle for the sweep)."""
    table = table or sign_table()
    return [table_sign(a, table) for a in enumerate_arrows(src, tgt, depth)]


def paths_from(src, depth):
    """Every non-empty sequence of at most ``depth`` whiskered generators out of src."""

    def go(cur, arrow, left):
        for st in steps(cur):
            a = st if arrow is None else VComp(st, arrow)
            yield a
            if left > 1:
                yield from go(st.target, a, left - 1)

    if depth > 0:
        yield from go(src, None, depth)


def arrow_pool(max_corollas=3, depth=4, sizes=(2, 3)):
    """Identity arrows plus all whiskered paths out of every pooled object."""
    for group in object_pool(max_corollas, sizes):
        for src in group:
            yield Id(src)
            yield from paths_from(src, depth)
