"""Unrooted trees of corollas, parenthesised words, and the correspondence
between symmetry-free terms and (tree, word) pairs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from ._cache import cached_property

from .bijections import Bijection, fmt_set
from .terms import Beta, BetaInv, Comp, Gamma, HComp, Id, Obj, Param, VComp


class TreeError(ValueError):
    pass


class NonLinearError(TreeError):
    """A term whose leaves repeat a parameter or a half-edge name."""


def _edge(a, b):
    return frozenset((a, b))


@dataclass(frozen=True)
class UnrootedTree:
    """Corollas (decorated parameters, keyed by name) and edges between
    half-edges.  Half-edges left out of every edge are free."""

    corollas: tuple
    edges: frozenset

    def __post_init__(self):
        cs = tuple(sorted(self.corollas, key=lambda c: c.name))
        object.__setattr__(self, "corollas", cs)
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))

    @cached_property
    def owner(self) -> dict:
        out = {}
        for c in self.corollas:
            for h in c.type:
                if h in out:
                    raise NonLinearError(f"half-edge {h} occurs on {out[h]} and {c.name}")
                out[h] = c.name
        return out

    @cached_property
    def names(self) -> frozenset:
        return frozenset(c.name for c in self.corollas)

    @cached_property
    def partner(self) -> dict:
        out = {}
        for e in self.edges:
            a, b = sorted(e)
            out[a], out[b] = b, a
        return out

    @cached_property
    def fv(self) -> frozenset:
        return frozenset(h for h in self.owner if h not in self.partner)

    def corolla(self, name) -> Param:
        for c in self.corollas:
            if c.name == name:
                return c
        raise TreeError(f"no corolla named {name}")

    def check(self) -> "UnrootedTree":
        return _check_tree(self)

    def _check(self) -> "UnrootedTree":
        if not self.corollas:
            raise TreeError("a tree needs at least one corolla")
        if len(self.names) != len(self.corollas):
            raise NonLinearError("repeated corolla name")
        owner = self.owner
        seen = set()
        for e in self.edges:
            if len(e) != 2:
                raise TreeError(f"degenerate edge {sorted(e)}")
            for h in e:
                if h not in owner:
                    raise TreeError(f"edge endpoint {h} is not a half-edge")
                if h in seen:
                    raise TreeError(f"half-edge {h} lies on two edges")
                seen.add(h)
            a, b = sorted(e)
            if owner[a] == owner[b]:
                raise TreeError(f"loop at corolla {owner[a]}")
        if len(self.edges) != len(self.corollas) - 1:
            raise TreeError("edge count does not match a tree")
        if len(self.component(self.corollas[0].name)) != len(self.corollas):
            raise TreeError("tree is not connected")
        return self

    def adjacency(self) -> dict:
        return self._adj

    @cached_property
    def _adj(self) -> dict:
        adj = {n: [] for n in self.names}
        for e in self.edges:
            a, b = sorted(e)
            adj[self.owner[a]].append((a, b, self.owner[b]))
            adj[self.owner[b]].append((b, a, self.owner[a]))
        return adj

    @cached_property
    def _hash(self) -> int:
        return hash((self.corollas, self.edges))

    def __hash__(self):
        return self._hash

    def component(self, start, removed=frozenset()) -> frozenset:
        adj = self.adjacency()
        seen, todo = {start}, [start]
        while todo:
            n = todo.pop()
            for h, k, m in adj[n]:
                if _edge(h, k) in removed or m in seen:
                    continue
                seen.add(m)
                todo.append(m)
        return frozenset(seen)

    def subtree(self, names) -> "UnrootedTree":
        return _subtree(self, frozenset(names))

    def _subtree(self, names) -> "UnrootedTree":
        if not names <= self.names or not names:
            raise TreeError(f"{fmt_set(names)} is not a set of corollas of the tree")
        cs = tuple(c for c in self.corollas if c.name in names)
        es = frozenset(e for e in self.edges if all(self.owner[h] in names for h in e))
        sub = UnrootedTree(cs, es)
        if len(sub.component(cs[0].name)) != len(cs):
            raise TreeError(f"{fmt_set(names)} does not span a subtree")
        return sub

    def crossing(self, names) -> list:
        """Edges with exactly one end among the corollas ``names``,
        oriented as (inside half-edge, outside half-edge)."""
        out = []
        for e in self.edges:
            a, b = sorted(e)
            ia, ib = self.owner[a] in names, self.owner[b] in names
            if ia and not ib:
                out.append((a, b))
            elif ib and not ia:
                out.append((b, a))
        return sorted(out)

    def decompose(self, x, y):
        """Split at the edge (x, y): the part holding x, then the part holding y."""
        e = _edge(x, y)
        if e not in self.edges:
            raise TreeError(f"({x} {y}) is not an edge")
        left = self.component(self.owner[x], removed={e})
        right = self.names - left
        return self.subtree(left), self.subtree(right)

    def join(self, x, other: "UnrootedTree", y) -> "UnrootedTree":
        return UnrootedTree(self.corollas + other.corollas, self.edges | other.edges | {_edge(x, y)})

    def __str__(self):
        cs = "; ".join(f"{_corolla_str(c)}" for c in self.corollas)
        es = ", ".join(f"{a}-{b}" for a, b in sorted(tuple(sorted(e)) for e in self.edges))
        return f"tree{{ {cs} | {es} }}" if es else f"tree{{ {cs} }}"


def _corolla_str(c: Param) -> str:
    if c.deco is None:
        return f"{c.name}({','.join(sorted(c.fv))})"
    return f"{c.name}{c.deco}"


# ---------------------------------------------------------------- words


@dataclass(frozen=True)
class Leaf:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Pair:
    left: object
    right: object

    def __str__(self):
        return f"({self.left} {self.right})"


@lru_cache(maxsize=None)
def _check_tree(T):
    return T._check()


@lru_cache(maxsize=None)
def _subtree(T, names):
    return T._subtree(names)


def letters(w) -> list:
    if isinstance(w, Leaf):
        return [w.name]
    return letters(w.left) + letters(w.right)


@lru_cache(maxsize=None)
def split_at(T: UnrootedTree, w: Pair):
    """Decomposition of T along the halves of w, or None.

    Returns (T1, z, y, T2) where (z, y) is the unique crossing edge with
    z on the left half."""
    l1 = frozenset(letters(w.left))
    l2 = frozenset(letters(w.right))
    if l1 & l2 or (l1 | l2) != T.names:
        return None
    cross = T.crossing(l1)
    if len(cross) != 1:
        return None
    try:
        T1, T2 = T.subtree(l1), T.subtree(l2)
    except TreeError:
        return None
    z, y = cross[0]
    return T1, z, y, T2


@lru_cache(maxsize=None)
def admissible(T: UnrootedTree, w) -> bool:
    names = letters(w)
    if len(set(names)) != len(names) or set(names) != set(T.names):
        return False
    if isinstance(w, Leaf):
        return len(T.corollas) == 1
    parts = split_at(T, w)
    if parts is None:
        return False
    T1, _, _, T2 = parts
    return admissible(T1, w.left) and admissible(T2, w.right)


def rooted_admissible(T: UnrootedTree, x, w) -> bool:
    if x not in T.fv:
        raise TreeError(f"{x} is not a free half-edge of the tree")
    return _rooted_ok(T, x, w)


@lru_cache(maxsize=None)
def _rooted_ok(T, x, w):
    names = letters(w)
    if len(set(names)) != len(names) or set(names) != set(T.names):
        return False
    if isinstance(w, Leaf):
        return len(T.corollas) == 1
    parts = split_at(T, w)
    if parts is None:
        return False
    T1, z, y, T2 = parts
    if x not in T1.owner:
        return False
    return _rooted_ok(T1, x, w.left) and _rooted_ok(T2, y, w.right)


def in_out(T: UnrootedTree, x, S):
    """Inputs and output half-edge of the subtree with corollas S, rooted at x."""
    if x not in T.fv:
        raise TreeError(f"{x} is not a free half-edge of the tree")
    names = frozenset(S.names if isinstance(S, UnrootedTree) else S)
    sub = T.subtree(names)
    free = sub.fv
    if x in free:
        return free - {x}, x
    # the edge leaving S toward the corolla holding x
    target = T.owner[x]
    for inside, outside in T.crossing(names):
        reach = T.component(T.owner[outside], removed={_edge(inside, outside)})
        if target in reach:
            return free - {inside}, inside
    raise TreeError("subtree does not reach the root")


def enumerate_words(names):
    """All parenthesised words using each name once."""
    names = tuple(names)
    if len(names) == 1:
        yield Leaf(names[0])
        return
    n = len(names)
    for mask in range(1, 2 ** n - 1):
        l = tuple(names[i] for i in range(n) if mask >> i & 1)
        r = tuple(names[i] for i in range(n) if not mask >> i & 1)
        for a in enumerate_words(l):
            for b in enumerate_words(r):
                yield Pair(a, b)


def admissible_words(T: UnrootedTree):
    return [w for w in enumerate_words(sorted(T.names)) if admissible(T, w)]


def rooted_words(T: UnrootedTree, x):
    return [w for w in enumerate_words(sorted(T.names)) if rooted_admissible(T, x, w)]


# ---------------------------------------------------------------- tree terms


@dataclass(frozen=True)
class TreeTerm:
    tree: UnrootedTree
    word: object

    @property
    def type(self):
        return self.tree.fv

    def check(self) -> "TreeTerm":
        self.tree.check()
        if not admissible(self.tree, self.word):
            raise TreeError(f"{self.word} is not admissible for {self.tree}")
        return self

    def __str__(self):
        return f"({self.tree}, {self.word})"


def join_terms(t1: TreeTerm, x, y, t2: TreeTerm) -> TreeTerm:
    return TreeTerm(t1.tree.join(x, t2.tree, y), Pair(t1.word, t2.word))


def delta_inv(W: Obj) -> TreeTerm:
    """The (tree, word) pair of a linear symmetry-free term."""
    cs, es = [], []

    def walk(S):
        if isinstance(S, Param):
            cs.append(S)
            return Leaf(S.name)
        if not isinstance(S, Comp):
            raise TreeError(f"{S} is not symmetry-free")
        a, b = walk(S.left), walk(S.right)
        es.append(_edge(S.x, S.y))
        return Pair(a, b)

    word = walk(W)
    if len({c.name for c in cs}) != len(cs):
        raise NonLinearError(f"{W} repeats a parameter")
    edges = frozenset(es)
    if len(edges) != len(es) or any(len(e) != 2 for e in edges):
        raise NonLinearError(f"{W} reuses a half-edge name")
    t = TreeTerm(UnrootedTree(tuple(cs), edges), word)
    t.tree.owner
    return t.check()


def delta(t: TreeTerm) -> Obj:
    return _delta(t.tree, t.word)


def _delta(T, w):
    if isinstance(w, Leaf):
        return T.corolla(w.name)
    parts = split_at(T, w)
    if parts is None:
        raise TreeError(f"{w} is not admissible")
    T1, z, y, T2 = parts
    return Comp(_delta(T1, w.left), z, y, _delta(T2, w.right))


def restrict(t: TreeTerm, w) -> TreeTerm:
    return TreeTerm(t.tree.subtree(letters(w)), w)


# ---------------------------------------------------------------- tree arrows


class TArrow:
    @cached_property
    def ends(self):
        return tree_arrow_ends(self)

    @property
    def source(self):
        return self.ends[0]

    @property
    def target(self):
        return self.ends[1]

    def __str__(self):
        return show_tree_arrow(self)


@dataclass(frozen=True)
class TId(TArrow):
    term: TreeTerm


@dataclass(frozen=True)
class TBeta(TArrow):
    t1: TreeTerm
    t2: TreeTerm
    t3: TreeTerm
    x: str
    xb: str
    y: str
    yb: str


@dataclass(frozen=True)
class TBetaInv(TArrow):
    t1: TreeTerm
    t2: TreeTerm
    t3: TreeTerm
    x: str
    xb: str
    y: str
    yb: str


@dataclass(frozen=True)
class TGamma(TArrow):
    t1: TreeTerm
    t2: TreeTerm
    x: str
    y: str


@dataclass(frozen=True)
class TVComp(TArrow):
    after: TArrow
    before: TArrow


@dataclass(frozen=True)
class THComp(TArrow):
    left: TArrow
    x: str
    y: str
    right: TArrow


def tree_arrow_ends(a: TArrow):
    if isinstance(a, TId):
        return a.term.check(), a.term
    if isinstance(a, (TBeta, TBetaInv)):
        left = join_terms(join_terms(a.t1, a.x, a.xb, a.t2), a.y, a.yb, a.t3)
        right = join_terms(a.t1, a.x, a.xb, join_terms(a.t2, a.y, a.yb, a.t3))
        left.check(), right.check()
        return (left, right) if isinstance(a, TBeta) else (right, left)
    if isinstance(a, TGamma):
        s = join_terms(a.t1, a.x, a.y, a.t2).check()
        return s, join_terms(a.t2, a.y, a.x, a.t1).check()
    if isinstance(a, TVComp):
        s1, t1 = a.before.ends
        s2, t2 = a.after.ends
        if t1 != s2:
            raise TreeError(f"cannot compose: {t1} is not {s2}")
        return s1, t2
    if isinstance(a, THComp):
        s1, t1 = a.left.ends
        s2, t2 = a.right.ends
        return join_terms(s1, a.x, a.y, s2).check(), join_terms(t1, a.x, a.y, t2).check()
    raise TypeError(f"not a tree arrow: {a!r}")


def delta_inv_arrow(phi) -> TArrow:
    if isinstance(phi, Id):
        return TId(delta_inv(phi.obj))
    if isinstance(phi, (Beta, BetaInv)):
        cls = TBeta if isinstance(phi, Beta) else TBetaInv
        ts = [delta_inv(w) for w in (phi.w1, phi.w2, phi.w3)]
        return cls(*ts, phi.x, phi.xb, phi.y, phi.yb)
    if isinstance(phi, Gamma):
        return TGamma(delta_inv(phi.w1), delta_inv(phi.w2), phi.x, phi.y)
    if isinstance(phi, VComp):
        return TVComp(delta_inv_arrow(phi.after), delta_inv_arrow(phi.before))
    if isinstance(phi, HComp):
        return THComp(delta_inv_arrow(phi.left), phi.x, phi.y, delta_inv_arrow(phi.right))
    raise TreeError(f"{type(phi).__name__} has no tree counterpart")


def delta_arrow(a: TArrow):
    if isinstance(a, TId):
        return Id(delta(a.term))
    if isinstance(a, (TBeta, TBetaInv)):
        cls = Beta if isinstance(a, TBeta) else BetaInv
        return cls(delta(a.t1), delta(a.t2), delta(a.t3), a.x, a.xb, a.y, a.yb)
    if isinstance(a, TGamma):
        return Gamma(delta(a.t1), delta(a.t2), a.x, a.y)
    if isinstance(a, TVComp):
        return VComp(delta_arrow(a.after), delta_arrow(a.before))
    if isinstance(a, THComp):
        return HComp(delta_arrow(a.left), a.x, a.y, delta_arrow(a.right))
    raise TypeError(f"not a tree arrow: {a!r}")


def show_tree_arrow(a: TArrow) -> str:
    if isinstance(a, TId):
        return f"1{a.term}"
    if isinstance(a, (TBeta, TBetaInv)):
        name = "beta" if isinstance(a, TBeta) else "betainv"
        return f"{name}<{a.x},{a.xb};{a.y},{a.yb}>{a.source}"
    if isinstance(a, TGamma):
        return f"gamma<{a.x},{a.y}>{a.source}"
    if isinstance(a, TVComp):
        parts, stack = [], [a]
        while stack:
            b = stack.pop()
            if isinstance(b, TVComp):
                stack += [b.after, b.before]
            else:
                parts.append(str(b))
        return "(" + " ; ".join(parts) + ")"
    return f"({a.left} {a.x}<>{a.y} {a.right})"


# ---------------------------------------------------------------- text format

_TREE = re.compile(r"\s*tree\s*\{(.*)\}\s*\Z", re.S)


def parse_tree(text: str) -> UnrootedTree:
    from .parse import ParseError, parse_bijection

    m = _TREE.match(text)
    if not m:
        raise ParseError("expected tree{ ... }")
    body = m.group(1)
    cpart, _, epart = body.partition("|")
    cs = []
    for chunk in filter(None, (s.strip() for s in cpart.split(";"))):
        cm = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_#']*)\s*(\(.*\)|\[.*\])", chunk, re.S)
        if not cm:
            raise ParseError(f"bad corolla {chunk!r}")
        name, rest = cm.groups()
        if rest.startswith("["):
            deco = parse_bijection(rest)
            cs.append(Param(name, deco.cod, deco))
        else:
            vs = [v.strip() for v in rest[1:-1].split(",") if v.strip()]
            if len(set(vs)) != len(vs):
                raise ParseError(f"repeated half-edge in corolla {name}")
            cs.append(Param(name, frozenset(vs)))
    es = []
    for chunk in filter(None, (s.strip() for s in epart.split(","))):
        a, sep, b = chunk.partition("-")
        if not sep:
            raise ParseError(f"bad edge {chunk!r}")
        es.append(_edge(a.strip(), b.strip()))
    return UnrootedTree(tuple(cs), frozenset(es))


def parse_word(text: str):
    from .parse import ParseError, tokenize

    toks = tokenize(text)
    pos = 0

    def item():
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("unexpected end of word")
        tok = toks[pos]
        pos += 1
        if tok == "(":
            parts = [item()]
            while pos < len(toks) and toks[pos] != ")":
                parts.append(item())
            if pos >= len(toks):
                raise ParseError("unclosed parenthesis in word")
            pos += 1
            if len(parts) != 2:
                raise ParseError("a word pairs exactly two subwords")
            return Pair(*parts)
        return Leaf(tok)

    w = item()
    if pos != len(toks):
        raise ParseError("trailing input in word")
    return w
