"""Rooting tree terms at a free half-edge.

A rooted term is a tree, a root half-edge and an operadic word: the left
factor of every pair holds the root, the right factor is grafted into it.
Rooted arrows have no commutator; in its place stands the parallel
associator ``theta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from ._cache import cached_property

from .trees import (
    Leaf,
    Pair,
    TBeta,
    TBetaInv,
    TGamma,
    THComp,
    TId,
    TreeError,
    TreeTerm,
    TVComp,
    _edge,
    rooted_admissible,
    split_at,
)


@dataclass(frozen=True)
class RootedTerm:
    tree: object
    root: str
    word: object

    @property
    def type(self):
        return self.tree.fv

    def check(self) -> "RootedTerm":
        self.tree.check()
        if not rooted_admissible(self.tree, self.root, self.word):
            raise TreeError(f"{self.word} is not operadic for {self.tree} rooted at {self.root}")
        return self

    def __str__(self):
        return f"({self.tree}, {self.root}, {self.word})"


def graft(r1: RootedTerm, z, r2: RootedTerm) -> RootedTerm:
    """Plug r2 (through its root) into the half-edge z of r1."""
    tree = r1.tree.join(z, r2.tree, r2.root)
    return RootedTerm(tree, r1.root, Pair(r1.word, r2.word))


class RArrow:
    @cached_property
    def ends(self):
        return rooted_ends(self)

    @property
    def source(self):
        return self.ends[0]

    @property
    def target(self):
        return self.ends[1]

    def __str__(self):
        return show_rooted(self)


@dataclass(frozen=True)
class RId(RArrow):
    term: RootedTerm


@dataclass(frozen=True)
class RBeta(RArrow):
    """((w1 w2) w3) -> (w1 (w2 w3)); r2 is grafted at z of r1, r3 at y of r2."""

    r1: RootedTerm
    r2: RootedTerm
    r3: RootedTerm
    z: str
    y: str


@dataclass(frozen=True)
class RBetaInv(RArrow):
    r1: RootedTerm
    r2: RootedTerm
    r3: RootedTerm
    z: str
    y: str


@dataclass(frozen=True)
class RTheta(RArrow):
    """((w1 w2) w3) -> ((w1 w3) w2); r2 and r3 are grafted at z and y of r1."""

    r1: RootedTerm
    r2: RootedTerm
    r3: RootedTerm
    z: str
    y: str


@dataclass(frozen=True)
class RVComp(RArrow):
    after: RArrow
    before: RArrow


@dataclass(frozen=True)
class RHComp(RArrow):
    left: RArrow
    z: str
    y: str
    right: RArrow


def _checked(*rs):
    for r in rs:
        r.check()
    return rs


def rooted_ends(a: RArrow):
    if isinstance(a, RId):
        return a.term.check(), a.term
    if isinstance(a, (RBeta, RBetaInv)):
        if a.z not in a.r1.tree.fv or a.y not in a.r2.tree.fv:
            raise TreeError("beta indices must be free in the first and second factors")
        left = graft(graft(a.r1, a.z, a.r2), a.y, a.r3)
        right = graft(a.r1, a.z, graft(a.r2, a.y, a.r3))
        _checked(left, right)
        return (left, right) if isinstance(a, RBeta) else (right, left)
    if isinstance(a, RTheta):
        if a.z not in a.r1.tree.fv or a.y not in a.r1.tree.fv or a.z == a.y:
            raise TreeError("theta indices must be two free half-edges of the first factor")
        left = graft(graft(a.r1, a.z, a.r2), a.y, a.r3)
        right = graft(graft(a.r1, a.y, a.r3), a.z, a.r2)
        return _checked(left, right)
    if isinstance(a, RVComp):
        s1, t1 = a.before.ends
        s2, t2 = a.after.ends
        if t1 != s2:
            raise TreeError(f"cannot compose: {t1} is not {s2}")
        return s1, t2
    if isinstance(a, RHComp):
        s1, t1 = a.left.ends
        s2, t2 = a.right.ends
        if s2.root != a.y or a.z == s1.root:
            raise TreeError("horizontal composite must graft the right factor through its root")
        return _checked(graft(s1, a.z, s2), graft(t1, a.z, t2))
    raise TypeError(f"not a rooted arrow: {a!r}")


def show_rooted(a: RArrow) -> str:
    if isinstance(a, RId):
        return f"1{a.term}"
    if isinstance(a, (RBeta, RBetaInv, RTheta)):
        name = {RBeta: "beta", RBetaInv: "betainv", RTheta: "theta"}[type(a)]
        args = ", ".join(f"{r.word}@{r.root}" for r in (a.r1, a.r2, a.r3))
        return f"{name}<{a.z};{a.y}>({args})"
    if isinstance(a, RVComp):
        parts, stack = [], [a]
        while stack:
            b = stack.pop()
            if isinstance(b, RVComp):
                stack += [b.after, b.before]
            else:
                parts.append(show_rooted(b))
        return "(" + " ; ".join(parts) + ")"
    return f"({show_rooted(a.left)} {a.z}<>{a.y} {show_rooted(a.right)})"


# ---------------------------------------------------------------- rooting


def rootify_word(t: TreeTerm, x):
    """The operadic word obtained by turning every pair toward the root x."""
    if x not in t.tree.fv:
        raise TreeError(f"{x} is not a free half-edge")
    return _rootify(t.tree, t.word, x)


def _parts(T, w):
    parts = split_at(T, w)
    if parts is None:
        raise TreeError(f"{w} is not admissible")
    return parts


def _rootify(T, w, x):
    if isinstance(w, Leaf):
        return w
    T1, x1, x2, T2 = _parts(T, w)
    if x in T1.owner:
        return Pair(_rootify(T1, w.left, x), _rootify(T2, w.right, x2))
    return Pair(_rootify(T2, w.right, x), _rootify(T1, w.left, x1))


def root_term(t: TreeTerm, x) -> RootedTerm:
    return RootedTerm(t.tree, x, rootify_word(t, x))


def kappa(t: TreeTerm, x):
    """Tree arrow from (T, w) to (T, w rooted at x), built from commutators."""
    if x not in t.tree.fv:
        raise TreeError(f"{x} is not a free half-edge")
    return _kappa(t, x)


def _kappa(t, x):
    if isinstance(t.word, Leaf):
        return TId(t)
    T1, x1, x2, T2 = _parts(t.tree, t.word)
    t1, t2 = TreeTerm(T1, t.word.left), TreeTerm(T2, t.word.right)
    if x in T1.owner:
        return _hcomp(_kappa(t1, x), x1, x2, _kappa(t2, x2), t)
    swap = TGamma(t1, t2, x1, x2)
    return TVComp(_hcomp(_kappa(t2, x), x2, x1, _kappa(t1, x1), None), swap)


def _hcomp(a, x, y, b, whole):
    if whole is not None and isinstance(a, TId) and isinstance(b, TId):
        return TId(whole)
    return THComp(a, x, y, b)


def red2(chi, x):
    """Root the tree arrow chi at x; commutators become identities."""
    if x not in chi.source.tree.fv:
        raise TreeError(f"{x} is not a free half-edge")
    return _red2(chi, x)


def _red2(a, x):
    if isinstance(a, TId):
        return RId(root_term(a.term, x))
    if isinstance(a, TGamma):
        return RId(root_term(a.source, x))
    if isinstance(a, TVComp):
        return RVComp(_red2(a.after, x), _red2(a.before, x))
    if isinstance(a, THComp):
        s1 = a.left.source
        if x in s1.tree.owner:
            return RHComp(_red2(a.left, x), a.x, a.y, _red2(a.right, a.y))
        return RHComp(_red2(a.right, x), a.y, a.x, _red2(a.left, a.x))
    if isinstance(a, (TBeta, TBetaInv)):
        t1, t2, t3 = a.t1, a.t2, a.t3
        z, zb, y, yb = a.x, a.xb, a.y, a.yb
        fwd = isinstance(a, TBeta)
        if x in t1.tree.owner:
            cls = RBeta if fwd else RBetaInv
            return cls(root_term(t1, x), root_term(t2, zb), root_term(t3, yb), z, y)
        if x in t2.tree.owner:
            if fwd:
                return RTheta(root_term(t2, x), root_term(t1, z), root_term(t3, yb), zb, y)
            return RTheta(root_term(t2, x), root_term(t3, yb), root_term(t1, z), y, zb)
        cls = RBetaInv if fwd else RBeta
        return cls(root_term(t3, x), root_term(t2, y), root_term(t1, z), yb, zb)
    raise TypeError(f"not a tree arrow: {a!r}")


def count_rooted(a: RArrow, kind) -> int:
    if isinstance(a, RVComp):
        return count_rooted(a.after, kind) + count_rooted(a.before, kind)
    if isinstance(a, RHComp):
        return count_rooted(a.left, kind) + count_rooted(a.right, kind)
    return 1 if isinstance(a, kind) else 0
