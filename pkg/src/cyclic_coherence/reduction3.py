"""Skeletal operadic terms: inputs are positions instead of names.

A skeletalisation orders the inputs of every corolla; it induces a total
order on the inputs of any rooted tree by splicing.  Under it a rooted
term becomes a tree of ``f <i> g`` grafts and rooted arrows get integer
indices.  In the skeletal target two arrows are equal exactly when they
are parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from ._cache import cached_property

from .reduction2 import RBeta, RBetaInv, RHComp, RId, RTheta, RVComp, RootedTerm
from .trees import Leaf, TreeError, TreeTerm, delta, in_out, split_at


class SkeletalError(ValueError):
    pass


def splice(s1, i: int, s2) -> tuple:
    """Replace position i (1-based) of the order s1 by the whole order s2."""
    s1, s2 = tuple(s1), tuple(s2)
    if not 1 <= i <= len(s1):
        raise SkeletalError(f"graft index {i} out of range 1..{len(s1)}")
    out = s1[: i - 1] + s2 + s1[i:]
    if len(set(out)) != len(out):
        raise SkeletalError("spliced orders overlap")
    return out


def canonical_skeletalisation(tree, root) -> dict:
    return {c.name: tuple(sorted(in_out(tree, root, {c.name})[0])) for c in tree.corollas}


def check_skeletalisation(tree, root, svec) -> dict:
    want = canonical_skeletalisation(tree, root)
    if set(svec) != set(want):
        raise SkeletalError("skeletalisation must order every corolla exactly once")
    for name, order in svec.items():
        if sorted(order) != list(want[name]) or len(set(order)) != len(order):
            raise SkeletalError(f"order for {name} is not a bijection onto its inputs")
    return {k: tuple(v) for k, v in svec.items()}


def induced_order(rt: RootedTerm, svec) -> tuple:
    return _order(rt.tree, rt.word, svec)


def _order(T, w, svec):
    if isinstance(w, Leaf):
        return tuple(svec[w.name])
    T1, z, y, T2 = _split(T, w)
    s1 = _order(T1, w.left, svec)
    return splice(s1, s1.index(z) + 1, _order(T2, w.right, svec))


def _split(T, w):
    parts = split_at(T, w)
    if parts is None:
        raise TreeError(f"{w} is not admissible")
    return parts


# ---------------------------------------------------------------- objects


@dataclass(frozen=True)
class SkLeaf:
    name: str
    arity: int

    def __str__(self):
        return f"{self.name}/{self.arity}"


@dataclass(frozen=True)
class SkGraft:
    left: object
    i: int
    right: object

    def __str__(self):
        return f"({self.left} <{self.i}> {self.right})"


def arity(f) -> int:
    if isinstance(f, SkLeaf):
        return f.arity
    n = arity(f.left)
    if not 1 <= f.i <= n:
        raise SkeletalError(f"graft index {f.i} out of range 1..{n}")
    return n + arity(f.right) - 1


def sk_graft(f, i, g):
    out = SkGraft(f, i, g)
    arity(out)
    return out


def sk_order(f, svec) -> tuple:
    """Total order read off a skeletal term, given the leaves' orders."""
    if isinstance(f, SkLeaf):
        return tuple(svec[f.name])
    return splice(sk_order(f.left, svec), f.i, sk_order(f.right, svec))


def red3_object(rt: RootedTerm, svec):
    return _obj(rt.tree, rt.word, svec)


def _obj(T, w, svec):
    if isinstance(w, Leaf):
        return SkLeaf(w.name, len(svec[w.name]))
    T1, z, y, T2 = _split(T, w)
    i = _order(T1, w.left, svec).index(z) + 1
    return sk_graft(_obj(T1, w.left, svec), i, _obj(T2, w.right, svec))


@dataclass(frozen=True)
class SkeletalCell:
    """(entries, root, total order on the other entries, payload)."""

    entries: frozenset
    root: str
    order: tuple
    payload: object


def skeletal_cell(rt: RootedTerm, svec) -> SkeletalCell:
    payload = delta(TreeTerm(rt.tree, rt.word))
    return SkeletalCell(rt.tree.fv, rt.root, induced_order(rt, svec), payload)


# ---------------------------------------------------------------- arrows


class SkArrow:
    @cached_property
    def ends(self):
        return sk_ends(self)

    @property
    def source(self):
        return self.ends[0]

    @property
    def target(self):
        return self.ends[1]

    def __str__(self):
        return show_sk(self)


@dataclass(frozen=True)
class SkId(SkArrow):
    obj: object


@dataclass(frozen=True)
class SkBeta(SkArrow):
    """((f <i> g) <i+j-1> h) -> (f <i> (g <j> h))"""

    f: object
    g: object
    h: object
    i: int
    j: int


@dataclass(frozen=True)
class SkBetaInv(SkArrow):
    f: object
    g: object
    h: object
    i: int
    j: int


@dataclass(frozen=True)
class SkTheta(SkArrow):
    """(f <i> g) <k'> h -> (f <k> h) <i'> g, with i' and k' shifted positions."""

    f: object
    g: object
    h: object
    i: int
    k: int


@dataclass(frozen=True)
class SkVComp(SkArrow):
    after: object
    before: object


@dataclass(frozen=True)
class SkHComp(SkArrow):
    left: object
    i: int
    right: object


def shifted(i: int, m: int, k: int) -> int:
    """Position of an old input k after an m-ary graft at position i."""
    return k if k < i else k + m - 1


def sk_ends(a):
    if isinstance(a, SkId):
        arity(a.obj)
        return a.obj, a.obj
    if isinstance(a, (SkBeta, SkBetaInv)):
        if not 1 <= a.j <= arity(a.g):
            raise SkeletalError(f"index {a.j} out of range for {a.g}")
        left = sk_graft(sk_graft(a.f, a.i, a.g), a.i + a.j - 1, a.h)
        right = sk_graft(a.f, a.i, sk_graft(a.g, a.j, a.h))
        return (left, right) if isinstance(a, SkBeta) else (right, left)
    if isinstance(a, SkTheta):
        n = arity(a.f)
        if a.i == a.k or not (1 <= a.i <= n and 1 <= a.k <= n):
            raise SkeletalError("theta needs two distinct inputs of its first factor")
        m, p = arity(a.g), arity(a.h)
        left = sk_graft(sk_graft(a.f, a.i, a.g), shifted(a.i, m, a.k), a.h)
        right = sk_graft(sk_graft(a.f, a.k, a.h), shifted(a.k, p, a.i), a.g)
        return left, right
    if isinstance(a, SkVComp):
        s1, t1 = a.before.ends
        s2, t2 = a.after.ends
        if t1 != s2:
            raise SkeletalError(f"cannot compose: {t1} is not {s2}")
        return s1, t2
    if isinstance(a, SkHComp):
        s1, t1 = a.left.ends
        s2, t2 = a.right.ends
        return sk_graft(s1, a.i, s2), sk_graft(t1, a.i, t2)
    raise TypeError(f"not a skeletal arrow: {a!r}")


def red3(chi, svec):
    """Replace the names in the rooted arrow chi by input positions."""
    return _red3(chi, svec)


def _red3(a, svec):
    if isinstance(a, RId):
        return SkId(red3_object(a.term, svec))
    if isinstance(a, (RBeta, RBetaInv)):
        i = induced_order(a.r1, svec).index(a.z) + 1
        j = induced_order(a.r2, svec).index(a.y) + 1
        fs = [red3_object(r, svec) for r in (a.r1, a.r2, a.r3)]
        return (SkBeta if isinstance(a, RBeta) else SkBetaInv)(*fs, i, j)
    if isinstance(a, RTheta):
        o = induced_order(a.r1, svec)
        fs = [red3_object(r, svec) for r in (a.r1, a.r2, a.r3)]
        return SkTheta(*fs, o.index(a.z) + 1, o.index(a.y) + 1)
    if isinstance(a, RVComp):
        return SkVComp(_red3(a.after, svec), _red3(a.before, svec))
    if isinstance(a, RHComp):
        i = induced_order(a.left.source, svec).index(a.z) + 1
        return SkHComp(_red3(a.left, svec), i, _red3(a.right, svec))
    raise TypeError(f"not a rooted arrow: {a!r}")


def dp_parallel(phi, psi) -> bool:
    return phi.ends == psi.ends


def show_sk(a) -> str:
    if isinstance(a, SkId):
        return f"1({a.obj})"
    if isinstance(a, (SkBeta, SkBetaInv)):
        name = "beta" if isinstance(a, SkBeta) else "betainv"
        return f"{name}<{a.i};{a.j}>({a.f}, {a.g}, {a.h})"
    if isinstance(a, SkTheta):
        return f"theta<{a.i};{a.k}>({a.f}, {a.g}, {a.h})"
    if isinstance(a, SkVComp):
        parts, stack = [], [a]
        while stack:
            b = stack.pop()
            if isinstance(b, SkVComp):
                stack += [b.after, b.before]
            else:
                parts.append(show_sk(b))
        return "(" + " ; ".join(parts) + ")"
    return f"({show_sk(a.left)} <{a.i}> {show_sk(a.right)})"
