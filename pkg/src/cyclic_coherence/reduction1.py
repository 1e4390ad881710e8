"""Pushing actions down to the leaves.

``nf_object`` rewrites an object term into a symmetry-free term whose
leaves are decorated parameters.  ``nf_arrow`` does the same to arrow
terms, producing a loose arrow (vertical composites only agree up to
alpha-equivalence); ``transfer`` re-targets such an arrow onto a chosen
source, and ``red1`` combines the two.
"""

from __future__ import annotations

from functools import lru_cache

from .alpha import alpha_eq
from .bijections import Bijection, compose, fresh_name
from .terms import (
    GENERATORS,
    AAct,
    Act,
    Arrow,
    Beta,
    BetaInv,
    Comp,
    Eps1,
    Eps2,
    Eps3,
    Eps4,
    Gamma,
    HComp,
    Id,
    Iota,
    Nu,
    Obj,
    Param,
    TermTypeError,
    Unit,
    VComp,
    arrow_ends,
    obj_vars,
    split_action,
    vcomp,
)


class ReductionError(ValueError):
    pass


class FreshPolicy:
    """Hands out ``base#k`` names avoiding everything seen so far."""

    def __init__(self, avoid=()):
        self.avoid = set(avoid)

    def __call__(self, base: str) -> str:
        name = fresh_name(base, self.avoid)
        self.avoid.add(name)
        return name

    @classmethod
    def for_term(cls, *terms) -> "FreshPolicy":
        names = set()
        for t in terms:
            names |= all_vars(t)
        return cls(names)


def all_vars(t) -> set:
    if isinstance(t, Obj):
        return obj_vars(t)
    out = set()
    for f in t.__dataclass_fields__:
        v = getattr(t, f)
        if isinstance(v, (Obj, Arrow)):
            out |= all_vars(v)
        elif isinstance(v, Bijection):
            out |= v.dom | v.cod
        elif isinstance(v, str):
            out.add(v)
    return out


# ---------------------------------------------------------------- objects


def normalize(W: Obj, kappa=None, fresh=None):
    """Normal form of ``W^kappa`` (or W) and the eps-arrow reaching it."""
    if fresh is None:
        fresh = FreshPolicy.for_term(W)
    if isinstance(W, Unit):
        raise ReductionError("units must be eliminated before normalizing")
    if isinstance(W, Param):
        if kappa is None:
            return W, Id(W)
        if kappa.is_identity():
            return W, Eps2(W)
        return W.decorate(kappa), Eps1(W, kappa)
    if isinstance(W, Comp):
        if kappa is None:
            n1, e1 = normalize(W.left, None, fresh)
            n2, e2 = normalize(W.right, None, fresh)
            nf = Comp(n1, W.x, W.y, n2)
            if isinstance(e1, Id) and isinstance(e2, Id):
                return nf, Id(W)
            return nf, HComp(e1, W.x, W.y, e2)
        x2, y2 = fresh(W.x), fresh(W.y)
        s1, s2 = split_action(kappa, W.left.type, W.x, W.right.type, W.y, x2, y2)
        n1, e1 = normalize(W.left, s1, fresh)
        n2, e2 = normalize(W.right, s2, fresh)
        step = Eps4(W.left, W.right, kappa, W.x, W.y, x2, y2)
        return Comp(n1, x2, y2, n2), vcomp(step, HComp(e1, x2, y2, e2))
    # an action
    if kappa is None:
        return normalize(W.body, W.sigma, fresh)
    nf, e = normalize(W.body, compose(W.sigma, kappa), fresh)
    return nf, vcomp(Eps3(W.body, W.sigma, kappa), e)


@lru_cache(maxsize=None)
def _memo(W: Obj):
    return normalize(W, None, FreshPolicy.for_term(W))


def nf_object(W: Obj, fresh=None) -> Obj:
    """The chosen normal form of W (memoized when no policy is given)."""
    if fresh is None:
        return _memo(W)[0]
    return normalize(W, None, fresh)[0]


def eps_to_nf(W: Obj) -> Arrow:
    """The eps-arrow from W to ``nf_object(W)``."""
    return _memo(W)[1]


def nf_all_objects(W: Obj, palette=("p", "q")) -> set:
    """Every normal form reachable when fresh names come from ``palette``
    plus the interface names of the node being rewritten."""
    palette = tuple(palette)

    def go(S, kappa):
        if isinstance(S, Unit):
            raise ReductionError("units must be eliminated before normalizing")
        out = set()
        if kappa is not None and kappa.is_identity():
            out |= go(S, None)
        if isinstance(S, Param):
            out.add(S if kappa is None else S.decorate(kappa))
            return out
        if isinstance(S, Act):
            k = S.sigma if kappa is None else compose(S.sigma, kappa)
            return out | go(S.body, k)
        if kappa is None:
            for a in go(S.left, None):
                for b in go(S.right, None):
                    out.add(Comp(a, S.x, S.y, b))
            return out
        names = sorted(set(palette) | {S.x, S.y})
        for x2 in names:
            for y2 in names:
                if x2 == y2:
                    continue
                try:
                    s1, s2 = split_action(kappa, S.left.type, S.x, S.right.type, S.y, x2, y2)
                    for a in go(S.left, s1):
                        for b in go(S.right, s2):
                            c = Comp(a, x2, y2, b)
                            c.type
                            out.add(c)
                except (TermTypeError, ValueError):
                    continue
        return out

    return go(W, None)


# ---------------------------------------------------------------- arrows


def nf_arrow(phi: Arrow, kappa=None, fresh=None) -> Arrow:
    """Push every action in phi down to the leaves; eps-generators vanish."""
    if fresh is None:
        fresh = FreshPolicy.for_term(phi)
    if isinstance(phi, Id):
        return Id(normalize(phi.obj, kappa, fresh)[0])
    if isinstance(phi, (Iota, Nu)):
        raise ReductionError("units must be eliminated before normalizing")
    if isinstance(phi, (Beta, BetaInv)):
        ws = [phi.w1, phi.w2, phi.w3]
        if kappa is None:
            n = [normalize(w, None, fresh)[0] for w in ws]
            return type(phi)(*n, phi.x, phi.xb, phi.y, phi.yb)
        x2, xb2, y2, yb2 = fresh(phi.x), fresh(phi.xb), fresh(phi.y), fresh(phi.yb)
        t1, t2, t3 = (w.type for w in ws)
        if isinstance(phi, Beta):
            inner = Comp(phi.w1, phi.x, phi.xb, phi.w2).type
            s12, s3 = split_action(kappa, inner, phi.y, t3, phi.yb, y2, yb2)
            s1, s2 = split_action(s12, t1, phi.x, t2, phi.xb, x2, xb2)
        else:
            inner = Comp(phi.w2, phi.y, phi.yb, phi.w3).type
            s1, s23 = split_action(kappa, t1, phi.x, inner, phi.xb, x2, xb2)
            s2, s3 = split_action(s23, t2, phi.y, t3, phi.yb, y2, yb2)
        n = [normalize(w, s, fresh)[0] for w, s in zip(ws, (s1, s2, s3))]
        return type(phi)(*n, x2, xb2, y2, yb2)
    if isinstance(phi, Gamma):
        if kappa is None:
            n1 = normalize(phi.w1, None, fresh)[0]
            n2 = normalize(phi.w2, None, fresh)[0]
            return Gamma(n1, n2, phi.x, phi.y)
        x2, y2 = fresh(phi.x), fresh(phi.y)
        s1, s2 = split_action(kappa, phi.w1.type, phi.x, phi.w2.type, phi.y, x2, y2)
        n1 = normalize(phi.w1, s1, fresh)[0]
        n2 = normalize(phi.w2, s2, fresh)[0]
        return Gamma(n1, n2, x2, y2)
    if isinstance(phi, GENERATORS):
        # the eps-generators
        return Id(normalize(phi.source, kappa, fresh)[0])
    if isinstance(phi, VComp):
        return VComp(nf_arrow(phi.after, kappa, fresh), nf_arrow(phi.before, kappa, fresh))
    if isinstance(phi, HComp):
        if kappa is None:
            return HComp(nf_arrow(phi.left, None, fresh), phi.x, phi.y, nf_arrow(phi.right, None, fresh))
        x2, y2 = fresh(phi.x), fresh(phi.y)
        X, Y = phi.left.source.type, phi.right.source.type
        s1, s2 = split_action(kappa, X, phi.x, Y, phi.y, x2, y2)
        return HComp(nf_arrow(phi.left, s1, fresh), x2, y2, nf_arrow(phi.right, s2, fresh))
    if isinstance(phi, AAct):
        k = phi.sigma if kappa is None else compose(phi.sigma, kappa)
        return nf_arrow(phi.arrow, k, fresh)
    raise TypeError(f"not an arrow term: {phi!r}")


def loose_ends(phi: Arrow):
    """(source, target) where vertical composites only need equivalent middles."""
    return arrow_ends(phi, equiv=alpha_eq)


def transfer(phi: Arrow, U: Obj) -> Arrow:
    """Rebuild the loose arrow phi as a strict arrow starting at U."""
    src, _ = loose_ends(phi)
    if not alpha_eq(U, src):
        raise ReductionError(f"{U} is not alpha-equivalent to the source {src}")
    return _transfer(phi, U)


def _transfer(phi, U):
    if isinstance(phi, Id):
        return Id(U)
    if isinstance(phi, Beta):
        inner = _comp(U.left)
        return Beta(inner.left, inner.right, U.right, inner.x, inner.y, U.x, U.y)
    if isinstance(phi, BetaInv):
        inner = _comp(_comp(U).right)
        return BetaInv(U.left, inner.left, inner.right, U.x, U.y, inner.x, inner.y)
    if isinstance(phi, Gamma):
        U = _comp(U)
        return Gamma(U.left, U.right, U.x, U.y)
    if isinstance(phi, VComp):
        first = _transfer(phi.before, U)
        return VComp(_transfer(phi.after, first.target), first)
    if isinstance(phi, HComp):
        U = _comp(U)
        return HComp(_transfer(phi.left, U.left), U.x, U.y, _transfer(phi.right, U.right))
    raise ReductionError(f"cannot transfer {type(phi).__name__}")


def _comp(U):
    if not isinstance(U, Comp):
        raise ReductionError(f"{U} is not a composition")
    return U


def red1(phi: Arrow) -> Arrow:
    """Strict symmetry-free arrow from ``red1_object(source)`` to
    ``red1_object(target)``."""
    return canonical_glue_arrow(_transfer(nf_arrow(phi), nf_object(phi.source)))


def red1_object(W: Obj) -> Obj:
    """The normal form of W with glued entries given canonical names, so
    equivalent normal forms become equal."""
    return canonical_glue(nf_object(W))


# ---------------------------------------------------------------- canonical names


def _leaf_of(W, h):
    # the entry that is free in W: glued names may recur deeper down
    while isinstance(W, Comp):
        W = W.left if h != W.x and h in W.left.type else W.right
    if not isinstance(W, Param) or h not in W.type:
        raise ReductionError(f"{h} is not an entry of a leaf")
    return W


def glue_names(W: Obj):
    """Function (corolla, entry) -> canonical entry name for the symmetry-free W.

    Free entries keep their names.  A glued entry is renamed after its base
    entry on the bare corolla, suffixed only when that name is taken.
    """
    leaves, free = {}, set()

    def walk(S):
        if isinstance(S, Param):
            leaves[S.name] = S
            return {h: S.name for h in S.type}
        if not isinstance(S, Comp):
            raise ReductionError(f"{S} is not symmetry-free")
        left, right = walk(S.left), walk(S.right)
        del left[S.x], right[S.y]
        left.update(right)
        return left

    top = walk(W)
    free = {(c, h) for h, c in top.items()}
    used = set(top)
    table = {}
    glued = []
    for c, leaf in leaves.items():
        for h in leaf.type:
            if (c, h) not in free:
                glued.append((c, leaf.base_of(h), h))
    for c, b, h in sorted(glued):
        name = b if b not in used else fresh_name(b, used)
        used.add(name)
        table[c, h] = name

    def f(c, h):
        return table.get((c, h), h)

    return f


def rename_glue(W: Obj, f) -> Obj:
    if isinstance(W, Param):
        pairs = W.deco.pairs if W.deco is not None else tuple((h, h) for h in sorted(W.fv))
        return Param(W.name, W.fv, Bijection(tuple((f(W.name, h), b) for h, b in pairs)))
    return Comp(
        rename_glue(W.left, f),
        f(_leaf_of(W.left, W.x).name, W.x),
        f(_leaf_of(W.right, W.y).name, W.y),
        rename_glue(W.right, f),
    )


def canonical_glue(W: Obj) -> Obj:
    return rename_glue(W, glue_names(W))


def canonical_glue_arrow(phi: Arrow) -> Arrow:
    f = glue_names(phi.source)

    def lab(W, h):
        return f(_leaf_of(W, h).name, h)

    def go(a):
        if isinstance(a, Id):
            return Id(rename_glue(a.obj, f))
        if isinstance(a, (Beta, BetaInv)):
            ws = [rename_glue(w, f) for w in (a.w1, a.w2, a.w3)]
            return type(a)(*ws, lab(a.w1, a.x), lab(a.w2, a.xb), lab(a.w2, a.y), lab(a.w3, a.yb))
        if isinstance(a, Gamma):
            return Gamma(rename_glue(a.w1, f), rename_glue(a.w2, f), lab(a.w1, a.x), lab(a.w2, a.y))
        if isinstance(a, VComp):
            return VComp(go(a.after), go(a.before))
        if isinstance(a, HComp):
            return HComp(go(a.left), lab(a.left.source, a.x), lab(a.right.source, a.y), go(a.right))
        raise ReductionError(f"{type(a).__name__} is not a symmetry-free constructor")

    return go(phi)


def relaxed_witnesses(phi: Arrow):
    """The two eps-arrows framing ``red1(phi)`` in relaxed mode:
    source(phi) -> source(red1 phi) and target(phi) -> target(red1 phi)."""
    r = red1(phi)
    from .alpha import witness

    tgt = vcomp(eps_to_nf(phi.target), witness(nf_object(phi.target), r.target))
    return eps_to_nf(phi.source), tgt
