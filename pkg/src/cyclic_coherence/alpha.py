"""Alpha-equivalence of symmetry-free object terms and its witnesses.

Two symmetry-free terms are equivalent when they have the same shape, the
same parameters at corresponding leaves, and every entry of every leaf
meets the same fate: either it is glued at the same composition node, on
the same side, or it stays free under the same name.
"""

from __future__ import annotations

from .bijections import Bijection
from .terms import (
    Comp,
    Eps1,
    Eps2,
    Eps2Inv,
    Eps4,
    HComp,
    Id,
    Obj,
    Param,
    TermTypeError,
    split_action,
    vcomp,
)


class AlphaError(ValueError):
    pass


def _require_symfree(W):
    if isinstance(W, Param):
        return
    if isinstance(W, Comp):
        _require_symfree(W.left)
        _require_symfree(W.right)
        return
    raise AlphaError(f"{W} is not symmetry-free")


def fates(W: Obj) -> dict:
    """Map (leaf index, base entry) to its fate.

    A fate is ``("glued", path, side)`` or ``("free", name)``.
    """
    _require_symfree(W)
    out = {}

    def walk(S, path, start):
        # returns (free map: leaf var -> (leaf index, base entry), next leaf index)
        if isinstance(S, Param):
            return {v: (start, S.base_of(v)) for v in S.type}, start + 1
        left, mid = walk(S.left, path + "0", start)
        right, end = walk(S.right, path + "1", mid)
        out[left.pop(S.x)] = ("glued", path, 0)
        out[right.pop(S.y)] = ("glued", path, 1)
        left.update(right)
        return left, end

    free, _ = walk(W, "", 0)
    for v, key in free.items():
        out[key] = ("free", v)
    return out


def shape(W: Obj):
    if isinstance(W, Param):
        return W.name
    return (shape(W.left), shape(W.right))


def alpha_eq(U: Obj, V: Obj) -> bool:
    try:
        return shape(U) == shape(V) and fates(U) == fates(V)
    except (AlphaError, TermTypeError):
        return False


def alpha_match(U: Obj, V: Obj):
    """Equivalence up to renaming free entries.

    Returns the map from free entries of U to those of V, or None.
    """
    try:
        if shape(U) != shape(V):
            return None
        fu, fv = fates(U), fates(V)
    except (AlphaError, TermTypeError):
        return None
    if fu.keys() != fv.keys():
        return None
    m = {}
    for k, a in fu.items():
        b = fv[k]
        if a[0] != b[0]:
            return None
        if a[0] == "glued":
            if a != b:
                return None
        else:
            m[a[1]] = b[1]
    return m


def substitute_param(W: Obj, name: str, tau: Bijection) -> Obj:
    """Replace leaf ``name`` by its decoration with ``tau``.

    ``tau`` renames one entry of the leaf; the composition node gluing that
    entry (if any) is reindexed to the new name.
    """
    _require_symfree(W)
    hits = [p for p in _leaf_paths(W) if p[1].name == name]
    if not hits:
        raise AlphaError(f"parameter {name} does not occur in {W}")
    if len(hits) > 1:
        raise AlphaError(f"parameter {name} occurs more than once in {W}")
    path, leaf = hits[0]
    moved = [(new, old) for new, old in tau.pairs if new != old]
    if tau.cod != leaf.type or len(moved) > 1:
        raise AlphaError(f"{tau} does not rename a single entry of {leaf}")
    if not moved:
        return W
    new, old = moved[0]

    def rebuild(S, p):
        # returns the rebuilt subterm and whether the renamed entry is still free
        if isinstance(S, Param):
            return S.decorate(tau), True
        if p[0] == "0":
            L, free = rebuild(S.left, p[1:])
            if free and S.x == old:
                return Comp(L, new, S.y, S.right), False
            return Comp(L, S.x, S.y, S.right), free
        R, free = rebuild(S.right, p[1:])
        if free and S.y == old:
            return Comp(S.left, S.x, new, R), False
        return Comp(S.left, S.x, S.y, R), free

    out, _ = rebuild(W, path)
    try:
        out.type
    except TermTypeError as e:
        raise AlphaError(f"renaming {old} to {new} clashes: {e}") from None
    return out


def _leaf_paths(W, path=""):
    if isinstance(W, Param):
        return [(path, W)]
    return _leaf_paths(W.left, path + "0") + _leaf_paths(W.right, path + "1")


def witness(U: Obj, V: Obj):
    """An arrow U -> V made of eps-generators, for U equivalent to V."""
    if not alpha_eq(U, V):
        raise AlphaError(f"{U} and {V} are not alpha-equivalent")
    return witness_act(U, None, V)


def witness_act(U: Obj, kappa, V: Obj):
    """An arrow from ``U^kappa`` (or U when kappa is None) to V.

    U and V are symmetry-free and V is equivalent to a normal form of
    ``U^kappa``.
    """
    if isinstance(U, Param):
        target = U if kappa is None else U.decorate(kappa)
        if target != V:
            raise AlphaError(f"{target} does not match {V}")
        if kappa is None:
            return Id(U)
        if kappa.is_identity():
            return Eps2(U)
        return Eps1(U, kappa)
    if not isinstance(V, Comp):
        raise AlphaError(f"{V} does not have the shape of {U}")
    if kappa is None and (U.x, U.y) == (V.x, V.y):
        L = witness_act(U.left, None, V.left)
        R = witness_act(U.right, None, V.right)
        if isinstance(L, Id) and isinstance(R, Id):
            return Id(U)
        return HComp(L, U.x, U.y, R)
    steps = []
    if kappa is None:
        kappa = Bijection.identity(U.type)
        steps.append(Eps2Inv(U))
    try:
        s1, s2 = split_action(kappa, U.left.type, U.x, U.right.type, U.y, V.x, V.y)
    except (TermTypeError, ValueError) as e:
        raise AlphaError(str(e)) from None
    steps.append(Eps4(U.left, U.right, kappa, U.x, U.y, V.x, V.y))
    steps.append(
        HComp(witness_act(U.left, s1, V.left), V.x, V.y, witness_act(U.right, s2, V.right))
    )
    return vcomp(*steps)
