"""Object terms, arrow terms and their typing rules.

Object terms are parameters (possibly decorated by a renaming), binary
compositions ``(W1 x<>y W2)``, actions ``W^[sigma]`` and, in unit mode,
units ``id{x,y}``.  Arrow terms are the canonical morphisms between them.

Terms are immutable; the type of a term is computed on first access and
raises :class:`TermTypeError` when a typing side condition fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from ._cache import cached_property

from .bijections import (
    Bijection,
    BijectionError,
    check_var,
    compose,
    disjoint_union,
    fmt_set,
    rename,
    restrict_core,
)


class TermTypeError(ValueError):
    pass


# ---------------------------------------------------------------- objects


class Obj:
    __slots__ = ()

    def __str__(self):
        return show_obj(self)


@dataclass(frozen=True, eq=True)
class Param(Obj):
    """A parameter ``name`` with base free variables ``fv``.

    ``deco`` is an optional renaming into ``fv``; a decorated leaf behaves
    like the action of ``deco`` on the bare parameter.
    """

    name: str
    fv: frozenset
    deco: Bijection | None = None

    def __post_init__(self):
        object.__setattr__(self, "fv", frozenset(self.fv))
        if self.deco is not None:
            if self.deco.cod != self.fv:
                raise TermTypeError(
                    f"decoration {self.deco} of {self.name} does not land in {fmt_set(self.fv)}"
                )
            if self.deco.is_identity():
                object.__setattr__(self, "deco", None)

    @property
    def type(self):
        return self.deco.dom if self.deco is not None else self.fv

    def bare(self) -> "Param":
        return Param(self.name, self.fv)

    def decorate(self, sigma: Bijection) -> "Param":
        if sigma.cod != self.type:
            raise TermTypeError(f"cannot decorate {self} by {sigma}")
        new = sigma if self.deco is None else compose(self.deco, sigma)
        return Param(self.name, self.fv, new)

    def base_of(self, v: str) -> str:
        """The base variable of ``a`` that the leaf variable ``v`` stands for."""
        return self.deco(v) if self.deco is not None else v


@dataclass(frozen=True)
class Comp(Obj):
    left: Obj
    x: str
    y: str
    right: Obj

    @cached_property
    def type(self):
        X, Y = self.left.type, self.right.type
        if self.x not in X:
            raise TermTypeError(f"{self.x} is not a free variable of {self.left}")
        if self.y not in Y:
            raise TermTypeError(f"{self.y} is not a free variable of {self.right}")
        clash = (X - {self.x}) & (Y - {self.y})
        if clash:
            raise TermTypeError(f"entry clash on {fmt_set(clash)} in {self}")
        return (X - {self.x}) | (Y - {self.y})


@dataclass(frozen=True)
class Act(Obj):
    body: Obj
    sigma: Bijection

    def __post_init__(self):
        # a unit does not see which of its two entries goes where
        if isinstance(self.body, Unit) and self.sigma.cod == {self.body.x, self.body.y}:
            d = sorted(self.sigma.dom)
            object.__setattr__(self, "sigma", Bijection(tuple(zip(d, (self.body.x, self.body.y)))))

    @cached_property
    def type(self):
        if self.sigma.cod != self.body.type:
            raise TermTypeError(
                f"action {self.sigma} does not match the type {fmt_set(self.body.type)}"
            )
        return self.sigma.dom


@dataclass(frozen=True)
class Unit(Obj):
    x: str
    y: str

    def __post_init__(self):
        a, b = sorted((self.x, self.y))
        object.__setattr__(self, "x", a)
        object.__setattr__(self, "y", b)

    @property
    def type(self):
        if self.x == self.y:
            raise TermTypeError(f"unit with repeated entry {self.x}")
        return frozenset((self.x, self.y))


def obj_type(W: Obj) -> frozenset:
    return W.type


def leaves(W: Obj):
    """Parameters and units of W, left to right."""
    if isinstance(W, (Param, Unit)):
        return [W]
    if isinstance(W, Comp):
        return leaves(W.left) + leaves(W.right)
    return leaves(W.body)


def obj_vars(W: Obj) -> set:
    """Every variable name occurring anywhere in W."""
    if isinstance(W, Param):
        out = set(W.fv)
        if W.deco is not None:
            out |= W.deco.dom
        return out
    if isinstance(W, Unit):
        return {W.x, W.y}
    if isinstance(W, Comp):
        return obj_vars(W.left) | obj_vars(W.right) | {W.x, W.y}
    return obj_vars(W.body) | W.sigma.dom | W.sigma.cod


def is_symmetry_free(W: Obj) -> bool:
    if isinstance(W, (Param, Unit)):
        return True
    if isinstance(W, Comp):
        return is_symmetry_free(W.left) and is_symmetry_free(W.right)
    return False


def has_units(W: Obj) -> bool:
    if isinstance(W, Unit):
        return True
    if isinstance(W, Param):
        return False
    if isinstance(W, Comp):
        return has_units(W.left) or has_units(W.right)
    return has_units(W.body)


def split_action(sigma: Bijection, X, x: str, Y, y: str, x2: str, y2: str):
    """Split sigma over the type of ``(W1 x<>y W2)`` into the two actions
    carried by the factors once the interface is renamed to ``x2``/``y2``."""
    X, Y = frozenset(X), frozenset(Y)
    s1 = restrict_core(sigma, X - {x})
    s2 = restrict_core(sigma, Y - {y})
    if x2 in s1.dom:
        raise TermTypeError(f"{x2} already names an entry of the left factor")
    if y2 in s2.dom:
        raise TermTypeError(f"{y2} already names an entry of the right factor")
    return (
        disjoint_union(s1, Bijection(((x2, x),))),
        disjoint_union(s2, Bijection(((y2, y),))),
    )


# ---------------------------------------------------------------- arrows


class Arrow:
    __slots__ = ()

    def __str__(self):
        return show_arrow(self)

    @cached_property
    def ends(self):
        return arrow_ends(self)

    @property
    def source(self):
        return self.ends[0]

    @property
    def target(self):
        return self.ends[1]


@dataclass(frozen=True)
class Id(Arrow):
    obj: Obj


@dataclass(frozen=True)
class Beta(Arrow):
    """((W1 x<>xb W2) y<>yb W3) -> (W1 x<>xb (W2 y<>yb W3))"""

    w1: Obj
    w2: Obj
    w3: Obj
    x: str
    xb: str
    y: str
    yb: str


@dataclass(frozen=True)
class BetaInv(Arrow):
    w1: Obj
    w2: Obj
    w3: Obj
    x: str
    xb: str
    y: str
    yb: str


@dataclass(frozen=True)
class Gamma(Arrow):
    """(W1 x<>y W2) -> (W2 y<>x W1)"""

    w1: Obj
    w2: Obj
    x: str
    y: str


@dataclass(frozen=True)
class Eps1(Arrow):
    param: Param
    sigma: Bijection


@dataclass(frozen=True)
class Eps1Inv(Arrow):
    param: Param
    sigma: Bijection


@dataclass(frozen=True)
class Eps2(Arrow):
    obj: Obj


@dataclass(frozen=True)
class Eps2Inv(Arrow):
    obj: Obj


@dataclass(frozen=True)
class Eps3(Arrow):
    obj: Obj
    sigma: Bijection
    tau: Bijection


@dataclass(frozen=True)
class Eps3Inv(Arrow):
    obj: Obj
    sigma: Bijection
    tau: Bijection


@dataclass(frozen=True)
class Eps4(Arrow):
    """(W1 x<>y W2)^sigma -> (W1^s1 x2<>y2 W2^s2)"""

    w1: Obj
    w2: Obj
    sigma: Bijection
    x: str
    y: str
    x2: str
    y2: str


@dataclass(frozen=True)
class Eps4Inv(Arrow):
    w1: Obj
    w2: Obj
    sigma: Bijection
    x: str
    y: str
    x2: str
    y2: str


@dataclass(frozen=True)
class Iota(Arrow):
    """(W x<>y id{y,z}) -> W^rename(x to z)"""

    obj: Obj
    x: str
    y: str
    z: str


@dataclass(frozen=True)
class Nu(Arrow):
    """id{x,y}^[u->x, v->y] -> id{u,v}; both pairs are unordered."""

    x: str
    y: str
    u: str
    v: str

    def __post_init__(self):
        a, b = sorted((self.x, self.y))
        c, d = sorted((self.u, self.v))
        object.__setattr__(self, "x", a)
        object.__setattr__(self, "y", b)
        object.__setattr__(self, "u", c)
        object.__setattr__(self, "v", d)


@dataclass(frozen=True)
class VComp(Arrow):
    after: Arrow
    before: Arrow


@dataclass(frozen=True)
class HComp(Arrow):
    left: Arrow
    x: str
    y: str
    right: Arrow


@dataclass(frozen=True)
class AAct(Arrow):
    arrow: Arrow
    sigma: Bijection


GENERATORS = (Beta, BetaInv, Gamma, Eps1, Eps1Inv, Eps2, Eps2Inv, Eps3, Eps3Inv, Eps4, Eps4Inv, Iota, Nu)


def _check(W: Obj) -> Obj:
    try:
        W.type
    except BijectionError as e:
        raise TermTypeError(str(e)) from None
    return W


def generator_ends(g: Arrow):
    if isinstance(g, Id):
        return _check(g.obj), g.obj
    if isinstance(g, (Beta, BetaInv)):
        a = Comp(Comp(g.w1, g.x, g.xb, g.w2), g.y, g.yb, g.w3)
        b = Comp(g.w1, g.x, g.xb, Comp(g.w2, g.y, g.yb, g.w3))
        _check(a), _check(b)
        return (a, b) if isinstance(g, Beta) else (b, a)
    if isinstance(g, Gamma):
        return _check(Comp(g.w1, g.x, g.y, g.w2)), _check(Comp(g.w2, g.y, g.x, g.w1))
    if isinstance(g, (Eps1, Eps1Inv)):
        if not isinstance(g.param, Param):
            raise TermTypeError("eps1 applies to parameters only")
        a = _check(Act(g.param, g.sigma))
        b = g.param.decorate(g.sigma)
        return (a, b) if isinstance(g, Eps1) else (b, a)
    if isinstance(g, (Eps2, Eps2Inv)):
        a = _check(Act(g.obj, Bijection.identity(g.obj.type)))
        return (a, g.obj) if isinstance(g, Eps2) else (g.obj, a)
    if isinstance(g, (Eps3, Eps3Inv)):
        a = _check(Act(Act(g.obj, g.sigma), g.tau))
        try:
            b = _check(Act(g.obj, compose(g.sigma, g.tau)))
        except BijectionError as e:
            raise TermTypeError(str(e)) from None
        return (a, b) if isinstance(g, Eps3) else (b, a)
    if isinstance(g, (Eps4, Eps4Inv)):
        a = _check(Act(Comp(g.w1, g.x, g.y, g.w2), g.sigma))
        try:
            s1, s2 = split_action(g.sigma, g.w1.type, g.x, g.w2.type, g.y, g.x2, g.y2)
        except BijectionError as e:
            raise TermTypeError(str(e)) from None
        b = _check(Comp(Act(g.w1, s1), g.x2, g.y2, Act(g.w2, s2)))
        return (a, b) if isinstance(g, Eps4) else (b, a)
    if isinstance(g, Iota):
        a = _check(Comp(g.obj, g.x, g.y, Unit(g.y, g.z)))
        b = _check(Act(g.obj, rename(g.obj.type, g.x, g.z)))
        return a, b
    if isinstance(g, Nu):
        if len({g.x, g.y}) != 2 or len({g.u, g.v}) != 2:
            raise TermTypeError("nu needs two distinct entries on each side")
        a = _check(Act(Unit(g.x, g.y), Bijection(((g.u, g.x), (g.v, g.y)))))
        return a, _check(Unit(g.u, g.v))
    raise TypeError(f"not a generator: {g!r}")


def arrow_ends(phi: Arrow, equiv=None):
    """(source, target) of phi.

    Vertical composition needs the middle objects to be literally equal,
    unless ``equiv`` is given, in which case ``equiv(a, b)`` decides.
    """
    if isinstance(phi, VComp):
        s1, t1 = arrow_ends(phi.before, equiv) if equiv else phi.before.ends
        s2, t2 = arrow_ends(phi.after, equiv) if equiv else phi.after.ends
        ok = t1 == s2 or (equiv is not None and equiv(t1, s2))
        if not ok:
            raise TermTypeError(f"cannot compose: {t1} is not {s2}")
        return s1, t2
    if isinstance(phi, HComp):
        s1, t1 = arrow_ends(phi.left, equiv) if equiv else phi.left.ends
        s2, t2 = arrow_ends(phi.right, equiv) if equiv else phi.right.ends
        return _check(Comp(s1, phi.x, phi.y, s2)), _check(Comp(t1, phi.x, phi.y, t2))
    if isinstance(phi, AAct):
        s, t = arrow_ends(phi.arrow, equiv) if equiv else phi.arrow.ends
        return _check(Act(s, phi.sigma)), _check(Act(t, phi.sigma))
    return generator_ends(phi)


def arrow_type(phi: Arrow) -> frozenset:
    return phi.source.type


def vcomp(*arrows) -> Arrow:
    """Compose arrows listed in application order, dropping identities."""
    live = [a for a in arrows if not isinstance(a, Id)]
    if not live:
        return arrows[0]
    out = live[0]
    for a in live[1:]:
        out = VComp(a, out)
    return out


def flatten_vcomp(phi: Arrow) -> list:
    if isinstance(phi, VComp):
        return flatten_vcomp(phi.before) + flatten_vcomp(phi.after)
    return [phi]


def invert(phi: Arrow) -> Arrow:
    if isinstance(phi, Id):
        return phi
    if isinstance(phi, Beta):
        return BetaInv(phi.w1, phi.w2, phi.w3, phi.x, phi.xb, phi.y, phi.yb)
    if isinstance(phi, BetaInv):
        return Beta(phi.w1, phi.w2, phi.w3, phi.x, phi.xb, phi.y, phi.yb)
    if isinstance(phi, Gamma):
        return Gamma(phi.w2, phi.w1, phi.y, phi.x)
    pairs = {Eps1: Eps1Inv, Eps2: Eps2Inv, Eps3: Eps3Inv, Eps4: Eps4Inv}
    for a, b in pairs.items():
        if type(phi) is a:
            return b(*_fields(phi))
        if type(phi) is b:
            return a(*_fields(phi))
    if isinstance(phi, VComp):
        return VComp(invert(phi.before), invert(phi.after))
    if isinstance(phi, HComp):
        return HComp(invert(phi.left), phi.x, phi.y, invert(phi.right))
    if isinstance(phi, AAct):
        return AAct(invert(phi.arrow), phi.sigma)
    raise TermTypeError(f"{type(phi).__name__} has no inverse constructor")


def _fields(phi):
    return tuple(getattr(phi, f) for f in phi.__dataclass_fields__)


def count_generators(phi: Arrow, kinds=GENERATORS) -> int:
    if isinstance(phi, Id):
        return 0
    if isinstance(phi, VComp):
        return count_generators(phi.after, kinds) + count_generators(phi.before, kinds)
    if isinstance(phi, HComp):
        return count_generators(phi.left, kinds) + count_generators(phi.right, kinds)
    if isinstance(phi, AAct):
        return count_generators(phi.arrow, kinds)
    return 1 if isinstance(phi, kinds) else 0


def generator_sign(phi: Arrow, gamma_sign: int = -1) -> int:
    """Product of generator signs: gamma carries ``gamma_sign``, all else +1."""
    phi.ends
    return gamma_sign ** count_generators(phi, (Gamma,))


# ---------------------------------------------------------------- signatures


@dataclass
class Signature:
    params: dict = field(default_factory=dict)
    units: bool = False
    constant_free: bool = True

    def add(self, name: str, fv) -> None:
        fv = frozenset(fv)
        if name == "id":
            raise TermTypeError("'id' is reserved for units")
        old = self.params.get(name)
        if old is not None and old != fv:
            raise TermTypeError(
                f"parameter {name} used with entries {fmt_set(old)} and {fmt_set(fv)}"
            )
        self.params[name] = fv


def infer_signature(*terms, units: bool | None = None, constant_free: bool = True) -> Signature:
    sig = Signature(constant_free=constant_free)
    found_units = False
    for t in terms:
        for leaf in _all_leaves(t):
            if isinstance(leaf, Unit):
                found_units = True
            else:
                sig.add(leaf.name, leaf.fv)
    sig.units = found_units if units is None else units
    return sig


def _all_leaves(t):
    if isinstance(t, Obj):
        yield from leaves(t)
        return
    if isinstance(t, Nu):
        yield Unit(t.x, t.y)
        return
    if isinstance(t, Iota):
        yield Unit(t.y, t.z)
    for f in t.__dataclass_fields__:
        v = getattr(t, f)
        if isinstance(v, (Obj, Arrow)):
            yield from _all_leaves(v)


def typecheck_object(W: Obj, sig: Signature) -> frozenset:
    for leaf in leaves(W):
        if isinstance(leaf, Unit):
            if not sig.units:
                raise TermTypeError("units are not allowed without unit mode")
            continue
        if leaf.name not in sig.params:
            raise TermTypeError(f"unknown parameter {leaf.name}")
        if sig.params[leaf.name] != leaf.fv:
            raise TermTypeError(f"parameter {leaf.name} has entries {fmt_set(sig.params[leaf.name])}")
        if sig.constant_free and len(leaf.fv) < 2:
            raise TermTypeError(f"parameter {leaf.name} has fewer than two entries")
    return _check(W).type


def typecheck_arrow(phi: Arrow, sig: Signature):
    if not sig.units:
        for leaf in _all_leaves(phi):
            if isinstance(leaf, Unit):
                raise TermTypeError("units are not allowed without unit mode")
    try:
        s, t = phi.ends
    except BijectionError as e:
        raise TermTypeError(str(e)) from None
    typecheck_object(s, sig)
    typecheck_object(t, sig)
    if s.type != t.type:
        raise TermTypeError("source and target have different types")
    return s, t


# ---------------------------------------------------------------- printing


def show_obj(W: Obj) -> str:
    if isinstance(W, Param):
        if W.deco is None:
            return W.name + fmt_set(W.fv)
        return W.name + str(W.deco)
    if isinstance(W, Unit):
        return f"id{{{W.x},{W.y}}}"
    if isinstance(W, Comp):
        return f"({show_obj(W.left)} {W.x}<>{W.y} {show_obj(W.right)})"
    return f"{show_obj(W.body)}^{W.sigma}"


def _args(*objs) -> str:
    return "(" + ", ".join(show_obj(o) for o in objs) + ")"


def show_arrow(phi: Arrow) -> str:
    if isinstance(phi, Id):
        return f"1({show_obj(phi.obj)})"
    if isinstance(phi, (Beta, BetaInv)):
        name = "beta" if isinstance(phi, Beta) else "betainv"
        return f"{name}<{phi.x},{phi.xb};{phi.y},{phi.yb}>" + _args(phi.w1, phi.w2, phi.w3)
    if isinstance(phi, Gamma):
        return f"gamma<{phi.x},{phi.y}>" + _args(phi.w1, phi.w2)
    if isinstance(phi, (Eps1, Eps1Inv)):
        name = "eps1" if isinstance(phi, Eps1) else "eps1inv"
        return f"{name}<{phi.sigma}>" + _args(phi.param)
    if isinstance(phi, (Eps2, Eps2Inv)):
        name = "eps2" if isinstance(phi, Eps2) else "eps2inv"
        return name + _args(phi.obj)
    if isinstance(phi, (Eps3, Eps3Inv)):
        name = "eps3" if isinstance(phi, Eps3) else "eps3inv"
        return f"{name}<{phi.sigma},{phi.tau}>" + _args(phi.obj)
    if isinstance(phi, (Eps4, Eps4Inv)):
        name = "eps4" if isinstance(phi, Eps4) else "eps4inv"
        return f"{name}<{phi.x},{phi.y};{phi.x2},{phi.y2};{phi.sigma}>" + _args(phi.w1, phi.w2)
    if isinstance(phi, Iota):
        return f"iota<{phi.x},{phi.y},{phi.z}>" + _args(phi.obj)
    if isinstance(phi, Nu):
        return f"nu<{phi.x},{phi.y};{phi.u},{phi.v}>"
    if isinstance(phi, VComp):
        return "(" + " ; ".join(show_arrow(a) for a in flatten_vcomp(phi)) + ")"
    if isinstance(phi, HComp):
        return f"({show_arrow(phi.left)} {phi.x}<>{phi.y} {show_arrow(phi.right)})"
    if isinstance(phi, AAct):
        return f"{show_arrow(phi.arrow)}^{phi.sigma}"
    raise TypeError(f"not an arrow term: {phi!r}")
