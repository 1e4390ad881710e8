"""Unit elimination.

Objects: a unit glued to anything is absorbed as a renaming of the other
side; a term made only of units collapses to one unit.

Arrows are handled by the case table below.  Generators whose factors all
survive keep their shape; the others become the eps-only arrow between the
reduced endpoints (or an identity when those coincide).
"""

from __future__ import annotations

from .alpha import alpha_eq, witness
from .bijections import rename
from .reduction1 import eps_to_nf, nf_object
from .terms import (
    AAct,
    Act,
    Beta,
    BetaInv,
    Comp,
    Eps1,
    Eps1Inv,
    Eps2,
    Eps2Inv,
    Eps3,
    Eps3Inv,
    Eps4,
    Eps4Inv,
    Gamma,
    HComp,
    Id,
    Iota,
    Nu,
    Param,
    TermTypeError,
    Unit,
    VComp,
    invert,
    vcomp,
)


def _other(u: Unit, v: str) -> str:
    return u.y if u.x == v else u.x


def red0_object(W):
    if isinstance(W, (Unit, Param)):
        return W
    if isinstance(W, Comp):
        r1, r2 = red0_object(W.left), red0_object(W.right)
        u1, u2 = isinstance(r1, Unit), isinstance(r2, Unit)
        if u1 and u2:
            return Unit(_other(r1, W.x), _other(r2, W.y))
        if u2:
            return Act(r1, rename(r1.type, W.x, _other(r2, W.y)))
        if u1:
            return Act(r2, rename(r2.type, W.y, _other(r1, W.x)))
        return Comp(r1, W.x, W.y, r2)
    r = red0_object(W.body)
    if isinstance(r, Unit):
        a, b = sorted(W.sigma.dom)
        return Unit(a, b)
    return Act(r, W.sigma)


def eps_connector(U, V):
    """The eps-only arrow U -> V between unit-free terms with equivalent normal forms."""
    if U == V:
        return Id(U)
    nu, nv = nf_object(U), nf_object(V)
    if not alpha_eq(nu, nv):
        raise TermTypeError(f"no eps-arrow joins {U} and {V}")
    return vcomp(eps_to_nf(U), witness(nu, nv), invert(eps_to_nf(V)))


# Case table: constructor -> list of (case name, condition on the reduced factors, result).
RED0_TABLE = {
    "Id": [("any", "-", "identity on the reduced object")],
    "Beta": [
        ("no-unit", "no factor reduces to a unit", "beta over the reduced factors"),
        ("unit", "some factor reduces to a unit", "eps-connector between reduced endpoints"),
    ],
    "BetaInv": [
        ("no-unit", "no factor reduces to a unit", "betainv over the reduced factors"),
        ("unit", "some factor reduces to a unit", "eps-connector between reduced endpoints"),
    ],
    "Gamma": [
        ("no-unit", "neither factor reduces to a unit", "gamma over the reduced factors"),
        ("unit", "a factor reduces to a unit", "eps-connector (an identity when endpoints agree)"),
    ],
    "Eps1": [("any", "-", "unchanged")],
    "Eps1Inv": [("any", "-", "unchanged")],
    "Eps2": [("no-unit", "body survives", "eps2 on the reduced body")],
    "Eps2Inv": [("no-unit", "body survives", "eps2inv on the reduced body")],
    "Eps3": [("no-unit", "body survives", "eps3 on the reduced body")],
    "Eps3Inv": [("no-unit", "body survives", "eps3inv on the reduced body")],
    "Eps4": [
        ("no-unit", "both factors survive", "eps4 on the reduced factors"),
        ("unit", "a factor reduces to a unit", "eps-connector between reduced endpoints"),
    ],
    "Eps4Inv": [
        ("no-unit", "both factors survive", "eps4inv on the reduced factors"),
        ("unit", "a factor reduces to a unit", "eps-connector between reduced endpoints"),
    ],
    "Iota": [("any", "-", "identity on the reduced source")],
    "Nu": [("any", "-", "identity on the reduced unit")],
    "VComp": [("any", "-", "composite of the reduced parts")],
    "HComp": [
        ("no-unit", "both sources survive", "horizontal composite of the reduced parts"),
        ("right-unit", "right source reduces to id{y,v}", "reduced left part acted on by x renamed to v"),
        ("left-unit", "left source reduces to id{x,u}", "reduced right part acted on by y renamed to u"),
    ],
    "AAct": [("no-unit", "source survives", "action on the reduced arrow")],
    "*": [("all-unit", "source reduces to a unit", "identity on that unit")],
}


def red0_case(phi) -> tuple:
    """(constructor, case name) of the table entry used for phi."""
    s0 = red0_object(phi.source)
    kind = type(phi).__name__
    if isinstance(s0, Unit):
        return "*", "all-unit"
    if isinstance(phi, (Beta, BetaInv, Gamma, Eps4, Eps4Inv)):
        ws = [getattr(phi, f) for f in ("w1", "w2", "w3") if hasattr(phi, f)]
        units = any(isinstance(red0_object(w), Unit) for w in ws)
        return kind, "unit" if units else "no-unit"
    if isinstance(phi, HComp):
        if isinstance(red0_object(phi.right.source), Unit):
            return kind, "right-unit"
        if isinstance(red0_object(phi.left.source), Unit):
            return kind, "left-unit"
        return kind, "no-unit"
    return kind, RED0_TABLE[kind][0][0]


def red0_arrow(phi):
    phi.ends
    s0 = red0_object(phi.source)
    if isinstance(s0, Unit):
        return Id(s0)
    kind, case = red0_case(phi)
    if isinstance(phi, Id):
        return Id(s0)
    if isinstance(phi, (Iota, Nu)):
        return eps_connector(s0, red0_object(phi.target))
    if case == "unit":
        return eps_connector(s0, red0_object(phi.target))
    if isinstance(phi, (Beta, BetaInv)):
        rs = [red0_object(w) for w in (phi.w1, phi.w2, phi.w3)]
        return type(phi)(*rs, phi.x, phi.xb, phi.y, phi.yb)
    if isinstance(phi, Gamma):
        return Gamma(red0_object(phi.w1), red0_object(phi.w2), phi.x, phi.y)
    if isinstance(phi, (Eps1, Eps1Inv)):
        return phi
    if isinstance(phi, (Eps2, Eps2Inv)):
        return type(phi)(red0_object(phi.obj))
    if isinstance(phi, (Eps3, Eps3Inv)):
        return type(phi)(red0_object(phi.obj), phi.sigma, phi.tau)
    if isinstance(phi, (Eps4, Eps4Inv)):
        r1, r2 = red0_object(phi.w1), red0_object(phi.w2)
        return type(phi)(r1, r2, phi.sigma, phi.x, phi.y, phi.x2, phi.y2)
    if isinstance(phi, VComp):
        return VComp(red0_arrow(phi.after), red0_arrow(phi.before))
    if isinstance(phi, HComp):
        if case == "right-unit":
            u = red0_object(phi.right.source)
            left = red0_arrow(phi.left)
            return AAct(left, rename(phi.left.source.type, phi.x, _other(u, phi.y)))
        if case == "left-unit":
            u = red0_object(phi.left.source)
            right = red0_arrow(phi.right)
            return AAct(right, rename(phi.right.source.type, phi.y, _other(u, phi.x)))
        return HComp(red0_arrow(phi.left), phi.x, phi.y, red0_arrow(phi.right))
    if isinstance(phi, AAct):
        return AAct(red0_arrow(phi.arrow), phi.sigma)
    raise TypeError(f"not an arrow term: {phi!r}")
