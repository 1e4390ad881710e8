"""Catalogue of coherence cells: pairs of parallel arrow terms that every
model must identify.  Each cell is built for several choices of factors."""

from __future__ import annotations

from dataclasses import dataclass

from .bijections import Bijection
from .reduction0 import eps_connector
from .terms import (
    AAct,
    Act,
    Beta,
    BetaInv,
    Comp,
    Eps2,
    Eps2Inv,
    Eps3,
    Eps4,
    Eps4Inv,
    Gamma,
    HComp,
    Id,
    Iota,
    Nu,
    Param,
    Unit,
    vcomp,
)


def factor(name, req, variant=0):
    """An object term whose type contains ``req`` plus private entries.

    variant 0: one corolla; 1: a corolla with two spare entries;
    2: two corollas glued together; 3: a corolla under a renaming action.
    """
    req = sorted(req)
    spare = f"{name}0"
    if variant == 0:
        return Param(name, frozenset(req + [spare]))
    if variant == 1:
        return Param(name, frozenset(req + [spare, f"{name}1"]))
    if variant == 2:
        a = Param(f"{name}a", frozenset(req + [f"{name}e"]))
        b = Param(f"{name}b", frozenset([f"{name}f", spare]))
        return Comp(a, f"{name}e", f"{name}f", b)
    if variant == 3:
        body = Param(name, frozenset([f"{name}_{r}" for r in req] + [spare]))
        sigma = Bijection(tuple((r, f"{name}_{r}") for r in req) + ((spare, spare),))
        return Act(body, sigma)
    raise ValueError(f"unknown factor variant {variant}")


def action(xs, mode):
    """A bijection onto xs: identity, primes on every entry, or a swap."""
    xs = sorted(xs)
    if mode == "id":
        return Bijection.identity(xs)
    if mode == "prime":
        return Bijection(tuple((v + "'", v) for v in xs))
    if mode == "swap":
        pairs = {v: v for v in xs}
        a, b = xs[-2], xs[-1]
        pairs[a], pairs[b] = b, a
        return Bijection(tuple(pairs.items()))
    raise ValueError(mode)


def _p(v, mode):
    return v + "'" if mode == "prime" else v


def theta(f, g, h, x, xb, y, yb):
    """(f x<>xb g) y<>yb h -> (f y<>yb h) x<>xb g, for y an entry of f."""
    return vcomp(
        HComp(Gamma(f, g, x, xb), y, yb, Id(h)),
        Beta(g, f, h, xb, x, y, yb),
        Gamma(g, Comp(f, y, yb, h), xb, x),
    )


# ---------------------------------------------------------------- symmetric cells


def beta_pentagon(v):
    f = factor("f", {"x"}, v[0])
    g = factor("g", {"xb", "y"}, v[1])
    h = factor("h", {"yb", "z"}, v[2])
    k = factor("k", {"zb"}, v[3])
    left = vcomp(
        HComp(Beta(f, g, h, "x", "xb", "y", "yb"), "z", "zb", Id(k)),
        Beta(f, Comp(g, "y", "yb", h), k, "x", "xb", "z", "zb"),
        HComp(Id(f), "x", "xb", Beta(g, h, k, "y", "yb", "z", "zb")),
    )
    right = vcomp(
        Beta(Comp(f, "x", "xb", g), h, k, "y", "yb", "z", "zb"),
        Beta(f, g, Comp(h, "z", "zb", k), "x", "xb", "y", "yb"),
    )
    return left, right


def beta_gamma_hexagon(v):
    f = factor("f", {"x"}, v[0])
    g = factor("g", {"xb", "y"}, v[1])
    h = factor("h", {"yb"}, v[2])
    left = vcomp(
        Beta(f, g, h, "x", "xb", "y", "yb"),
        Gamma(f, Comp(g, "y", "yb", h), "x", "xb"),
        HComp(Gamma(g, h, "y", "yb"), "xb", "x", Id(f)),
        Beta(h, g, f, "yb", "y", "xb", "x"),
    )
    right = vcomp(
        HComp(Gamma(f, g, "x", "xb"), "y", "yb", Id(h)),
        Gamma(Comp(g, "xb", "x", f), h, "y", "yb"),
    )
    return left, right


def beta_gamma_decagon(v):
    f = factor("f", {"x"}, v[0])
    g = factor("g", {"xb", "y", "z"}, v[1])
    h = factor("h", {"yb"}, v[2])
    k = factor("k", {"zb"}, v[3])
    fg = Comp(f, "x", "xb", g)
    left = vcomp(
        HComp(Beta(f, g, h, "x", "xb", "y", "yb"), "z", "zb", Id(k)),
        Beta(f, Comp(g, "y", "yb", h), k, "x", "xb", "z", "zb"),
        HComp(Id(f), "x", "xb", HComp(Gamma(g, h, "y", "yb"), "z", "zb", Id(k))),
        HComp(Id(f), "x", "xb", Beta(h, g, k, "yb", "y", "z", "zb")),
        HComp(Id(f), "x", "xb", Gamma(h, Comp(g, "z", "zb", k), "yb", "y")),
    )
    right = vcomp(
        HComp(Gamma(fg, h, "y", "yb"), "z", "zb", Id(k)),
        Beta(h, fg, k, "yb", "y", "z", "zb"),
        Gamma(h, Comp(fg, "z", "zb", k), "yb", "y"),
        HComp(Beta(f, g, k, "x", "xb", "z", "zb"), "y", "yb", Id(h)),
        Beta(f, Comp(g, "z", "zb", k), h, "x", "xb", "y", "yb"),
    )
    return left, right


def gamma_involution(v):
    f = factor("f", {"x"}, v[0])
    g = factor("g", {"xb"}, v[1])
    left = vcomp(Gamma(f, g, "x", "xb"), Gamma(g, f, "xb", "x"))
    return left, Id(Comp(f, "x", "xb", g))


def theta_involution(v):
    f = factor("f", {"x", "y"}, v[0])
    g = factor("g", {"xb"}, v[1])
    h = factor("h", {"yb"}, v[2])
    left = vcomp(theta(f, g, h, "x", "xb", "y", "yb"), theta(f, h, g, "y", "yb", "x", "xb"))
    return left, Id(Comp(Comp(f, "x", "xb", g), "y", "yb", h))


def beta_theta_pentagon(v):
    f = factor("f", {"x", "y"}, v[0])
    g = factor("g", {"xb", "z"}, v[1])
    h = factor("h", {"yb"}, v[2])
    k = factor("k", {"zb"}, v[3])
    left = vcomp(
        HComp(theta(f, g, h, "x", "xb", "y", "yb"), "z", "zb", Id(k)),
        Beta(Comp(f, "y", "yb", h), g, k, "x", "xb", "z", "zb"),
        theta(f, h, Comp(g, "z", "zb", k), "y", "yb", "x", "xb"),
    )
    right = vcomp(
        theta(Comp(f, "x", "xb", g), h, k, "y", "yb", "z", "zb"),
        HComp(Beta(f, g, k, "x", "xb", "z", "zb"), "y", "yb", Id(h)),
    )
    return left, right


def theta_hexagon(v):
    f = factor("f", {"x", "y", "z"}, v[0])
    g = factor("g", {"xb"}, v[1])
    h = factor("h", {"yb"}, v[2])
    k = factor("k", {"zb"}, v[3])
    left = vcomp(
        theta(Comp(f, "x", "xb", g), h, k, "y", "yb", "z", "zb"),
        HComp(theta(f, g, k, "x", "xb", "z", "zb"), "y", "yb", Id(h)),
        theta(Comp(f, "z", "zb", k), g, h, "x", "xb", "y", "yb"),
    )
    right = vcomp(
        HComp(theta(f, g, h, "x", "xb", "y", "yb"), "z", "zb", Id(k)),
        theta(Comp(f, "y", "yb", h), g, k, "x", "xb", "z", "zb"),
        HComp(theta(f, h, k, "y", "yb", "z", "zb"), "x", "xb", Id(g)),
    )
    return left, right


# ---------------------------------------------------------------- actions


def _parallel_by_eps(phi, psi):
    """phi followed by, and psi preceded by, the eps-arrows joining their ends."""
    left = vcomp(phi, eps_connector(phi.target, psi.target))
    right = vcomp(eps_connector(phi.source, psi.source), psi)
    return left, right


def beta_sigma(v):
    f = factor("f", {"x"}, v[0])
    g = factor("g", {"xb", "y"}, v[1])
    h = factor("h", {"yb"}, v[2])
    mode = v[3]
    b = Beta(f, g, h, "x", "xb", "y", "yb")
    sigma = action(b.source.type, mode)
    e = Eps4(Comp(f, "x", "xb", g), h, sigma, "y", "yb", _p("y", mode), _p("yb", mode))
    t = e.target
    e2 = Eps4(f, g, t.left.sigma, "x", "xb", _p("x", mode), _p("xb", mode))
    t2 = e2.target
    b2 = Beta(t2.left, t2.right, t.right, t2.x, t2.y, t.x, t.y)
    return _parallel_by_eps(AAct(b, sigma), b2)


def gamma_sigma(v):
    f = factor("f", {"x"}, v[0])
    g = factor("g", {"y"}, v[1])
    mode = v[2]
    c = Gamma(f, g, "x", "y")
    sigma = action(c.source.type, mode)
    t = Eps4(f, g, sigma, "x", "y", _p("x", mode), _p("y", mode)).target
    return _parallel_by_eps(AAct(c, sigma), Gamma(t.left, t.right, t.x, t.y))


def eq_mor(v):
    f = Comp(factor("p", {"x", "pp"}, v[0]), "pp", "qq", factor("q", {"qq"}, v[1]))
    phi = Gamma(f.left, f.right, "pp", "qq")
    g = factor("g", {"y"}, v[2])
    psi = Id(g)
    mode = v[3]
    a = HComp(phi, "x", "y", psi)
    sigma = action(a.source.type, mode)
    t = Eps4(phi.source, psi.source, sigma, "x", "y", _p("x", mode), _p("y", mode)).target
    b = HComp(AAct(phi, t.left.sigma), t.x, t.y, AAct(psi, t.right.sigma))
    return _parallel_by_eps(AAct(a, sigma), b)


def beta_eps_hexagon(v):
    f = factor("f", {"x"}, v[0])
    g = factor("g", {"xb", "y"}, v[1])
    h = factor("h", {"yb"}, v[2])
    mode = v[3]
    x2, xb2, y2, yb2 = (_p(n, mode) for n in ("x", "xb", "y", "yb"))
    fg = Comp(f, "x", "xb", g)
    sigma = action(Comp(fg, "y", "yb", h).type, mode)
    e1 = Eps4(fg, h, sigma, "y", "yb", y2, yb2)
    t1 = e1.target
    e2 = Eps4(f, g, t1.left.sigma, "x", "xb", x2, xb2)
    t2 = e2.target
    left = vcomp(
        e1,
        HComp(e2, y2, yb2, Id(t1.right)),
        Beta(t2.left, t2.right, t1.right, x2, xb2, y2, yb2),
    )
    e3 = Eps4(f, Comp(g, "y", "yb", h), sigma, "x", "xb", x2, xb2)
    t3 = e3.target
    right = vcomp(
        AAct(Beta(f, g, h, "x", "xb", "y", "yb"), sigma),
        e3,
        HComp(Id(t3.left), x2, xb2, Eps4(g, h, t3.right.sigma, "y", "yb", y2, yb2)),
    )
    return left, right


def gamma_eps_square(v):
    f = factor("f", {"x"}, v[0])
    g = factor("g", {"y"}, v[1])
    mode = v[2]
    x2, y2 = _p("x", mode), _p("y", mode)
    sigma = action(Comp(f, "x", "y", g).type, mode)
    e = Eps4(f, g, sigma, "x", "y", x2, y2)
    t = e.target
    left = vcomp(e, Gamma(t.left, t.right, x2, y2))
    right = vcomp(AAct(Gamma(f, g, "x", "y"), sigma), Eps4(g, f, sigma, "y", "x", y2, x2))
    return left, right


# ---------------------------------------------------------------- units


def beta_gamma_iota_hexagon_1(v):
    u = Unit("x", "uz")
    f = factor("f", {"xb", "y"}, v[0])
    g = factor("g", {"yb"}, v[1])
    fg = Comp(f, "y", "yb", g)
    i1 = Iota(f, "xb", "x", "uz")
    right_path = vcomp(
        Beta(u, f, g, "x", "xb", "y", "yb"),
        Gamma(u, fg, "x", "xb"),
        Iota(fg, "xb", "x", "uz"),
    )
    tau = right_path.target.sigma
    right_path = vcomp(right_path, Eps4(f, g, tau, "y", "yb", "y", "yb"))
    left_path = vcomp(
        HComp(Gamma(u, f, "x", "xb"), "y", "yb", Id(g)),
        HComp(i1, "y", "yb", Id(g)),
        HComp(Id(i1.target), "y", "yb", Eps2Inv(g)),
    )
    return left_path, right_path


def beta_gamma_iota_hexagon_2(v):
    f = factor("f", {"x"}, v[0])
    u = Unit("xb", "y")
    g = factor("g", {"yb"}, v[1])
    i1 = Iota(f, "x", "xb", "y")
    ident = Bijection.identity(Comp(f, "x", "yb", g).type)
    left = vcomp(
        HComp(i1, "y", "yb", Id(g)),
        HComp(Id(i1.target), "y", "yb", Eps2Inv(g)),
        Eps4Inv(f, g, ident, "x", "yb", "y", "yb"),
        Eps4(f, g, ident, "x", "yb", "x", "xb"),
    )
    i2 = Iota(g, "yb", "y", "xb")
    right = vcomp(
        Beta(f, u, g, "x", "xb", "y", "yb"),
        HComp(Id(f), "x", "xb", Gamma(u, g, "y", "yb")),
        HComp(Id(f), "x", "xb", i2),
        HComp(Eps2Inv(f), "x", "xb", Id(i2.target)),
    )
    return left, right


def beta_iota_square(v):
    f = factor("f", {"x"}, v[0])
    g = factor("g", {"xb", "y"}, v[1])
    u = Unit("yb", "uz")
    fg = Comp(f, "x", "xb", g)
    i1 = Iota(g, "y", "yb", "uz")
    top = vcomp(
        Beta(f, g, u, "x", "xb", "y", "yb"),
        HComp(Id(f), "x", "xb", i1),
        HComp(Eps2Inv(f), "x", "xb", Id(i1.target)),
    )
    i2 = Iota(fg, "y", "yb", "uz")
    left = vcomp(i2, Eps4(f, g, i2.target.sigma, "x", "xb", "x", "xb"))
    return top, left


def gamma_iota_square(v):
    f = factor("f", {"x"}, v[0])
    u = Unit("xb", "y")
    g = factor("g", {"yb"}, v[1])
    i1 = Iota(f, "x", "xb", "y")
    top = vcomp(
        Gamma(Comp(f, "x", "xb", u), g, "y", "yb"),
        HComp(Id(g), "yb", "y", i1),
    )
    left = vcomp(HComp(i1, "y", "yb", Id(g)), Gamma(i1.target, g, "y", "yb"))
    return top, left


def eps_iota_square(v):
    f = factor("f", {"z", "x"}, v[0])
    g = factor("g", {"xb"}, v[1])
    u = Unit("u", "q")
    mode = v[2]
    fz = Comp(f, "z", "u", u)
    # the action fixes the left factor and acts on the rest of g
    kappa = action(g.type - {"xb"}, mode)
    tau = Bijection(tuple((a, a) for a in sorted(fz.type - {"x"})) + kappa.pairs)
    i1 = Iota(f, "z", "u", "q")
    e = Eps4(fz, g, tau, "x", "xb", "x", "xb")
    t = e.target
    top = vcomp(
        e,
        HComp(Eps2(fz), "x", "xb", Id(t.right)),
        HComp(i1, "x", "xb", Id(t.right)),
    )
    e2 = Eps4(i1.target, g, tau, "x", "xb", "x", "xb")
    left = vcomp(
        AAct(HComp(i1, "x", "xb", Id(g)), tau),
        e2,
        HComp(Eps2(i1.target), "x", "xb", Id(e2.target.right)),
    )
    return top, left


def iota_eps_nu_square(v):
    f = factor("f", {"x"}, v[0])
    u = Unit("y", "uz")
    mode = v[1]
    W = Comp(f, "x", "y", u)
    sigma = action(W.type, mode)
    x2, y2 = _p("x", mode), _p("y", mode)
    e = Eps4(f, u, sigma, "x", "y", x2, y2)
    t = e.target
    w = sigma.inverse()("uz")
    i2 = Iota(t.left, x2, y2, w)
    top = vcomp(
        e,
        HComp(Id(t.left), x2, y2, Nu("y", "uz", y2, w)),
        i2,
        Eps3(t.left.body, t.left.sigma, i2.target.sigma),
    )
    i1 = Iota(f, "x", "y", "uz")
    left = vcomp(AAct(i1, sigma), Eps3(f, i1.target.sigma, sigma))
    return top, left


def gamma_iota_nu_pentagon(v):
    a, b, c, d = v
    U1, U2 = Unit(a, b), Unit(c, d)
    i1 = Iota(U2, c, b, a)
    left = vcomp(Gamma(U1, U2, b, c), i1, Nu(c, d, a, d))
    right = vcomp(Iota(U1, b, c, d), Nu(a, b, a, d))
    return left, right


def iota_nu_pentagon(v):
    x, y, u, z, w = v
    s = Bijection(((x, x), (u, y)))
    U = Act(Unit(x, y), s)
    U2 = Unit(z, w)
    i1 = Iota(U, u, z, w)
    left = vcomp(
        HComp(Nu(x, y, x, u), u, z, Id(U2)),
        Iota(Unit(x, u), u, z, w),
        Nu(x, u, x, w),
    )
    right = vcomp(i1, Eps3(Unit(x, y), s, i1.target.sigma), Nu(x, y, x, w))
    return left, right


def nu_sigma(v):
    x, y, u, w, p, q = v
    s = Bijection(((u, x), (w, y)))
    sigma = Bijection(((p, u), (q, w)))
    left = vcomp(Eps3(Unit(x, y), s, sigma), Nu(x, y, p, q))
    right = vcomp(AAct(Nu(x, y, u, w), sigma), Nu(u, w, p, q))
    return left, right


def nu_involution(v):
    x, y, u, w = v
    return Nu(x, y, u, w), Nu(x, y, w, u)


# ---------------------------------------------------------------- catalogue


@dataclass(frozen=True)
class CoherenceCell:
    name: str
    family: str
    build: object
    variants: tuple
    unit_free: bool = True

    def instances(self):
        for v in self.variants:
            yield v, self.build(v)


_F4 = ((0, 0, 0, 0), (1, 2, 0, 3), (3, 1, 2, 0), (2, 3, 1, 1))
_F3 = ((0, 0, 0), (1, 2, 3), (3, 0, 2), (2, 1, 1))
_F2 = ((0, 0), (1, 2), (3, 1), (2, 3))
_S3 = ((0, 0, "id"), (1, 2, "prime"), (3, 1, "swap"), (2, 3, "prime"))
_S4 = ((0, 0, 0, "id"), (1, 2, 0, "prime"), (3, 1, 2, "swap"), (2, 3, 1, "prime"))
_S2 = ((0, "id"), (1, "prime"), (2, "swap"), (3, "prime"))

CELLS = (
    CoherenceCell("beta-pentagon", "symmetric", beta_pentagon, _F4),
    CoherenceCell("beta-gamma-hexagon", "symmetric", beta_gamma_hexagon, _F3),
    CoherenceCell("beta-gamma-decagon", "symmetric", beta_gamma_decagon, _F4),
    CoherenceCell("gamma-involution", "symmetric", gamma_involution, _F2),
    CoherenceCell("theta-involution", "theta", theta_involution, _F3),
    CoherenceCell("beta-theta-pentagon", "theta", beta_theta_pentagon, _F4),
    CoherenceCell("theta-hexagon", "theta", theta_hexagon, _F4),
    CoherenceCell("beta-sigma", "action", beta_sigma, _S4),
    CoherenceCell("gamma-sigma", "action", gamma_sigma, _S3),
    CoherenceCell("eq-mor", "action", eq_mor, _S4),
    CoherenceCell("beta-eps-hexagon", "action", beta_eps_hexagon, _S4),
    CoherenceCell("gamma-eps-square", "action", gamma_eps_square, _S3),
    CoherenceCell("beta-gamma-iota-hexagon-1", "unit", beta_gamma_iota_hexagon_1, _F2, False),
    CoherenceCell("beta-gamma-iota-hexagon-2", "unit", beta_gamma_iota_hexagon_2, _F2, False),
    CoherenceCell("beta-iota-square", "unit", beta_iota_square, _F2, False),
    CoherenceCell("gamma-iota-square", "unit", gamma_iota_square, _F2, False),
    CoherenceCell("eps-iota-square", "unit", eps_iota_square, _S3, False),
    CoherenceCell("iota-eps-nu-square", "unit", iota_eps_nu_square, _S2, False),
    CoherenceCell(
        "gamma-iota-nu-pentagon", "unit", gamma_iota_nu_pentagon,
        (("x", "y", "z", "u"), ("a", "b", "c", "d"), ("p", "q", "r", "s")), False,
    ),
    CoherenceCell(
        "iota-nu-pentagon", "unit", iota_nu_pentagon,
        (("x", "y", "u", "z", "v"), ("a", "b", "c", "d", "e"), ("p1", "p2", "p3", "p4", "p5")), False,
    ),
    CoherenceCell(
        "nu-sigma", "unit", nu_sigma,
        (("x", "y", "u", "v", "p", "q"), ("a", "b", "c", "d", "e", "f"), ("x", "y", "y", "x", "p", "q")), False,
    ),
    CoherenceCell(
        "nu-involution", "unit", nu_involution,
        (("x", "y", "u", "v"), ("a", "b", "b", "a"), ("p", "q", "r", "s")), False,
    ),
)


def cell(name) -> CoherenceCell:
    for c in CELLS:
        if c.name == name:
            return c
    raise KeyError(name)
