import pytest
from hypothesis import given

from cyclic_coherence.bijections import Bijection
from cyclic_coherence.cells import CELLS
from cyclic_coherence.engine import arrow_pool
from cyclic_coherence.parse import ParseError, parse_arrow, parse_object
from cyclic_coherence.terms import (
    Act,
    Beta,
    Comp,
    Gamma,
    Id,
    Nu,
    Param,
    TermTypeError,
    Unit,
    count_generators,
    generator_sign,
    infer_signature,
    invert,
    typecheck_arrow,
    typecheck_object,
    vcomp,
)
from conftest import objects


def P(name, *fv):
    return Param(name, frozenset(fv))


def test_comp_type():
    W = Comp(P("a", "x", "u"), "x", "y", P("b", "y", "v"))
    assert W.type == {"u", "v"}


def test_comp_clash_names_the_variable():
    W = Comp(P("a", "x", "u"), "x", "y", P("b", "y", "u"))
    with pytest.raises(TermTypeError, match="u"):
        W.type


def test_comp_needs_interface_entries():
    with pytest.raises(TermTypeError):
        Comp(P("a", "x", "u"), "w", "y", P("b", "y", "v")).type


def test_act_type_is_domain():
    W = Act(P("a", "x", "y"), Bijection((("p", "x"), ("q", "y"))))
    assert W.type == {"p", "q"}
    with pytest.raises(TermTypeError):
        Act(P("a", "x", "y"), Bijection((("p", "x"),))).type


def test_identity_decoration_collapses():
    a = P("a", "x", "y")
    assert a.decorate(Bijection.identity("xy")) == a


def test_unit_and_nu_are_unordered():
    assert Unit("y", "x") == Unit("x", "y")
    assert Nu("x", "y", "u", "v") == Nu("y", "x", "v", "u")


@given(objects(actions=3, units=True))
def test_object_print_parse_round_trip(W):
    assert parse_object(str(W)) == W
    assert str(parse_object(str(W))) == str(W)


def test_arrow_print_parse_round_trip():
    seen = 0
    for a in arrow_pool(2, 2):
        assert parse_arrow(str(a)) == a
        seen += 1
    for c in CELLS:
        for _, (l, r) in c.instances():
            assert str(parse_arrow(str(l))) == str(l)
            assert str(parse_arrow(str(r))) == str(r)
            seen += 2
    assert seen > 100


def test_beta_gamma_ends():
    a, b, c = P("a", "x", "u"), P("b", "y", "z", "v"), P("c", "w", "t")
    s, t = Beta(a, b, c, "x", "y", "z", "w").ends
    assert str(s) == "((a{u,x} x<>y b{v,y,z}) z<>w c{t,w})"
    assert str(t) == "(a{u,x} x<>y (b{v,y,z} z<>w c{t,w}))"
    s, t = Gamma(a, b, "x", "y").ends
    assert t == Comp(b, "y", "x", a)


def test_beta_side_condition():
    # the second interface must sit on the middle factor
    a, b, c = P("a", "x", "z"), P("b", "y", "v"), P("c", "w", "t")
    with pytest.raises(TermTypeError):
        Beta(a, b, c, "x", "y", "z", "w").ends


def test_vcomp_checks_middle_object():
    a, b = P("a", "x", "u"), P("b", "y", "v")
    g = Gamma(a, b, "x", "y")
    with pytest.raises(TermTypeError):
        vcomp(g, g).ends
    assert vcomp(g, Gamma(b, a, "y", "x")).ends == (g.source, g.source)


@given(objects(max_corollas=3, decorate=False))
def test_invert_swaps_ends(W):
    from cyclic_coherence.engine import paths_from

    for a in list(paths_from(W, 2))[:20]:
        assert invert(a).ends == (a.target, a.source)
        assert generator_sign(invert(a)) == generator_sign(a)


def test_generator_sign_counts_gammas():
    a, b = P("a", "x", "u"), P("b", "y", "v")
    g = Gamma(a, b, "x", "y")
    assert generator_sign(g) == -1
    assert generator_sign(vcomp(g, Gamma(b, a, "y", "x"))) == 1
    assert generator_sign(g, gamma_sign=1) == 1
    assert count_generators(Id(g.source)) == 0


def test_typecheck_against_signature():
    W = parse_object("(a{x,u} x<>y b{y,v})")
    sig = infer_signature(W)
    assert typecheck_object(W, sig) == {"u", "v"}
    bad = parse_object("(a{x,u} x<>y a{y,v})")
    with pytest.raises(TermTypeError):
        typecheck_object(bad, infer_signature(W))
    with pytest.raises(TermTypeError):
        typecheck_arrow(Id(Unit("x", "y")), infer_signature(W, units=False))


@pytest.mark.parametrize("text", ["a{x,y", "(a{x} x<> b{y})", "a[x->y", "beta<x>(a{x})", "a{x,x}"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_arrow(text) if text.startswith("beta") else parse_object(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_object("(a{x,u} x<>y\n  b{y,v}!)")
    assert (e.value.line, e.value.col) == (2, 9)
