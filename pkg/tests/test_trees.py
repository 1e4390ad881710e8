import networkx as nx
import pytest
from hypothesis import given

from cyclic_coherence.engine import arrow_pool, object_pool, trees_on, corolla_pool
from cyclic_coherence.parse import parse_object
from cyclic_coherence.terms import Comp, Param
from cyclic_coherence.trees import (
    NonLinearError,
    TreeError,
    TreeTerm,
    UnrootedTree,
    admissible,
    admissible_words,
    delta,
    delta_arrow,
    delta_inv,
    delta_inv_arrow,
    enumerate_words,
    in_out,
    letters,
    parse_tree,
    parse_word,
    rooted_admissible,
    rooted_words,
)
from conftest import objects

TREE3_TEXT = "tree{ a(x1,x2,x3,x4,x5); b(y1,y2,y3,y4); c(z1,z2,z3) | x5-y2, y3-z1 }"


@pytest.fixture
def T():
    return parse_tree(TREE3_TEXT).check()


def subwords(w):
    yield w
    if hasattr(w, "left"):
        yield from subwords(w.left)
        yield from subwords(w.right)


def corolla_graph(T):
    g = nx.Graph()
    g.add_nodes_from(T.names)
    for e in T.edges:
        a, b = sorted(e)
        g.add_edge(T.owner[a], T.owner[b])
    return g


def oracle_admissible(T, w):
    g = corolla_graph(T)
    return sorted(letters(w)) == sorted(T.names) and all(
        nx.is_connected(g.subgraph(letters(s))) for s in subwords(w)
    )


def all_trees(max_corollas=3, sizes=(2, 3)):
    for n in range(1, max_corollas + 1):
        yield from trees_on(corolla_pool(n, sizes))


def test_example_tree_valid(T):
    assert T.fv == {"x1", "x2", "x3", "x4", "y1", "y4", "z2", "z3"}
    assert str(parse_tree(str(T))) == str(T)


def test_example_adjacency(T):
    assert admissible(T, parse_word("((a b) c)"))
    assert not admissible(T, parse_word("((a c) b)"))


def test_example_decompose(T):
    left, right = T.decompose("x5", "y2")
    assert left.names == {"a"}
    assert right.names == {"b", "c"} and right.edges == {frozenset({"y3", "z1"})}


def test_example_rooted_words(T):
    got = {str(w) for w in rooted_words(T, "y4")}
    assert got == {"((b a) c)", "((b c) a)"}
    assert not rooted_admissible(T, "y4", parse_word("((a b) c)"))


def test_example_in_out(T):
    assert in_out(T, "y4", {"b"}) == ({"y1", "y2", "y3"}, "y4")
    assert in_out(T, "y4", {"a"}) == ({"x1", "x2", "x3", "x4"}, "x5")
    assert in_out(T, "y4", {"c"}) == ({"z2", "z3"}, "z1")


@pytest.mark.parametrize("text", [
    "tree{ a(x,u); b(y,v) }",
    "tree{ a(x,u); b(y,v); c(z,w) | x-y, u-v, y-z }",
    "tree{ a(x,u); b(y,v) | x-u }",
    "tree{ a(x,u); b(y,v); c(z,w) | x-y, v-z, u-w, }".replace(", }", " }"),
])
def test_invalid_trees(text):
    with pytest.raises(TreeError):
        parse_tree(text).check()


def test_admissible_matches_connectivity_oracle():
    n = 0
    trees = list(all_trees(3)) + list(trees_on(corolla_pool(4, (2,))))
    for T in trees:
        for w in enumerate_words(sorted(T.names)):
            assert admissible(T, w) == oracle_admissible(T, w)
            n += 1
    assert n > 1000


def test_rooted_words_count():
    # a rooted word fixes the order at every pair; unrooted words do not
    for T in all_trees(3):
        total = len(admissible_words(T))
        for x in sorted(T.fv):
            rooted = rooted_words(T, x)
            assert len(rooted) * 2 ** (len(T.corollas) - 1) == total
            assert all(admissible(T, w) for w in rooted)


def test_in_out_partition():
    for T in all_trees(3):
        for x in sorted(T.fv):
            for c in T.corollas:
                ins, out = in_out(T, x, {c.name})
                assert ins | {out} == c.type and out not in ins


def test_delta_round_trip_objects():
    n = 0
    for group in object_pool(3):
        for W in group:
            t = delta_inv(W)
            assert delta(t) == W
            assert delta_inv(delta(t)) == t
            n += 1
    assert n >= 100


def test_delta_round_trip_arrows():
    n = 0
    for a in arrow_pool(3, 2):
        t = delta_inv_arrow(a)
        assert delta_arrow(t) == a
        assert t.ends == (delta_inv(a.source), delta_inv(a.target))
        n += 1
    assert n >= 100


@given(objects(max_corollas=4))
def test_delta_round_trip_random(W):
    assert delta(delta_inv(W)) == W


def test_non_linear_terms_rejected():
    a = Param("a", frozenset({"x", "u"}))
    with pytest.raises(NonLinearError):
        delta_inv(Comp(a, "x", "y", Param("a", frozenset({"y", "v"}))))
    W = parse_object("(c{c1,c2} c1<>p (a{a2,p} p<>q b{p,q}))")
    with pytest.raises(NonLinearError):
        delta_inv(W)


def test_words_parse_and_print():
    w = parse_word("((b a) c)")
    assert str(w) == "((b a) c)"
    assert letters(w) == ["b", "a", "c"]
