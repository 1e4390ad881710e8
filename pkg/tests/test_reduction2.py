import itertools

import pytest

from cyclic_coherence.engine import arrow_pool, object_pool
from cyclic_coherence.parse import parse_arrow
from cyclic_coherence.reduction2 import (
    RBeta,
    RBetaInv,
    RId,
    RTheta,
    count_rooted,
    kappa,
    red2,
    root_term,
)
from cyclic_coherence.terms import count_generators, Beta, BetaInv, Gamma
from cyclic_coherence.trees import (
    Pair,
    TreeError,
    TreeTerm,
    delta_inv,
    delta_inv_arrow,
    letters,
    rooted_admissible,
)

CHAIN_BETA = "beta<x5,y2;y3,z1>(a{x1,x2,x3,x4,x5}, b{y1,y2,y3,y4}, c{z1,z2,z3})"


def blocks(w):
    # the set of letter-sets of all subwords: invariant under swapping pairs
    out = {frozenset(letters(w))}
    if isinstance(w, Pair):
        out |= blocks(w.left) | blocks(w.right)
    return out


def chain_beta():
    return delta_inv_arrow(parse_arrow(CHAIN_BETA))


def test_chain_beta_rooted_at_middle_factor_is_theta():
    r = red2(chain_beta(), "y4")
    assert isinstance(r, RTheta)
    assert str(r) == "theta<y2;y3>(b@y4, a@x5, c@z1)"


@pytest.mark.parametrize(
    "root,kind",
    [("x1", RBeta), ("x4", RBeta), ("y1", RTheta), ("y4", RTheta), ("z2", RBetaInv), ("z3", RBetaInv)],
)
def test_beta_case_split(root, kind):
    r = red2(chain_beta(), root)
    assert isinstance(r, kind)
    assert r.ends == (root_term(chain_beta().source, root), root_term(chain_beta().target, root))


def test_inverse_beta_case_split():
    inv = delta_inv_arrow(parse_arrow(CHAIN_BETA.replace("beta", "betainv", 1)))
    assert isinstance(red2(inv, "x1"), RBetaInv)
    assert isinstance(red2(inv, "y4"), RTheta)
    assert isinstance(red2(inv, "z2"), RBeta)


def test_gamma_becomes_identity():
    g = delta_inv_arrow(parse_arrow("gamma<x,y>(a{x,p}, b{y,q})"))
    for root in ("p", "q"):
        r = red2(g, root)
        assert isinstance(r, RId)
        assert r.source == r.target


def test_root_must_be_free():
    with pytest.raises(TreeError):
        red2(chain_beta(), "x5")
    with pytest.raises(TreeError):
        kappa(chain_beta().source, "nope")


def test_root_term_oracle():
    n = 0
    for group in object_pool(3):
        for W in group:
            t = delta_inv(W)
            for x in sorted(t.tree.fv):
                rt = root_term(t, x)
                assert rooted_admissible(t.tree, x, rt.word)
                assert blocks(rt.word) == blocks(t.word)
                n += 1
    assert n > 500


def test_kappa_reaches_rooted_word():
    for group in object_pool(3):
        for W in group[:4]:
            t = delta_inv(W)
            for x in sorted(t.tree.fv):
                k = kappa(t, x)
                s, e = k.ends
                assert s == t
                assert e == TreeTerm(t.tree, root_term(t, x).word)


def test_red2_ends_commute_with_rooting():
    n = 0
    for a in itertools.islice(arrow_pool(3, 3), 0, 6000, 3):
        chi = delta_inv_arrow(a)
        for x in sorted(chi.source.tree.fv):
            r = red2(chi, x)
            assert r.ends == (root_term(chi.source, x), root_term(chi.target, x))
            # beta-type generators survive one for one, gamma vanishes
            assert count_rooted(r, (RBeta, RBetaInv, RTheta)) == count_generators(a, (Beta, BetaInv))
            n += 1
    assert n > 1000
