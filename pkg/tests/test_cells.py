import pytest

from cyclic_coherence.cells import CELLS, cell, factor
from cyclic_coherence.engine import decide_equal
from cyclic_coherence.terms import (
    Beta,
    BetaInv,
    Comp,
    Gamma,
    Id,
    TermTypeError,
    count_generators,
    generator_sign,
)

INSTANCES = [(c, v, pair) for c in CELLS for v, pair in c.instances()]


def test_catalogue_shape():
    assert len(CELLS) == 22
    assert len({c.name for c in CELLS}) == 22
    assert len(INSTANCES) >= 80
    assert cell("beta-pentagon").family == "symmetric"
    with pytest.raises(KeyError):
        cell("no-such-cell")


@pytest.mark.parametrize("c,v,pair", INSTANCES, ids=[f"{c.name}-{i}" for i, (c, _, _) in enumerate(INSTANCES)])
def test_cell_borders_are_parallel_and_decided_equal(c, v, pair):
    left, right = pair
    assert left.ends == right.ends
    modes = ("strict", "relaxed-eq", "with-units") if c.unit_free else ("with-units",)
    for mode in modes:
        verdict = decide_equal(left, right, mode=mode)
        assert verdict.equal, (mode, verdict.stage)


def test_unit_cells_rejected_without_units():
    left, right = cell("nu-involution").build(("x", "y", "u", "v"))
    with pytest.raises(TermTypeError):
        decide_equal(left, right, mode="strict")


def test_pentagon_border_lengths():
    for _, (left, right) in cell("beta-pentagon").instances():
        assert count_generators(left, (Beta, BetaInv)) == 3
        assert count_generators(right, (Beta, BetaInv)) == 2


@pytest.mark.parametrize("c", [c for c in CELLS if c.unit_free], ids=lambda c: c.name)
def test_unit_free_cells_are_sign_coherent(c):
    for _, (left, right) in c.instances():
        assert generator_sign(left) == generator_sign(right)


def test_hexagon_signs():
    left, right = cell("beta-gamma-hexagon").build((0, 0, 0))
    assert count_generators(left, (Gamma,)) == 2
    assert count_generators(right, (Gamma,)) == 2
    assert generator_sign(left) == generator_sign(right) == 1


def test_unit_pentagon_breaks_sign_coherence():
    # one border crosses a gamma, the other none; units make the sign ill-defined
    left, right = cell("gamma-iota-nu-pentagon").build(("x", "y", "z", "u"))
    assert decide_equal(left, right).equal
    assert count_generators(left, (Gamma,)) == 1
    assert count_generators(right, (Gamma,)) == 0
    assert generator_sign(left) != generator_sign(right)


def test_incidence_errors():
    f = factor("f", {"x"})
    g = factor("g", {"xb"})  # lacks y
    h = factor("h", {"yb"})
    with pytest.raises(TermTypeError):
        Beta(f, g, h, "x", "xb", "y", "yb").ends
    with pytest.raises(TermTypeError):
        Gamma(f, g, "x", "nope").ends
    with pytest.raises(TermTypeError):
        Comp(factor("f", {"x", "p"}), "x", "kx", factor("k", {"kx", "p"})).type


def test_gamma_against_identity_not_parallel():
    f, g = factor("f", {"x"}), factor("g", {"xb"})
    v = decide_equal(Gamma(f, g, "x", "xb"), Id(Comp(f, "x", "xb", g)))
    assert not v.equal
    assert v.stage == "input" or v.stage == "red0"
