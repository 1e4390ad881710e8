import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from cyclic_coherence.bijections import Bijection
from cyclic_coherence.terms import Act, Comp, Param, Unit

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

NAMES = "abcd"


@st.composite
def permutations_of(draw, names):
    names = sorted(names)
    image = draw(st.permutations(names))
    return Bijection(tuple(zip(names, image)))


@st.composite
def objects(draw, max_corollas=3, decorate=True, actions=0, units=False):
    """Linear object terms over corollas a, b, c, ... with 2 or 3 entries.

    Decorated leaves permute their entries; ``actions`` bounds the number of
    permutation actions wrapped around subterms; ``units`` mixes in id{..}."""
    n = draw(st.integers(1, max_corollas))
    parts = []
    for i in range(n):
        name = NAMES[i]
        k = draw(st.integers(2, 3))
        entries = frozenset(f"{name}{j}" for j in range(1, k + 1))
        leaf = Param(name, entries)
        if decorate and draw(st.booleans()):
            leaf = leaf.decorate(draw(permutations_of(entries)))
        parts.append(leaf)
    if units:
        for j in range(draw(st.integers(0, 2))):
            parts.append(Unit(f"u{j}a", f"u{j}b"))
    budget = actions
    while len(parts) > 1:
        i = draw(st.integers(0, len(parts) - 1))
        left = parts.pop(i)
        j = draw(st.integers(0, len(parts) - 1))
        right = parts.pop(j)
        x = draw(st.sampled_from(sorted(left.type)))
        y = draw(st.sampled_from(sorted(right.type)))
        W = Comp(left, x, y, right)
        if budget and draw(st.booleans()):
            budget -= 1
            W = Act(W, draw(permutations_of(W.type)))
        parts.append(W)
    W = parts[0]
    if budget and draw(st.booleans()):
        W = Act(W, draw(permutations_of(W.type)))
    return W


# criterion number -> PASS/FAIL line, filled in by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
