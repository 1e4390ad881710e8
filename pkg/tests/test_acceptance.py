"""Acceptance criteria.  Each criterion prints one PASS/FAIL line; the lines
are repeated in the pytest terminal summary.  Run this file directly to get
just the seven lines."""

import io
import itertools
import os
import sys

from hypothesis import given, settings

sys.path.insert(0, os.path.dirname(__file__))

from conftest import ACCEPTANCE, objects  # noqa: E402

from cyclic_coherence.alpha import alpha_eq
from cyclic_coherence.bijections import Bijection
from cyclic_coherence.cells import CELLS
from cyclic_coherence.cli import main
from cyclic_coherence.engine import (
    arrow_pool,
    decide_equal,
    enumerate_arrows,
    object_pool,
    sign_sweep,
    sign_table,
    skeleton_choice,
)
from cyclic_coherence.reduction0 import red0_arrow, red0_object
from cyclic_coherence.reduction1 import eps_to_nf, nf_all_objects, nf_object, red1, red1_object
from cyclic_coherence.reduction2 import red2, root_term
from cyclic_coherence.reduction3 import red3, red3_object
from cyclic_coherence.terms import AAct, Arrow, Unit
from cyclic_coherence.trees import delta, delta_arrow, delta_inv, delta_inv_arrow

DATA = os.path.join(os.path.dirname(__file__), "data")
SKELETONS = ("lex", "rev", "rot", "random")


def report(n, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE[n] = line
    print(line)
    return ok


# ---------------------------------------------------------------- 1


def check_confluence():
    failures, seen, sizes = [], [0], [0]

    @settings(max_examples=400, database=None, derandomize=True)
    @given(objects(max_corollas=3, actions=3))
    def prop(W):
        forms = list(nf_all_objects(W, palette=("p", "q")))
        seen[0] += 1
        sizes[0] = max(sizes[0], len(forms))
        if not all(alpha_eq(forms[0], F) for F in forms[1:]):
            failures.append(W)

    prop()
    ok = not failures and seen[0] >= 400
    return report(1, "normal forms are unique up to alpha-equivalence", ok,
                  f"{seen[0]} terms, up to {sizes[0]} normal forms each, {len(failures)} failures")


def test_criterion_1_confluence():
    assert check_confluence()


# ---------------------------------------------------------------- 2


def _subarrows(a):
    yield a
    for f in ("after", "before", "left", "right", "arrow"):
        b = getattr(a, f, None)
        if isinstance(b, Arrow):
            yield from _subarrows(b)


def typing_pool():
    """Whiskered generator paths, their images under actions, eps-arrows to
    normal form, and every sub-arrow of every coherence cell."""
    base = list(arrow_pool(3, 4))
    extra = []
    for a in base[::50]:
        W = a.source
        names = sorted(W.type)
        rot = names[1:] + names[:1]
        extra.append(AAct(a, Bijection(tuple(zip(names, rot)))))

    @settings(max_examples=150, database=None, derandomize=True)
    @given(objects(max_corollas=3, actions=2))
    def eps(W):
        extra.append(eps_to_nf(W))

    eps()
    for c in CELLS:
        for _, (left, right) in c.instances():
            extra += list(_subarrows(left)) + list(_subarrows(right))
    return base + extra


def check_typing():
    n, bad = 0, []
    for phi in typing_pool():
        n += 1
        try:
            s, t = phi.ends
            a0 = red0_arrow(phi)
            s0, t0 = red0_object(s), red0_object(t)
            assert a0.ends == (s0, t0), "red0"
            if isinstance(s0, Unit):
                continue
            a1 = red1(a0)
            s1, t1 = red1_object(s0), red1_object(t0)
            assert a1.ends == (s1, t1), "red1"
            chi = delta_inv_arrow(a1)
            assert chi.ends == (delta_inv(s1), delta_inv(t1)), "tree"
            for x in sorted(chi.source.tree.fv)[:2]:
                r = red2(chi, x)
                assert r.ends == (root_term(chi.source, x), root_term(chi.target, x)), "red2"
                svec = skeleton_choice("lex")(chi.source.tree, x)
                k = red3(r, svec)
                assert k.ends == (red3_object(r.source, svec), red3_object(r.target, svec)), "red3"
        except Exception as e:  # noqa: BLE001 - any failure is a counterexample
            bad.append((str(phi), repr(e)))
    return report(2, "every stage maps arrow ends to reduced ends", not bad and n > 20000,
                  f"{n} arrows, {len(bad)} failures")


def test_criterion_2_typing_invariants():
    assert check_typing()


# ---------------------------------------------------------------- 3


def check_cells():
    total, bad, thin = 0, [], []
    for c in CELLS:
        k = 0
        for v, (left, right) in c.instances():
            total += 1
            k += 1
            if not decide_equal(left, right).equal:
                bad.append((c.name, v))
        if k < 3:
            thin.append(c.name)
    return report(3, "every coherence cell is decided EQUAL", not bad and not thin,
                  f"{len(CELLS)} cells, {total} instances, {len(bad)} failures")


def test_criterion_3_cells():
    assert check_cells()


# ---------------------------------------------------------------- 4


def involution_pair_signs(gamma_sign):
    """Signs of the arrows from (a x<>y b) back to itself, depth 5."""
    r = sign_sweep(max_corollas=2, depth=5, table=sign_table(gamma_sign))
    for s, t, signs, count in r.pairs:
        if s == t and len(s.type) == 3 and str(s).startswith("(a"):
            return signs, count
    raise AssertionError("involution pair missing from the pool")


def check_signs():
    main_run = sign_sweep(max_corollas=3, depth=5)
    sweep_ok = not main_run.violations
    control_signs, _ = involution_pair_signs(+1)
    literal_control = len(control_signs) > 1
    beta_control = sign_sweep(max_corollas=4, depth=3, sizes=(2,), table=sign_table(-1, -1))
    ok = sweep_ok and literal_control
    detail = (f"{main_run.checked_pairs} pairs, {main_run.arrows} arrows, {len(main_run.violations)} violations; "
              f"gamma=+1 control violations on the involution pair: {int(literal_control)}; "
              f"beta=-1 control violations: {len(beta_control.violations)}")
    return report(4, "sign coherence sweep and negative control", ok, detail), sweep_ok, literal_control, beta_control


def test_criterion_4_sign_sweep_has_no_violations():
    r = sign_sweep(max_corollas=3, depth=5)
    assert r.violations == []
    assert r.checked_pairs > 1000


def test_criterion_4_beta_sign_control_detects_violations():
    r = sign_sweep(max_corollas=4, depth=3, sizes=(2,), table=sign_table(-1, -1))
    assert r.violations


def test_criterion_4_gamma_plus_one_control():
    # With gamma counted +1 every arrow has sign +1, so no pair can carry two
    # signs.  The control as stated cannot fire; this test records that.
    ok, *_ = check_signs()
    assert ok


# ---------------------------------------------------------------- 5


def _cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


CLI_GOLDENS = [
    (("reduce", "--stage", "1", os.path.join(DATA, "identity_action.obj")),
     "(a[x#1->x, y->y] x#1<>y#1 b[y#1->y, z->z])\n"),
    (("typecheck", os.path.join(DATA, "three_corollas.tree")), "{x1,x2,x3,x4,y1,y4,z2,z3}\n"),
    (("words", os.path.join(DATA, "three_corollas.tree"), "--root", "y4"), "((b a) c)\n((b c) a)\n"),
    (("reduce", "--stage", "2", "--root", "y4", os.path.join(DATA, "chain_beta.arrow")),
     "theta<y2;y3>(b@y4, a@x5, c@z1)\n"),
]


def check_goldens():
    bad = [argv[0] for argv, want in CLI_GOLDENS if _cli(*argv) != (0, want)]
    return report(5, "worked examples through the command line", not bad,
                  f"{len(CLI_GOLDENS)} goldens, {len(bad)} mismatches")


def test_criterion_5_cli_goldens():
    assert check_goldens()


# ---------------------------------------------------------------- 6


def check_delta():
    objs = [W for group in object_pool(3) for W in group]
    extra = []

    @settings(max_examples=100, database=None, derandomize=True)
    @given(objects(max_corollas=3, actions=2))
    def more(W):
        extra.append(nf_object(W))

    more()
    arrows = list(itertools.islice(arrow_pool(3, 3), 0, 20000, 10))
    bad = [W for W in objs + extra if delta(delta_inv(W)) != W]
    bad += [a for a in arrows if delta_arrow(delta_inv_arrow(a)) != a]
    return report(6, "tree translation round-trips", not bad and len(objs) + len(extra) >= 100 and len(arrows) >= 100,
                  f"{len(objs) + len(extra)} objects, {len(arrows)} arrows, {len(bad)} failures")


def test_criterion_6_delta_round_trip():
    assert check_delta()


# ---------------------------------------------------------------- 7


def _roots(phi):
    a0 = red0_arrow(phi)
    if isinstance(a0.source, Unit):
        return [None]
    return sorted(delta_inv(red1_object(a0.source)).tree.fv)[:3]


def decision_pairs():
    out = []
    for c in CELLS:
        for _, pair in c.instances():
            out.append(pair)
    for group in object_pool(3)[::40]:
        src = group[0]
        for tgt in group[:3]:
            arrows = list(itertools.islice(enumerate_arrows(src, tgt, 3), 6))
            out += list(zip(arrows, arrows[1:]))
        paths = list(itertools.islice(arrow_pool(3, 2), 0, 400, 80))
        out += list(zip(paths, paths[1:]))
    return out


def check_determinism():
    flips, n, alts = [], 0, []
    for phi, psi in decision_pairs():
        verdicts = set()
        k = 0
        for root in _roots(phi):
            for kind in SKELETONS:
                v = decide_equal(phi, psi, root=root, skeleton=skeleton_choice(kind, seed=7))
                verdicts.add((v.equal, v.stage))
                k += 1
        alts.append(k)
        n += 1
        if len(verdicts) > 1:
            flips.append((str(phi), str(psi)))
    return report(7, "verdicts do not depend on root or skeleton", not flips and min(alts) >= 4,
                  f"{n} pairs, at least {min(alts)} alternatives each, {len(flips)} flips")


def test_criterion_7_determinism():
    assert check_determinism()


if __name__ == "__main__":
    check_confluence()
    check_typing()
    check_cells()
    check_signs()
    check_goldens()
    check_delta()
    check_determinism()
