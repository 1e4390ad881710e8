import io
import os

import pytest

from cyclic_coherence.cells import cell
from cyclic_coherence.cli import main
from cyclic_coherence.parse import parse_arrow, parse_object

DATA = os.path.join(os.path.dirname(__file__), "data")
TREE3 = os.path.join(DATA, "three_corollas.tree")
CHAIN_BETA = os.path.join(DATA, "chain_beta.arrow")
ID_ACTION = os.path.join(DATA, "identity_action.obj")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


GOLDENS = [
    (("typecheck", "a{x,y}"), "{x,y}\n"),
    (("typecheck", TREE3), "{x1,x2,x3,x4,y1,y4,z2,z3}\n"),
    (("words", TREE3, "--root", "y4"), "((b a) c)\n((b c) a)\n"),
    (("reduce", "--stage", "1", ID_ACTION), "(a[x#1->x, y->y] x#1<>y#1 b[y#1->y, z->z])\n"),
    (("reduce", "--stage", "0", ID_ACTION), "(a{x,y} x<>y b{y,z})^[y->y, z->z]\n"),
    (("reduce", "--stage", "2", "--root", "y4", CHAIN_BETA), "theta<y2;y3>(b@y4, a@x5, c@z1)\n"),
    (("reduce", "--stage", "3", "--root", "y4", CHAIN_BETA), "theta<2;3>(b/3, a/4, c/2)\n"),
    (("reduce", "--stage", "0", "(id{x,u} x<>y id{y,v})"), "id{u,v}\n"),
]


@pytest.mark.parametrize("argv,expected", GOLDENS, ids=[" ".join(os.path.basename(a) for a in g[0]) for g in GOLDENS])
def test_goldens(argv, expected):
    assert run(*argv) == (0, expected)


def test_arrow_typecheck_prints_ends():
    code, text = run("typecheck", "gamma<x,y>(a{x,p}, b{y,q})")
    assert code == 0
    assert text.splitlines() == ["{p,q}", "(a{p,x} x<>y b{q,y}) => (b{q,y} y<>x a{p,x})"]


def test_decide_pentagon_and_decagon(tmp_path):
    for name, v in (("beta-pentagon", (0, 0, 0, 0)), ("beta-gamma-decagon", (1, 2, 0, 3))):
        left, right = cell(name).build(v)
        l, r = tmp_path / "l.arrow", tmp_path / "r.arrow"
        l.write_text(str(left))
        r.write_text(str(right))
        code, text = run("decide", str(l), str(r), "--trace")
        assert code == 0
        lines = text.splitlines()
        assert lines[0] == "EQUAL"
        assert [ln.split(":")[0] for ln in lines if not ln.startswith(" ")][1:] == [
            "input", "red0", "red1", "tree", "red2", "red3"]


def test_decide_not_parallel():
    code, text = run("decide", "gamma<x,y>(a{x,p}, b{y,q})", "1((a{x,p} x<>y b{y,q}))")
    assert (code, text) == (1, "NOT-PARALLEL at input\n")


def test_input_errors(capsys):
    code, _ = run("typecheck", "(a{x,p} x<>y b{y,p})")
    assert code == 2
    assert "p" in capsys.readouterr().err
    code, _ = run("typecheck", "a{x,y")
    assert code == 2
    assert "line 1" in capsys.readouterr().err
    assert run("reduce", "--root", "nope", CHAIN_BETA)[0] == 2
    assert run("reduce", "--skeleton", "backwards", CHAIN_BETA)[0] == 2
    assert run("typecheck", "id{x,y}", "--mode", "strict")[0] == 2


def test_sweep_exit_codes():
    code, text = run("sweep", "--corollas", "2", "--depth", "3")
    assert code == 0
    assert text.startswith("SUMMARY") and text.rstrip().endswith("violations=0")
    code, text = run("sweep", "--corollas", "4", "--depth", "3", "--entries", "2", "--beta-sign", "-1")
    assert code == 1 and "VIOLATION" in text
    assert run("sweep", "--corollas", "5")[0] == 3
    assert run("sweep", "--corollas", "3", "--depth", "5", "--limit", "50")[0] == 3


def test_sweep_full_lists_pairs():
    code, text = run("sweep", "--corollas", "1", "--depth", "2", "--full")
    assert code == 0
    assert text.splitlines()[0].startswith("PAIR ")


def test_cells_command():
    code, text = run("cells", "gamma-involution")
    assert code == 0
    assert text.splitlines() == [f"gamma-involution [{v}] EQUAL" for v in ("0,0", "1,2", "3,1", "2,3")]


def test_deterministic_output():
    for argv, _ in GOLDENS:
        assert run(*argv) == run(*argv)
    assert run("sweep", "--corollas", "3", "--depth", "3", "--full") == run(
        "sweep", "--corollas", "3", "--depth", "3", "--full")


def test_reduce_output_reparses():
    for stage in ("0", "1"):
        code, text = run("reduce", "--stage", stage, ID_ACTION)
        W = parse_object(text)
        assert run("typecheck", text.strip())[0] == 0
        assert W.type == parse_object(open(ID_ACTION).read()).type
    for stage in ("0", "1"):
        code, text = run("reduce", "--stage", stage, CHAIN_BETA)
        a = parse_arrow(text)
        assert a.ends
