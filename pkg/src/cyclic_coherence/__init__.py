"""Coherence for free cyclic operads: term calculus, staged reductions and a
decision procedure for equality of arrow terms."""

from .bijections import Bijection, BijectionError, compose, fresh_name, rename, restrict_core
from .parse import ParseError, parse_arrow, parse_bijection, parse_object
from .terms import (
    AAct,
    Act,
    Beta,
    BetaInv,
    Comp,
    Gamma,
    HComp,
    Id,
    Iota,
    Nu,
    Param,
    TermTypeError,
    Unit,
    VComp,
    generator_sign,
    vcomp,
)
from .alpha import alpha_eq, witness
from .reduction0 import red0_arrow, red0_object
from .reduction1 import nf_object, normalize, red1
from .reduction2 import red2
from .reduction3 import red3
from .trees import UnrootedTree, delta, delta_inv, parse_tree
from .engine import Verdict, decide_equal, pipeline, sign_sweep
from .cells import CELLS

__all__ = [
    "AAct", "Act", "Beta", "BetaInv", "Bijection", "BijectionError", "CELLS", "Comp",
    "Gamma", "HComp", "Id", "Iota", "Nu", "Param", "ParseError", "TermTypeError",
    "Unit", "UnrootedTree", "VComp", "Verdict", "alpha_eq", "compose", "decide_equal",
    "delta", "delta_inv", "fresh_name", "generator_sign", "nf_object", "normalize",
    "parse_arrow", "parse_bijection", "parse_object", "parse_tree", "pipeline",
    "red0_arrow", "red0_object", "red1", "red2", "red3", "rename", "restrict_core",
    "sign_sweep", "vcomp", "witness",
]
