"""Exact tangle invariants over Z[A, A^-1], a toy 1-dimensional TQFT, and
numerical Knizhnik-Zamolodchikov transport along braids."""

from __future__ import annotations

from .cobord1 import Matching1, circle1, compose1, cap1, cup1, disjoint_union1, identity1, tqft1_eval
from .evaluator import TheoryData, check_theory, default_theory, eval_dense, eval_diagram, link_invariant
from .oracles import bracket_statesum, jones_skein, jones_skein_in_A
from .parser import DiagramSource, DiagramValidationError, ParseError, parse_braid, parse_sliced, serialize
from .ring import LaurentPoly, RingMatrix, mat_mul, mat_tensor
from .tangle import (
    Generator,
    Move,
    SignWord,
    SlicedDiagram,
    apply_move,
    braid_to_diagram,
    closure,
    compose,
    insert_kink,
    mirror,
    random_equivalent,
    tensor,
    validate,
    writhe,
)

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "RingMatrix",
    "mat_mul",
    "mat_tensor",
    "Matching1",
    "identity1",
    "cup1",
    "cap1",
    "circle1",
    "compose1",
    "disjoint_union1",
    "tqft1_eval",
    "SignWord",
    "Generator",
    "SlicedDiagram",
    "Move",
    "validate",
    "compose",
    "tensor",
    "mirror",
    "writhe",
    "apply_move",
    "insert_kink",
    "random_equivalent",
    "braid_to_diagram",
    "closure",
    "ParseError",
    "DiagramValidationError",
    "DiagramSource",
    "parse_braid",
    "parse_sliced",
    "serialize",
    "TheoryData",
    "default_theory",
    "eval_diagram",
    "eval_dense",
    "check_theory",
    "link_invariant",
    "bracket_statesum",
    "jones_skein",
    "jones_skein_in_A",
]
