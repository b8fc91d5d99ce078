"""Shared conventions: sign alphabet, generator kinds, index layout, smoothings.

Every module that turns diagrams into linear algebra (the matrix evaluator,
the dense reference path and the state-sum oracle) reads its conventions from
here, so none of them can silently drift from the others.
"""

from __future__ import annotations

from typing import Sequence

PLUS = "+"
MINUS = "-"
SIGNS = (PLUS, MINUS)

ID = "id"
CUP = "cup"
CAP = "cap"
OVER = "over"
UNDER = "under"
KINDS = (ID, CUP, CAP, OVER, UNDER)
CROSSINGS = (OVER, UNDER)

# text tokens: id+, cup-, cap+, x+-, y-- ...
KIND_TOKEN = {ID: "id", CUP: "cup", CAP: "cap", OVER: "x", UNDER: "y"}
TOKEN_KIND = {v: k for k, v in KIND_TOKEN.items()}


def flip(sign: str) -> str:
    return MINUS if sign == PLUS else PLUS


def flat_index(digits: Sequence[int], dim: int) -> int:
    """Left-factor-major position of a tensor basis vector."""
    k = 0
    for d in digits:
        k = k * dim + d
    return k


def digits_of(index: int, length: int, dim: int) -> tuple[int, ...]:
    out = [0] * length
    for pos in range(length - 1, -1, -1):
        index, out[pos] = divmod(index, dim)
    return tuple(out)


def crossing_sign(kind: str, left_in: str, right_in: str) -> int:
    """Writhe contribution of a crossing generator.

    CrossOver counts +1 when both strands run the same vertical direction and
    -1 otherwise; CrossUnder is the negation.
    """
    agree = 1 if left_in == right_in else -1
    return agree if kind == OVER else -agree


# Kauffman smoothing weights, as exponents of A:
#   (weight of the vertical smoothing ||, weight of the cup-cap smoothing =)
SMOOTHING_EXPONENTS = {OVER: (1, -1), UNDER: (-1, 1)}

# theory-data field consulted for each generator kind
THEORY_FIELD = {CUP: "cup", CAP: "cap", OVER: "r_over", UNDER: "r_under"}
