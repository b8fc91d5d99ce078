"""Oriented tangles as sliced diagrams.

Objects are sign words; ``+`` at a level means the strand crosses that level
moving upward. A :class:`SlicedDiagram` is a bottom word plus slices read
bottom to top, each slice a left-to-right row of elementary generators whose
input words concatenate to the word below the slice.

Indices in this module are 0-based: ``level`` k is the word above the first
k slices (level 0 is the bottom word), and ``slices[k]`` sits between levels
k and k+1.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .conventions import (
    CAP,
    CROSSINGS,
    CUP,
    ID,
    KINDS,
    MINUS,
    OVER,
    PLUS,
    SIGNS,
    UNDER,
    crossing_sign,
    flip,
)

__all__ = [
    "SignWord",
    "Generator",
    "SlicedDiagram",
    "ValidationReport",
    "Move",
    "MoveError",
    "BoundaryMismatch",
    "validate",
    "identity_diagram",
    "empty_diagram",
    "compose",
    "tensor",
    "involute",
    "reflect",
    "mirror",
    "writhe",
    "apply_move",
    "insert_kink",
    "random_equivalent",
    "braid_to_diagram",
    "closure",
]


class BoundaryMismatch(ValueError):
    pass


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class SignWord:
    signs: tuple[str, ...] = ()

    def __post_init__(self):
        for s in self.signs:
            if s not in SIGNS:
                raise ValueError(f"invalid sign {s!r}")

    @classmethod
    def parse(cls, text: str) -> SignWord:
        return cls(tuple(text))

    def __str__(self) -> str:
        return "".join(self.signs)

    def __repr__(self) -> str:
        return f"SignWord({str(self)!r})"

    def __len__(self) -> int:
        return len(self.signs)

    def __iter__(self) -> Iterator[str]:
        return iter(self.signs)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return SignWord(self.signs[k])
        return self.signs[k]

    def __add__(self, other: SignWord) -> SignWord:
        return SignWord(self.signs + tuple(other.signs))


def W(text: str) -> SignWord:
    """Shorthand: ``W("+-")``."""
    return SignWord.parse(text)


@dataclass(frozen=True)
class Generator:
    """One elementary tangle.

    ``signs`` holds one sign for id/cup/cap and the two input signs for a
    crossing. ``Generator(CUP, ("+",))`` has outputs ``(+, -)``; a crossing
    with inputs ``(s, t)`` has outputs ``(t, s)``. For OVER the strand
    entering bottom-left and leaving top-right passes over.
    """

    kind: str
    signs: tuple[str, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        want = 2 if self.kind in CROSSINGS else 1
        if len(self.signs) != want or any(s not in SIGNS for s in self.signs):
            raise ValueError(f"{self.kind} needs {want} sign(s), got {self.signs!r}")

    @property
    def inputs(self) -> tuple[str, ...]:
        s = self.signs
        if self.kind == ID:
            return s
        if self.kind == CUP:
            return ()
        if self.kind == CAP:
            return (s[0], flip(s[0]))
        return s

    @property
    def outputs(self) -> tuple[str, ...]:
        s = self.signs
        if self.kind == ID:
            return s
        if self.kind == CUP:
            return (s[0], flip(s[0]))
        if self.kind == CAP:
            return ()
        return (s[1], s[0])

    @property
    def is_identity(self) -> bool:
        return self.kind == ID

    @property
    def is_crossing(self) -> bool:
        return self.kind in CROSSINGS

    def __repr__(self) -> str:
        return f"{self.kind}{''.join(self.signs)}"


def Id(s: str) -> Generator:
    return Generator(ID, (s,))


def Cup(s: str) -> Generator:
    return Generator(CUP, (s,))


def Cap(s: str) -> Generator:
    return Generator(CAP, (s,))


def Over(s: str, t: str) -> Generator:
    return Generator(OVER, (s, t))


def Under(s: str, t: str) -> Generator:
    return Generator(UNDER, (s, t))


def identity_slice(word: Iterable[str]) -> tuple[Generator, ...]:
    return tuple(Id(s) for s in word)


Slice = tuple[Generator, ...]


@dataclass(frozen=True)
class SlicedDiagram:
    bottom: SignWord
    slices: tuple[Slice, ...] = ()

    def __post_init__(self):
        if not isinstance(self.bottom, SignWord):
            object.__setattr__(self, "bottom", SignWord(tuple(self.bottom)))
        object.__setattr__(self, "slices", tuple(tuple(sl) for sl in self.slices))

    def levels(self) -> list[SignWord]:
        """Words at every level, assuming the diagram is valid."""
        words = [self.bottom]
        for sl in self.slices:
            words.append(SignWord(tuple(s for g in sl for s in g.outputs)))
        return words

    def source(self) -> SignWord:
        return self.bottom

    def target(self) -> SignWord:
        if not self.slices:
            return self.bottom
        return SignWord(tuple(s for g in self.slices[-1] for s in g.outputs))

    def is_closed(self) -> bool:
        return len(self.source()) == 0 and len(self.target()) == 0

    def crossings(self) -> int:
        return sum(1 for sl in self.slices for g in sl if g.is_crossing)

    def __len__(self) -> int:
        return len(self.slices)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    slice_no: int | None = None  # 1-based
    position: int | None = None  # 1-based generator position within the slice
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(d: SlicedDiagram) -> ValidationReport:
    """Check every slice interface; report the first mismatch, never raise."""
    word = tuple(d.bottom)
    for k, sl in enumerate(d.slices):
        col = 0
        for j, g in enumerate(sl):
            if not isinstance(g, Generator):
                return ValidationReport(False, k + 1, j + 1, f"not a generator: {g!r}")
            need = g.inputs
            have = word[col:col + len(need)]
            if have != need:
                if len(have) < len(need):
                    msg = f"{g!r} needs inputs {''.join(need)} but only {len(have)} strand(s) remain"
                elif g.kind == CAP:
                    msg = f"{g!r} needs opposite signs {''.join(need)}, found {''.join(have)}"
                else:
                    msg = f"{g!r} needs inputs {''.join(need)}, found {''.join(have)}"
                return ValidationReport(False, k + 1, j + 1, msg)
            col += len(need)
        if col != len(word):
            return ValidationReport(
                False, k + 1, len(sl) + 1,
                f"slice consumes {col} of {len(word)} strands",
            )
        word = tuple(s for g in sl for s in g.outputs)
    return ValidationReport(True)


def _require_valid(d: SlicedDiagram) -> None:
    rep = validate(d)
    if not rep.ok:
        raise ValueError(f"invalid diagram at slice {rep.slice_no}: {rep.message}")


def empty_diagram() -> SlicedDiagram:
    return SlicedDiagram(SignWord(), ())


def identity_diagram(w: SignWord | str) -> SlicedDiagram:
    w = W(w) if isinstance(w, str) else w
    return SlicedDiagram(w, (identity_slice(w),))


def compose(t2: SlicedDiagram, t1: SlicedDiagram) -> SlicedDiagram:
    """``t2`` stacked on top of ``t1``."""
    if t1.target() != t2.bottom:
        raise BoundaryMismatch(f"cannot compose: target {t1.target()} != source {t2.bottom}")
    return SlicedDiagram(t1.bottom, t1.slices + t2.slices)


def tensor(t1: SlicedDiagram, t2: SlicedDiagram) -> SlicedDiagram:
    """Juxtapose ``t2`` to the right of ``t1``; the shorter one is padded on top."""
    n = max(len(t1.slices), len(t2.slices))
    lv1, lv2 = t1.levels(), t2.levels()
    slices = []
    for k in range(n):
        left = t1.slices[k] if k < len(t1.slices) else identity_slice(lv1[-1])
        right = t2.slices[k] if k < len(t2.slices) else identity_slice(lv2[-1])
        slices.append(left + right)
    return SlicedDiagram(t1.bottom + t2.bottom, tuple(slices))


def involute(w: SignWord) -> SignWord:
    return SignWord(tuple(flip(s) for s in w))


def _reflect_gen(g: Generator) -> Generator:
    if g.kind == CUP:
        return Cap(g.signs[0])
    if g.kind == CAP:
        return Cup(g.signs[0])
    if g.kind == OVER:
        return Under(*g.outputs)
    if g.kind == UNDER:
        return Over(*g.outputs)
    return g


def reflect(d: SlicedDiagram) -> SlicedDiagram:
    """Reflect top-to-bottom and reverse every strand; source and target swap."""
    return SlicedDiagram(d.target(), tuple(tuple(_reflect_gen(g) for g in sl) for sl in reversed(d.slices)))


def mirror(d: SlicedDiagram) -> SlicedDiagram:
    """Swap every over-crossing with the corresponding under-crossing."""
    swap = {OVER: UNDER, UNDER: OVER}
    return SlicedDiagram(
        d.bottom,
        tuple(tuple(Generator(swap[g.kind], g.signs) if g.is_crossing else g for g in sl) for sl in d.slices),
    )


def writhe(d: SlicedDiagram) -> int:
    return sum(crossing_sign(g.kind, *g.signs) for sl in d.slices for g in sl if g.is_crossing)


# ---------------------------------------------------------------------------
# slice layout helpers


@dataclass(frozen=True)
class _Placed:
    index: int
    gen: Generator
    in_start: int
    out_start: int


def _layout(sl: Slice) -> list[_Placed]:
    out = []
    i = o = 0
    for k, g in enumerate(sl):
        out.append(_Placed(k, g, i, o))
        i += len(g.inputs)
        o += len(g.outputs)
    return out


def _single_active(sl: Slice) -> _Placed | None:
    """The only non-identity generator of a slice, if there is exactly one."""
    active = [p for p in _layout(sl) if not p.gen.is_identity]
    return active[0] if len(active) == 1 else None


def _slice_with(word: Sequence[str], col: int, width: int, gens: Sequence[Generator]) -> Slice:
    """Identity slice on ``word`` with columns ``[col, col+width)`` replaced by ``gens``."""
    return identity_slice(word[:col]) + tuple(gens) + identity_slice(word[col + width:])


# ---------------------------------------------------------------------------
# equivalence moves


class Move(str, enum.Enum):
    R2 = "R2"
    R3 = "R3"
    ZIGZAG = "ZIGZAG"
    SLIDE = "SLIDE"
    R1 = "R1"


INVARIANCE_MOVES = (Move.R2, Move.R3, Move.ZIGZAG, Move.SLIDE)


def apply_move(
    d: SlicedDiagram,
    move: Move | str,
    location: tuple[int, int],
    direction: str = "insert",
    variant: int = 0,
) -> SlicedDiagram:
    """Apply one elementary equivalence move.

    ``location`` is ``(level, column)`` for insertions, ``(slice, column)``
    for R2/ZIGZAG removal and R3, and ``(slice, generator_index)`` for SLIDE.
    SLIDE moves the generator up into the next slice for ``"insert"`` and down
    into the previous slice for ``"remove"``. ``variant`` picks the crossing
    order for R2 (0: over first) and the bend side for ZIGZAG (0: right), and
    the kink sign for R1 (0: positive).
    """
    move = Move(move)
    if direction not in ("insert", "remove"):
        raise ValueError(f"direction must be 'insert' or 'remove', not {direction!r}")
    _require_valid(d)
    k, c = location
    if move is Move.R2:
        return _r2_insert(d, k, c, variant) if direction == "insert" else _r2_remove(d, k, c)
    if move is Move.ZIGZAG:
        return _zigzag_insert(d, k, c, variant) if direction == "insert" else _zigzag_remove(d, k, c)
    if move is Move.R3:
        return _r3(d, k, c)
    if move is Move.SLIDE:
        if direction == "remove":
            return _slide_down(d, k, c)
        n = len(d.slices)
        r = reflect(d)
        return reflect(_slide_down(r, n - 1 - k, c))
    if direction == "insert":
        return insert_kink(d, k, c, positive=(variant == 0))
    return _kink_remove(d, k, c)


def _check_level(d: SlicedDiagram, level: int) -> SignWord:
    if not 0 <= level <= len(d.slices):
        raise MoveError(f"level {level} out of range 0..{len(d.slices)}")
    return d.levels()[level]


def _check_slice(d: SlicedDiagram, k: int, count: int) -> None:
    if not (0 <= k and k + count <= len(d.slices)):
        raise MoveError(f"slices {k}..{k + count - 1} out of range")


def _splice(d: SlicedDiagram, start: int, stop: int, new: Sequence[Slice]) -> SlicedDiagram:
    return SlicedDiagram(d.bottom, d.slices[:start] + tuple(new) + d.slices[stop:])


def _r2_insert(d: SlicedDiagram, level: int, col: int, variant: int) -> SlicedDiagram:
    w = _check_level(d, level)
    if not 0 <= col < len(w) - 1:
        raise MoveError(f"R2 needs two strands at columns {col}, {col + 1}")
    s, t = w[col], w[col + 1]
    first, second = (Over, Under) if variant == 0 else (Under, Over)
    a = _slice_with(w, col, 2, [first(s, t)])
    b = _slice_with(w, col, 2, [second(t, s)])
    return _splice(d, level, level, [a, b])


def _r2_remove(d: SlicedDiagram, k: int, col: int) -> SlicedDiagram:
    _check_slice(d, k, 2)
    p, q = _single_active(d.slices[k]), _single_active(d.slices[k + 1])
    if (
        p is None or q is None or not p.gen.is_crossing or not q.gen.is_crossing
        or p.in_start != col or q.in_start != col or p.gen.kind == q.gen.kind
    ):
        raise MoveError(f"no cancelling crossing pair at slice {k}, column {col}")
    return _splice(d, k, k + 2, [])


def _r3(d: SlicedDiagram, k: int, col: int) -> SlicedDiagram:
    """Pass a strand across a crossing: x_a y_b x_c -> y_c x_b y_a on columns col, col+1.

    With x, y the two adjacent column pairs, the pattern needs a consistent
    top/middle/bottom ordering of the three strands, which fails only for
    the cyclic kinds (over, under, over) and (under, over, under).
    """
    _check_slice(d, k, 3)
    ps = [_single_active(d.slices[k + i]) for i in range(3)]
    if any(p is None or not p.gen.is_crossing for p in ps):
        raise MoveError(f"R3 needs three single-crossing slices at {k}")
    kinds = [p.gen.kind for p in ps]
    cols = [p.in_start for p in ps]
    if cols not in ([col, col + 1, col], [col + 1, col, col + 1]):
        raise MoveError(f"no R3 pattern at slice {k}, column {col}")
    if kinds[0] == kinds[2] != kinds[1]:
        raise MoveError(f"crossings at slice {k} form a cyclic triangle, not an R3 pattern")
    new_cols = [col + 1, col, col + 1] if cols[0] == col else [col, col + 1, col]
    w = list(d.levels()[k])
    new = []
    for nc, kind in zip(new_cols, reversed(kinds)):
        g = Generator(kind, (w[nc], w[nc + 1]))
        new.append(_slice_with(w, nc, 2, [g]))
        w[nc], w[nc + 1] = w[nc + 1], w[nc]
    return _splice(d, k, k + 3, new)


def _zigzag_insert(d: SlicedDiagram, level: int, col: int, variant: int) -> SlicedDiagram:
    w = _check_level(d, level)
    if not 0 <= col < len(w):
        raise MoveError(f"no strand at column {col}")
    s = w[col]
    if variant == 0:
        # cup on the right, cap joins the strand to the cup's left leg
        a = _slice_with(w, col + 1, 0, [Cup(flip(s))])
        b = _slice_with(list(w[:col + 1]) + [flip(s), s] + list(w[col + 1:]), col, 2, [Cap(s)])
    else:
        a = _slice_with(w, col, 0, [Cup(s)])
        b = _slice_with(list(w[:col]) + [s, flip(s)] + list(w[col:]), col + 1, 2, [Cap(flip(s))])
    return _splice(d, level, level, [a, b])


def _zigzag_remove(d: SlicedDiagram, k: int, col: int) -> SlicedDiagram:
    """Remove the S-bend whose straightened strand ends at ``col`` above slice k+1."""
    _check_slice(d, k, 2)
    p, q = _single_active(d.slices[k]), _single_active(d.slices[k + 1])
    if p is None or q is None or p.gen.kind != CUP or q.gen.kind != CAP:
        raise MoveError(f"no S-bend at slice {k}")
    cup_at, cap_at = p.out_start, q.in_start
    if (cup_at, cap_at) in ((col + 1, col), (col, col + 1)):
        return _splice(d, k, k + 2, [])
    raise MoveError(f"no S-bend at slice {k}, column {col}")


def _slide_down(d: SlicedDiagram, k: int, j: int) -> SlicedDiagram:
    """Move generator ``j`` of slice ``k`` into slice ``k-1``."""
    if not 1 <= k < len(d.slices):
        raise MoveError(f"cannot slide slice {k} down")
    upper, lower = d.slices[k], d.slices[k - 1]
    if not 0 <= j < len(upper):
        raise MoveError(f"no generator {j} in slice {k}")
    g = upper[j]
    if g.is_identity:
        raise MoveError("sliding an identity strand is a no-op")
    up = _layout(upper)[j]
    a, m = up.in_start, len(g.inputs)
    low = _layout(lower)
    if m:
        # the lower slice must feed columns [a, a+m) through consecutive identities
        feeding = [p for p in low if p.gen.outputs and a <= p.out_start < a + m]
        if (
            len(feeding) != m
            or any(not p.gen.is_identity for p in feeding)
            or feeding[-1].index - feeding[0].index != m - 1
        ):
            raise MoveError(f"inputs of {g!r} are not free strands in slice {k - 1}")
        first = feeding[0].index
        new_lower = lower[:first] + (g,) + lower[first + m:]
    else:
        cut = None
        cum = 0
        for idx in range(len(lower) + 1):
            if cum == a:
                cut = idx
                break
            if idx < len(lower):
                cum += len(lower[idx].outputs)
        if cut is None:
            raise MoveError(f"column {a} falls inside a generator of slice {k - 1}")
        new_lower = lower[:cut] + (g,) + lower[cut:]
    new_upper = upper[:j] + identity_slice(g.outputs) + upper[j + 1:]
    return _splice(d, k - 1, k + 1, [new_lower, new_upper])


def insert_kink(d: SlicedDiagram, level: int, col: int, positive: bool = True) -> SlicedDiagram:
    """Insert a Reidemeister-I curl with writhe +1 (or -1) on the strand at ``col``."""
    w = _check_level(d, level)
    if not 0 <= col < len(w):
        raise MoveError(f"no strand at column {col}")
    s = w[col]
    a = _slice_with(w, col + 1, 0, [Cup(flip(s))])
    mid = list(w[:col + 1]) + [flip(s), s] + list(w[col + 1:])
    # inputs (s, -s) disagree in direction, so UNDER has writhe +1 here
    cross = (Under if positive else Over)(s, flip(s))
    b = _slice_with(mid, col, 2, [cross])
    mid[col], mid[col + 1] = mid[col + 1], mid[col]
    c = _slice_with(mid, col, 2, [Cap(flip(s))])
    return _splice(d, level, level, [a, b, c])


def _kink_remove(d: SlicedDiagram, k: int, col: int) -> SlicedDiagram:
    _check_slice(d, k, 3)
    ps = [_single_active(d.slices[k + i]) for i in range(3)]
    if (
        any(p is None for p in ps)
        or [p.gen.kind for p in ps][0] != CUP
        or not ps[1].gen.is_crossing
        or ps[2].gen.kind != CAP
        or (ps[0].out_start, ps[1].in_start, ps[2].in_start) != (col + 1, col, col)
    ):
        raise MoveError(f"no kink at slice {k}, column {col}")
    return _splice(d, k, k + 3, [])


# ---------------------------------------------------------------------------
# random move application


def move_sites(d: SlicedDiagram, moves: Sequence[Move] = INVARIANCE_MOVES) -> list[tuple]:
    """All applicable (move, location, direction, variant) tuples."""
    sites: list[tuple] = []
    levels = d.levels()
    n = len(d.slices)
    for move in moves:
        if move is Move.R2:
            for lv, w in enumerate(levels):
                for c in range(len(w) - 1):
                    for v in (0, 1):
                        sites.append((move, (lv, c), "insert", v))
            for k in range(n - 1):
                p = _single_active(d.slices[k])
                if p is not None and p.gen.is_crossing:
                    sites.append((move, (k, p.in_start), "remove", 0))
        elif move is Move.ZIGZAG:
            for lv, w in enumerate(levels):
                for c in range(len(w)):
                    for v in (0, 1):
                        sites.append((move, (lv, c), "insert", v))
            for k in range(n - 1):
                p = _single_active(d.slices[k])
                if p is not None and p.gen.kind == CUP:
                    for c in (p.out_start - 1, p.out_start):
                        sites.append((move, (k, c), "remove", 0))
        elif move is Move.R3:
            for k in range(n - 2):
                p = _single_active(d.slices[k])
                if p is not None and p.gen.is_crossing:
                    for c in (p.in_start, p.in_start - 1):
                        sites.append((move, (k, c), "insert", 0))
        elif move is Move.SLIDE:
            for k in range(n):
                for j, g in enumerate(d.slices[k]):
                    if g.is_identity:
                        continue
                    if k + 1 < n:
                        sites.append((move, (k, j), "insert", 0))
                    if k > 0:
                        sites.append((move, (k, j), "remove", 0))
        elif move is Move.R1:
            for lv, w in enumerate(levels):
                for c in range(len(w)):
                    for v in (0, 1):
                        sites.append((move, (lv, c), "insert", v))
    return sites


def random_equivalent(
    d: SlicedDiagram,
    n_moves: int,
    seed: int | None = None,
    moves: Sequence[Move] = INVARIANCE_MOVES,
) -> SlicedDiagram:
    """Apply ``n_moves`` random applicable moves; deterministic for a given seed."""
    rng = random.Random(seed)
    moves = list(moves)
    done = 0
    while done < n_moves:
        order = moves[:]
        rng.shuffle(order)
        for move in order:
            sites = move_sites(d, [move])
            rng.shuffle(sites)
            for mv, loc, direction, variant in sites:
                try:
                    d = apply_move(d, mv, loc, direction, variant)
                except MoveError:
                    continue
                break
            else:
                continue
            break
        else:
            raise MoveError("no applicable move")
        done += 1
    return d


# ---------------------------------------------------------------------------
# braids and closures


def braid_to_diagram(word: Sequence[int], n_strands: int, orientation: str = "all-up") -> SlicedDiagram:
    """One slice per letter: +i is OVER on columns i, i+1 (1-based), -i is UNDER.

    ``alternating`` starts from ``+-+-...`` so that plat closures exist.
    """
    if orientation == "all-up":
        w = [PLUS] * n_strands
    elif orientation == "all-down":
        w = [MINUS] * n_strands
    elif orientation == "alternating":
        w = [PLUS if k % 2 == 0 else MINUS for k in range(n_strands)]
    else:
        raise ValueError(f"orientation must be 'all-up', 'all-down' or 'alternating', not {orientation!r}")
    bottom = SignWord(tuple(w))
    slices = []
    for letter in word:
        i = abs(letter)
        if letter == 0 or i >= n_strands:
            raise ValueError(f"letter {letter} out of range for {n_strands} strands")
        g = (Over if letter > 0 else Under)(w[i - 1], w[i])
        slices.append(_slice_with(w, i - 1, 2, [g]))
        w[i - 1], w[i] = w[i], w[i - 1]
    if not slices:
        slices.append(identity_slice(w))
    return SlicedDiagram(bottom, tuple(slices))


def _cap_layers(word: SignWord, name: str) -> list[Slice]:
    """Slices capping ``word`` off with a planar pairing, innermost caps first."""
    partner: dict[int, int] = {}
    stack: list[int] = []
    for i, sgn in enumerate(word):
        if stack and word[stack[-1]] != sgn:
            j = stack.pop()
            partner[i], partner[j] = j, i
        else:
            stack.append(i)
    if stack:
        raise ValueError(f"plat closure needs the {name} to pair into (s, -s) caps, got {word}")
    alive = list(range(len(word)))
    layers = []
    while alive:
        gens: list[Generator] = []
        keep = []
        k = 0
        while k < len(alive):
            i = alive[k]
            if k + 1 < len(alive) and partner[i] == alive[k + 1]:
                gens.append(Cap(word[i]))
                k += 2
            else:
                gens.append(Id(word[i]))
                keep.append(i)
                k += 1
        layers.append(tuple(gens))
        alive = keep
    return layers


def closure(d: SlicedDiagram, kind: str = "trace") -> SlicedDiagram:
    """Close a tangle into a link diagram (a morphism from the empty word to itself).

    ``trace`` routes each top point around the right-hand side back to the
    matching bottom point with nested cups and caps. ``plat`` closes source
    and target separately with planar cups and caps, pairing each point with
    the nearest unpaired opposite sign to its left; an alternating word gives
    the pairs (1,2), (3,4), ...
    """
    _require_valid(d)
    src, tgt = d.source(), d.target()
    if kind == "trace":
        if src != tgt:
            raise ValueError(f"trace closure needs source == target, got {src} and {tgt}")
        n = len(src)
        below: list[Slice] = []
        word: list[str] = []
        for i in range(n):
            s = src[i]
            below.append(identity_slice(word[:i]) + (Cup(s),) + identity_slice(word[i:]))
            word = word[:i] + [s, flip(s)] + word[i:]
        ret = tuple(word[n:])  # the returning strands, right of the tangle
        body = tensor(d, SlicedDiagram(SignWord(ret), ()))
        above: list[Slice] = []
        word = list(tgt) + list(ret)
        for i in range(n - 1, -1, -1):
            above.append(identity_slice(word[:i]) + (Cap(word[i]),) + identity_slice(word[i + 2:]))
            word = word[:i] + word[i + 2:]
        return SlicedDiagram(SignWord(), tuple(below) + body.slices + tuple(above))
    if kind == "plat":
        below = [tuple(Cup(g.signs[0]) if g.kind == CAP else g for g in sl) for sl in reversed(_cap_layers(src, "source"))]
        return SlicedDiagram(SignWord(), tuple(below) + d.slices + tuple(_cap_layers(tgt, "target")))
    raise ValueError(f"unknown closure kind {kind!r}")
