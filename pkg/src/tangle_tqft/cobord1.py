"""Pure 1-dimensional cobordisms and the toy TQFT with a point-space of dimension d.

A compact 1-manifold with boundary is, up to diffeomorphism rel boundary, a
pairing of its boundary points plus a number of closed circles, so that is
exactly what :class:`Matching1` stores. Points are ``("b", i)`` on the source
and ``("t", j)`` on the target, 0-based; the text form numbers them from 1.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .conventions import PLUS
from .ring import LaurentPoly, RingMatrix
from .tangle import SignWord

Point = tuple[str, int]
Pair = tuple[Point, Point]


class BoundaryError(ValueError):
    pass


def _norm_pair(a: Point, b: Point) -> Pair:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Matching1:
    source: SignWord
    target: SignWord
    pairing: frozenset[Pair]
    circles: int = 0
    # the state-sum oracle glues unoriented smoothings; everything else is oriented
    oriented: bool = field(default=True, compare=False)

    def __post_init__(self):
        pairs = frozenset(_norm_pair(*p) for p in self.pairing)
        object.__setattr__(self, "pairing", pairs)
        if self.circles < 0:
            raise ValueError("negative circle count")
        want = {("b", i) for i in range(len(self.source))} | {("t", j) for j in range(len(self.target))}
        seen: list[Point] = [pt for p in pairs for pt in p]
        if len(seen) != len(set(seen)) or set(seen) != want:
            raise BoundaryError("pairing is not a perfect matching of the boundary points")
        if self.oriented:
            for a, b in pairs:
                sa, sb = self._sign(a), self._sign(b)
                same_side = a[0] == b[0]
                if same_side and sa == sb:
                    raise BoundaryError(f"{_label(a)} and {_label(b)} on one side need opposite signs")
                if not same_side and sa != sb:
                    raise BoundaryError(f"{_label(a)} and {_label(b)} across need equal signs")

    def _sign(self, pt: Point) -> str:
        return self.source[pt[1]] if pt[0] == "b" else self.target[pt[1]]

    def partner(self) -> dict[Point, Point]:
        out = {}
        for a, b in self.pairing:
            out[a] = b
            out[b] = a
        return out

    def __str__(self) -> str:
        pairs = ",".join(f"({_label(a)},{_label(b)})" for a, b in sorted(self.pairing))
        return f"1cob src={self.source} tgt={self.target} pairs=[{pairs}] circles={self.circles}"

    @classmethod
    def parse(cls, text: str) -> Matching1:
        m = _MATCHING_RE.fullmatch(text.strip())
        if not m:
            raise ValueError(f"not a 1cob expression: {text!r}")
        src, tgt = SignWord.parse(m.group("src")), SignWord.parse(m.group("tgt"))
        pairs = []
        for a, b in _PAIR_RE.findall(m.group("pairs")):
            pairs.append((_point(a), _point(b)))
        return cls(src, tgt, frozenset(pairs), int(m.group("circles")))


_MATCHING_RE = re.compile(
    r"1cob\s+src=(?P<src>[+-]*)\s+tgt=(?P<tgt>[+-]*)\s+pairs=\[(?P<pairs>[^\]]*)\]\s+circles=(?P<circles>\d+)"
)
_PAIR_RE = re.compile(r"\(\s*([bt]\d+)\s*,\s*([bt]\d+)\s*\)")


def _label(pt: Point) -> str:
    return f"{pt[0]}{pt[1] + 1}"


def _point(label: str) -> Point:
    return (label[0], int(label[1:]) - 1)


def identity1(w: SignWord) -> Matching1:
    return Matching1(w, w, frozenset((("b", i), ("t", i)) for i in range(len(w))))


def cup1(s: str = PLUS) -> Matching1:
    """The arc from nothing to the word (s, -s)."""
    w = SignWord((s, "-" if s == "+" else "+"))
    return Matching1(SignWord(), w, frozenset({(("t", 0), ("t", 1))}))


def cap1(s: str = PLUS) -> Matching1:
    w = SignWord((s, "-" if s == "+" else "+"))
    return Matching1(w, SignWord(), frozenset({(("b", 0), ("b", 1))}))


def circle1(n: int = 1) -> Matching1:
    return Matching1(SignWord(), SignWord(), frozenset(), n)


def compose1(m2: Matching1, m1: Matching1) -> Matching1:
    """Glue ``m2`` on top of ``m1`` along ``m1.target == m2.source``."""
    if m1.target != m2.source:
        raise BoundaryError(f"cannot glue: {m1.target} != {m2.source}")
    lower, upper = m1.partner(), m2.partner()
    # middle point j is ("t", j) in m1 and ("b", j) in m2
    result: list[Pair] = []
    visited_mid: set[int] = set()

    def walk(start: Point, side: str) -> Point:
        # side: which matching the current point belongs to ("lower"/"upper")
        pt = start
        while True:
            if side == "lower":
                nxt = lower[pt]
                if nxt[0] == "b":
                    return ("b", nxt[1])
                visited_mid.add(nxt[1])
                pt, side = ("b", nxt[1]), "upper"
            else:
                nxt = upper[pt]
                if nxt[0] == "t":
                    return ("t", nxt[1] + _TOP_OFFSET)
                visited_mid.add(nxt[1])
                pt, side = ("t", nxt[1]), "lower"

    done: set[Point] = set()
    for i in range(len(m1.source)):
        a = ("b", i)
        if a in done:
            continue
        b = walk(a, "lower")
        done.add(a)
        done.add(b)
        result.append((a, b))
    for j in range(len(m2.target)):
        a = ("t", j + _TOP_OFFSET)
        if a in done:
            continue
        b = walk(("t", j), "upper")
        done.add(a)
        done.add(b)
        result.append((a, b))
    # whatever middle points were never reached lie on closed chains
    circles = 0
    for j in range(len(m1.target)):
        if j in visited_mid:
            continue
        circles += 1
        pt, side = ("b", j), "upper"
        visited_mid.add(j)
        while True:
            nxt = (upper if side == "upper" else lower)[pt]
            if nxt[1] == j:
                break
            visited_mid.add(nxt[1])
            pt, side = (("t", nxt[1]), "lower") if side == "upper" else (("b", nxt[1]), "upper")
    fixed = [tuple(_unoffset(p) for p in pair) for pair in result]
    return Matching1(
        m1.source, m2.target, frozenset(fixed),
        m1.circles + m2.circles + circles,
        oriented=m1.oriented and m2.oriented,
    )


# top points of the glued result are tagged with a large offset while walking so
# that they cannot be confused with middle points of the same index
_TOP_OFFSET = 1 << 30


def _unoffset(p: Point) -> Point:
    return ("t", p[1] - _TOP_OFFSET) if p[0] == "t" else p


def disjoint_union1(m1: Matching1, m2: Matching1) -> Matching1:
    nb, nt = len(m1.source), len(m1.target)

    def shift(p: Point) -> Point:
        return (p[0], p[1] + (nb if p[0] == "b" else nt))

    pairs = set(m1.pairing) | {(shift(a), shift(b)) for a, b in m2.pairing}
    return Matching1(
        m1.source + m2.source, m1.target + m2.target, frozenset(pairs),
        m1.circles + m2.circles, oriented=m1.oriented and m2.oriented,
    )


def tqft1_eval(m: Matching1, dim_v: int = 2, variable: str = "q") -> RingMatrix:
    """Matrix of the toy TQFT: each arc contracts with the identity form, circles give dim_v."""
    if dim_v < 1:
        raise ValueError("dim_v must be positive")
    nb, nt = len(m.source), len(m.target)
    pairs = sorted(m.pairing)
    rows, cols = dim_v ** nt, dim_v ** nb
    scale = LaurentPoly.constant(dim_v ** m.circles, variable)
    data = {}
    for colors in itertools.product(range(dim_v), repeat=len(pairs)):
        bd = [0] * nb
        td = [0] * nt
        for (a, b), c in zip(pairs, colors):
            for side, k in (a, b):
                (bd if side == "b" else td)[k] = c
        r = c_ = 0
        for x in td:
            r = r * dim_v + x
        for x in bd:
            c_ = c_ * dim_v + x
        data[(r, c_)] = scale
    return RingMatrix.from_sparse(rows, cols, data, variable)
