"""Line-oriented text formats for braid words (.brd) and sliced diagrams (.tng).

Braid words::

    braid n=3: 1 -2 1      # comments run to end of line

Sliced diagrams: a ``bottom:`` line with a string over ``+-``, then one line
per slice of generator tokens ``id+ cup- cap+ x+- y--``. ``x`` is an
over-crossing and ``y`` an under-crossing; their two sign letters are the
input signs. A line holding only ``~`` is a slice with no generators (the
identity on the empty word).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .conventions import CROSSINGS, KIND_TOKEN, SIGNS, TOKEN_KIND
from .tangle import Generator, SignWord, SlicedDiagram, validate

__all__ = [
    "ParseError",
    "DiagramValidationError",
    "DiagramSource",
    "parse_braid",
    "parse_sliced",
    "serialize",
    "serialize_braid",
    "parse_token",
]

EMPTY_SLICE = "~"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class DiagramValidationError(ParseError):
    def __init__(self, message: str, line: int, column: int, slice_no: int):
        super().__init__(message, line, column)
        self.slice_no = slice_no
        self.args = (f"slice {slice_no} (line {line}, column {column}): {message}",)


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with 1-based start columns."""
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


_BRAID_TOKEN = re.compile(r"(?P<n>n\s*=\s*[+-]?\d+)|(?P<colon>:)|(?P<int>[+-]?\d+)|(?P<word>[A-Za-z_]+)|(?P<other>[^\s:]+)")


def _scan_braid(text: str) -> list[tuple[str, str, int, int]]:
    out = []
    for ln, raw in enumerate(text.splitlines(), 1):
        for m in _BRAID_TOKEN.finditer(_strip_comment(raw)):
            out.append((m.lastgroup, m.group(), ln, m.start() + 1))
    return out


def parse_braid(text: str) -> tuple[list[int], int]:
    toks = _scan_braid(text)
    expect = [("word", "braid"), ("n", "n=<int>"), ("colon", "':'")]
    last = (1, 1)
    for k, (kind, what) in enumerate(expect):
        if k >= len(toks):
            raise ParseError(f"expected {what}", *last)
        tkind, tok, ln, col = toks[k]
        if tkind != kind or (kind == "word" and tok != "braid"):
            raise ParseError(f"expected {what}, found {tok!r}", ln, col)
        last = (ln, col + len(tok))
    _, ntok, nln, ncol = toks[1]
    n = int(ntok.split("=")[1])
    if n < 1:
        raise ParseError("strand count must be at least 1", nln, ncol)
    word = []
    for tkind, tok, ln, col in toks[3:]:
        if tkind != "int":
            raise ParseError(f"expected a nonzero integer, found {tok!r}", ln, col)
        v = int(tok)
        if v == 0 or abs(v) >= n:
            raise ParseError(f"index {v} out of range for n={n} (need 1 <= |i| < n)", ln, col)
        word.append(v)
    return word, n


def serialize_braid(word: list[int], n: int) -> str:
    return f"braid n={n}: " + " ".join(str(x) for x in word) if word else f"braid n={n}:"


def parse_token(tok: str) -> Generator:
    m = re.fullmatch(r"(id|cup|cap|x|y)([+-]{1,2})", tok)
    if not m:
        raise ValueError(f"unknown generator token {tok!r}")
    kind = TOKEN_KIND[m.group(1)]
    signs = tuple(m.group(2))
    want = 2 if kind in CROSSINGS else 1
    if len(signs) != want:
        raise ValueError(f"{m.group(1)} takes {want} sign letter(s): {tok!r}")
    return Generator(kind, signs)


def token_of(g: Generator) -> str:
    return KIND_TOKEN[g.kind] + "".join(g.signs)


def parse_sliced(text: str) -> SlicedDiagram:
    lines = text.splitlines()
    body = [(ln, _strip_comment(raw)) for ln, raw in enumerate(lines, 1)]
    body = [(ln, s) for ln, s in body if s.strip()]
    if not body:
        raise ParseError("empty input, expected 'bottom:'", 1, 1)
    ln, head = body[0]
    m = re.fullmatch(r"(\s*)bottom:(\s*)(\S*)\s*", head)
    if not m:
        col = len(head) - len(head.lstrip()) + 1
        raise ParseError("expected 'bottom: <signs>'", ln, col)
    signs = m.group(3)
    for k, ch in enumerate(signs):
        if ch not in SIGNS:
            raise ParseError(f"invalid sign {ch!r} in bottom word", ln, m.start(3) + k + 1)
    bottom = SignWord(tuple(signs))
    slices = []
    positions: list[list[tuple[int, int]]] = []
    for ln, s in body[1:]:
        toks = _tokens(s)
        if len(toks) == 1 and toks[0][0] == EMPTY_SLICE:
            slices.append(())
            positions.append([(ln, toks[0][1])])
            continue
        gens = []
        for tok, col in toks:
            try:
                gens.append(parse_token(tok))
            except ValueError as exc:
                raise ParseError(str(exc), ln, col) from None
        slices.append(tuple(gens))
        positions.append([(ln, col) for _, col in toks])
    d = SlicedDiagram(bottom, tuple(slices))
    rep = validate(d)
    if not rep.ok:
        pos = positions[rep.slice_no - 1]
        k = rep.position - 1
        if k < len(pos):
            line, col = pos[k]
        else:
            # missing generators at the end of the slice line
            line = pos[-1][0] if pos else body[rep.slice_no][0]
            last_tok = d.slices[rep.slice_no - 1][-1] if d.slices[rep.slice_no - 1] else None
            col = pos[-1][1] + len(token_of(last_tok)) if pos and last_tok else 1
        raise DiagramValidationError(rep.message, line, col, rep.slice_no)
    return d


def serialize(d: SlicedDiagram) -> str:
    lines = [f"bottom: {d.bottom}" if len(d.bottom) else "bottom:"]
    for sl in d.slices:
        lines.append(" ".join(token_of(g) for g in sl) if sl else EMPTY_SLICE)
    return "\n".join(lines)


@dataclass(frozen=True)
class DiagramSource:
    format: str  # "braid" or "sliced"
    text: str
    origin: str = "<inline>"

    @classmethod
    def from_file(cls, path: str | Path) -> DiagramSource:
        p = Path(path)
        text = p.read_text(encoding="utf-8")
        fmt = "braid" if p.suffix == ".brd" else "sliced"
        if p.suffix not in (".brd", ".tng") and text.lstrip().startswith("braid"):
            fmt = "braid"
        return cls(fmt, text, str(p))

    def parse(self, orientation: str = "all-up") -> SlicedDiagram:
        from .tangle import braid_to_diagram

        if self.format == "braid":
            word, n = parse_braid(self.text)
            return braid_to_diagram(word, n, orientation)
        return parse_sliced(self.text)
