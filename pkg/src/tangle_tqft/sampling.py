"""Seeded random valid diagrams for property suites."""

from __future__ import annotations

import random

from .conventions import SIGNS, flip
from .cobord1 import Matching1, _norm_pair
from .tangle import Cap, Cup, Generator, Id, Over, SignWord, SlicedDiagram, Under, identity_slice


def random_word(rng: random.Random, max_len: int = 3) -> SignWord:
    return SignWord(tuple(rng.choice(SIGNS) for _ in range(rng.randint(0, max_len))))


def random_slice(rng: random.Random, word: tuple[str, ...], max_width: int) -> tuple[Generator, ...]:
    gens: list[Generator] = []
    width = len(word)
    i = 0
    while True:
        if width + 2 <= max_width and rng.random() < 0.15:
            s = rng.choice(SIGNS)
            gens.append(Cup(s))
            width += 2
        if i >= len(word):
            break
        r = rng.random()
        if i + 1 < len(word) and r < 0.35:
            gens.append((Over if rng.random() < 0.5 else Under)(word[i], word[i + 1]))
            i += 2
        elif i + 1 < len(word) and word[i] != word[i + 1] and r < 0.5:
            gens.append(Cap(word[i]))
            width -= 2
            i += 2
        else:
            gens.append(Id(word[i]))
            i += 1
    return tuple(gens)


def random_diagram(
    rng: random.Random,
    n_slices: int | None = None,
    max_width: int = 5,
    bottom: SignWord | None = None,
) -> SlicedDiagram:
    if bottom is None:
        bottom = random_word(rng, min(3, max_width))
    if n_slices is None:
        n_slices = rng.randint(0, 4)
    word = tuple(bottom)
    slices = []
    for _ in range(n_slices):
        sl = random_slice(rng, word, max(max_width, len(word)))
        slices.append(sl)
        word = tuple(s for g in sl for s in g.outputs)
    return SlicedDiagram(bottom, tuple(slices))


def random_braidlike_diagram(rng: random.Random, max_strands: int = 4, max_len: int = 6) -> SlicedDiagram:
    """Single-crossing slices over a random word, the shape R3 acts on."""
    word = list(random_word(rng, max_strands))
    while len(word) < 2:
        word.append(rng.choice(SIGNS))
    bottom = SignWord(tuple(word))
    slices = []

    def cross(i: int, kind) -> None:
        g = kind(word[i], word[i + 1])
        slices.append(identity_slice(word[:i]) + (g,) + identity_slice(word[i + 2:]))
        word[i], word[i + 1] = word[i + 1], word[i]

    while len(slices) < max_len:
        i = rng.randrange(len(word) - 1)
        if len(word) >= 3 and rng.random() < 0.5:
            # a whole non-cyclic triangle on columns c, c+1, c+2
            c = min(i, len(word) - 3)
            ks = [rng.choice((Over, Under)) for _ in range(3)]
            if ks[0] is ks[2]:
                ks[1] = ks[0]
            for col in (c, c + 1, c) if rng.random() < 0.5 else (c + 1, c, c + 1):
                cross(col, ks.pop())
        else:
            cross(i, Over if rng.random() < 0.5 else Under)
        if rng.random() < 0.3:
            break
    return SlicedDiagram(bottom, tuple(slices))


def random_movable_diagram(rng: random.Random, max_width: int = 5) -> SlicedDiagram:
    """A random diagram with at least one strand somewhere, so moves apply;
    about a third are braid-like so that R3 sites occur."""
    if rng.random() < 1 / 3:
        return random_braidlike_diagram(rng)
    while True:
        d = random_diagram(rng, max_width=max_width)
        if any(len(w) for w in d.levels()):
            return d


def cap_off(word: tuple[str, ...]) -> list[tuple[Generator, ...]]:
    """Slices capping a balanced word down to nothing, innermost pair first."""
    word = list(word)
    slices = []
    while word:
        for i in range(len(word) - 1):
            if word[i] != word[i + 1]:
                slices.append(identity_slice(word[:i]) + (Cap(word[i]),) + identity_slice(word[i + 2:]))
                del word[i:i + 2]
                break
        else:
            raise ValueError(f"word {''.join(word)} cannot be capped off")
    return slices


def random_closed_diagram(rng: random.Random, n_slices: int | None = None, max_width: int = 6) -> SlicedDiagram:
    """A random link diagram: random slices over the empty word, then capped off."""
    if n_slices is None:
        n_slices = rng.randint(1, 5)
    word: tuple[str, ...] = ()
    slices = []
    for k in range(n_slices):
        if not word:
            s = rng.choice(SIGNS)
            sl: tuple[Generator, ...] = (Cup(s),)
        else:
            sl = random_slice(rng, word, max_width)
        slices.append(sl)
        word = tuple(s for g in sl for s in g.outputs)
    slices.extend(cap_off(word))
    return SlicedDiagram(SignWord(), tuple(slices))


def random_composable_pair(rng: random.Random, max_width: int = 4) -> tuple[SlicedDiagram, SlicedDiagram]:
    t1 = random_diagram(rng, max_width=max_width)
    t2 = random_diagram(rng, max_width=max_width, bottom=t1.target())
    return t2, t1


def random_matching(
    rng: random.Random, source: tuple[str, ...] | None = None, max_points: int = 4
) -> Matching1:
    """A random 1-cobordism; with ``source`` given, one starting from that word."""
    if source is None:
        source = tuple(random_word(rng, max_points))
    nb = len(source)
    pairs: list[tuple] = []
    top: list[tuple[str, object]] = []  # (sign, bottom index or cup tag) in creation order
    free = list(range(nb))
    rng.shuffle(free)
    while free:
        i = free.pop()
        mates = [j for j in free if source[j] != source[i]]
        if mates and rng.random() < 0.4:
            j = rng.choice(mates)
            free.remove(j)
            pairs.append((("b", i), ("b", j)))
        else:
            top.append((source[i], i))
    # cups only while the target stays within max_points
    for k in range(rng.randint(0, max(0, max_points - len(top)) // 2)):
        s = rng.choice(SIGNS)
        top.append((s, ("cup", k, 0)))
        top.append((flip(s), ("cup", k, 1)))
    rng.shuffle(top)
    cups: dict[int, list[int]] = {}
    for pos, (_, tag) in enumerate(top):
        if isinstance(tag, int):
            pairs.append((("b", tag), ("t", pos)))
        else:
            cups.setdefault(tag[1], []).append(pos)
    for a, b in cups.values():
        pairs.append((("t", a), ("t", b)))
    target = SignWord(tuple(sign for sign, _ in top))
    return Matching1(SignWord(source), target, frozenset(_norm_pair(*p) for p in pairs), rng.randint(0, 2))


def random_braid_word(rng: random.Random, n_strands: int, length: int) -> list[int]:
    return [rng.choice((1, -1)) * rng.randint(1, n_strands - 1) for _ in range(length)]


__all__ = [
    "random_word",
    "random_slice",
    "random_diagram",
    "random_closed_diagram",
    "random_movable_diagram",
    "random_braidlike_diagram",
    "random_composable_pair",
    "random_braid_word",
    "random_matching",
    "cap_off",
    "flip",
]
