"""Brute-force oracles for closed diagrams, independent of the matrix evaluator.

``bracket_statesum`` enumerates all Kauffman states: each crossing becomes
one of its two planar smoothings, every slice becomes a pure 1-cobordism, and
the loops are counted by gluing those matchings.

``jones_skein`` never smooths unoriented crossings at all. It reads the
diagram as an oriented 4-valent graph and runs the classical descending-
diagram recursion on the oriented skein relation
``t^-1 V(L+) - t V(L-) = (t^1/2 - t^-1/2) V(L0)``, with ``V`` of an
unlink of c components equal to ``(-t^1/2 - t^-1/2)^(c-1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cobord1 import Matching1, compose1
from .conventions import CAP, CUP, ID, SMOOTHING_EXPONENTS, crossing_sign
from .ring import LaurentPoly, lp_subst_monomial
from .tangle import Generator, SignWord, SlicedDiagram, validate

__all__ = ["bracket_statesum", "jones_skein", "jones_skein_in_A", "CrossingGraph", "crossing_graph"]


def _require_link(d: SlicedDiagram) -> None:
    rep = validate(d)
    if not rep.ok:
        raise ValueError(f"invalid diagram at slice {rep.slice_no}: {rep.message}")
    if not d.is_closed():
        raise ValueError(f"not a link diagram: {d.source()} -> {d.target()}")


# ---------------------------------------------------------------------------
# Kauffman state sum


def _slice_matchings(sl: tuple[Generator, ...], below: SignWord, above: SignWord) -> list[tuple[int, Matching1]]:
    """All smoothings of one slice, each with its total A-exponent."""
    pieces: list[list[tuple[int, list]]] = []
    i = o = 0
    for g in sl:
        if g.kind == ID:
            pieces.append([(0, [(("b", i), ("t", o))])])
        elif g.kind == CUP:
            pieces.append([(0, [(("t", o), ("t", o + 1))])])
        elif g.kind == CAP:
            pieces.append([(0, [(("b", i), ("b", i + 1))])])
        else:
            vert, horiz = SMOOTHING_EXPONENTS[g.kind]
            pieces.append([
                (vert, [(("b", i), ("t", o)), (("b", i + 1), ("t", o + 1))]),
                (horiz, [(("b", i), ("b", i + 1)), (("t", o), ("t", o + 1))]),
            ])
        i += len(g.inputs)
        o += len(g.outputs)
    out = []
    for combo in itertools.product(*pieces):
        exp = sum(e for e, _ in combo)
        pairs = frozenset(p for _, ps in combo for p in ps)
        out.append((exp, Matching1(below, above, pairs, 0, oriented=False)))
    return out


def bracket_statesum(d: SlicedDiagram, variable: str = "A") -> LaurentPoly:
    """Kauffman bracket with loop value -A^2 - A^-2; the empty diagram gives 1."""
    _require_link(d)
    levels = d.levels()
    options = [_slice_matchings(sl, levels[k], levels[k + 1]) for k, sl in enumerate(d.slices)]
    acc: dict[tuple[int, int], int] = {}  # (A-exponent, loops) -> number of states

    def descend(k: int, exp: int, m: Matching1) -> None:
        if k == len(options):
            key = (exp, m.circles)
            acc[key] = acc.get(key, 0) + 1
            return
        for e, piece in options[k]:
            descend(k + 1, exp + e, compose1(piece, m))

    descend(0, 0, Matching1(SignWord(), SignWord(), frozenset(), 0, oriented=False))
    delta = LaurentPoly({2: -1, -2: -1}, variable)
    total = LaurentPoly.zero(variable)
    for (exp, loops), count in acc.items():
        total = total + LaurentPoly.monomial(count, exp, variable) * delta ** loops
    return total


# ---------------------------------------------------------------------------
# oriented crossing graph


@dataclass
class _Crossing:
    # edge ids at the four ports: over-in, over-out, under-in, under-out
    oi: int
    oo: int
    ui: int
    uo: int
    sign: int


@dataclass
class CrossingGraph:
    """An oriented link diagram as crossings joined by directed edges.

    Every edge runs from an out-port to an in-port. ``free_loops`` counts
    components that meet no crossing.
    """

    crossings: dict[int, _Crossing]
    free_loops: int

    def copy(self) -> CrossingGraph:
        return CrossingGraph({k: _Crossing(c.oi, c.oo, c.ui, c.uo, c.sign) for k, c in self.crossings.items()},
                             self.free_loops)

    def _heads(self) -> dict[int, tuple[int, str]]:
        """edge -> (crossing, 'o'|'u') where the edge enters."""
        out = {}
        for k, c in self.crossings.items():
            out[c.oi] = (k, "o")
            out[c.ui] = (k, "u")
        return out

    def components(self) -> int:
        heads = self._heads()
        seen: set[int] = set()
        n = 0
        for e in sorted(heads):
            if e in seen:
                continue
            n += 1
            while e not in seen:
                seen.add(e)
                k, role = heads[e]
                c = self.crossings[k]
                e = c.oo if role == "o" else c.uo
        return n + self.free_loops


def crossing_graph(d: SlicedDiagram) -> CrossingGraph:
    """Trace strand segments through the slices of a closed diagram.

    Each slice generator joins segment ends; ids and cups/caps just continue
    a strand, crossings become graph vertices. Orientation comes from the
    signs: ``+`` means the strand is travelling upward at that level.
    """
    _require_link(d)
    # a "stub" is an open strand end at some level; stubs are unioned through
    # ids, cups and caps until they meet crossings
    parent: dict[object, object] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    crossing_ports: list[tuple[int, int, dict]] = []  # (slice, index, port -> stub key)
    for k, sl in enumerate(d.slices):
        i = o = 0
        for j, g in enumerate(sl):
            below = lambda x: ("L", k, x)  # stub at level k, column x
            above = lambda x: ("L", k + 1, x)
            if g.kind == ID:
                union(below(i), above(o))
            elif g.kind == CUP:
                union(above(o), above(o + 1))
            elif g.kind == CAP:
                union(below(i), below(i + 1))
            else:
                s, t = g.signs
                # strand a: bottom-left <-> top-right; strand b: bottom-right <-> top-left
                a_up, b_up = s == "+", t == "+"
                bl, br, tl, tr = below(i), below(i + 1), above(o), above(o + 1)
                a_in, a_out = (bl, tr) if a_up else (tr, bl)
                b_in, b_out = (br, tl) if b_up else (tl, br)
                if g.kind == "over":
                    ports = {"oi": a_in, "oo": a_out, "ui": b_in, "uo": b_out}
                else:
                    ports = {"oi": b_in, "oo": b_out, "ui": a_in, "uo": a_out}
                ports["sign"] = crossing_sign(g.kind, s, t)
                crossing_ports.append((k, j, ports))
                for key in ("oi", "oo", "ui", "uo"):
                    parent.setdefault(ports[key], ports[key])
            i += len(g.inputs)
            o += len(g.outputs)
    # every stub class touching a crossing is one edge; the remaining classes are free loops
    edge_of: dict[object, int] = {}
    crossings: dict[int, _Crossing] = {}
    for n, (_, _, ports) in enumerate(crossing_ports):
        ids = {}
        for key in ("oi", "oo", "ui", "uo"):
            root = find(ports[key])
            ids[key] = edge_of.setdefault(root, len(edge_of))
        crossings[n] = _Crossing(ids["oi"], ids["oo"], ids["ui"], ids["uo"], ports["sign"])
    all_roots = {find(x) for x in list(parent)}
    free = len(all_roots - set(edge_of))
    return CrossingGraph(crossings, free)


# ---------------------------------------------------------------------------
# skein recursion


def _switch(g: CrossingGraph, k: int) -> CrossingGraph:
    h = g.copy()
    c = h.crossings[k]
    h.crossings[k] = _Crossing(c.ui, c.uo, c.oi, c.oo, -c.sign)
    return h


def _smooth(g: CrossingGraph, k: int) -> CrossingGraph:
    """Oriented smoothing: over-in continues as under-out, under-in as over-out."""
    h = g.copy()
    c = h.crossings.pop(k)
    for in_role, out_role in (("oi", "uo"), ("ui", "oo")):
        e_in, e_out = getattr(c, in_role), getattr(c, out_role)
        if e_in == e_out:
            h.free_loops += 1
            continue
        # the merged edge keeps e_in's tail and takes over e_out's head
        for other in list(h.crossings.values()) + [c]:
            if other.oi == e_out:
                other.oi = e_in
            if other.ui == e_out:
                other.ui = e_in
    return h


def _first_bad(g: CrossingGraph) -> int | None:
    """First crossing met from below when each component is traversed from its
    smallest edge, components in order of that edge."""
    heads = g._heads()
    seen_edges: set[int] = set()
    met: set[int] = set()
    for start in sorted(heads):
        if start in seen_edges:
            continue
        e = start
        while e not in seen_edges:
            seen_edges.add(e)
            k, role = heads[e]
            if k not in met:
                if role == "u":
                    return k
                met.add(k)
            c = g.crossings[k]
            e = c.oo if role == "o" else c.uo
    return None


def _skein(g: CrossingGraph, var: str, memo: dict) -> LaurentPoly:
    key = _graph_key(g)
    if key in memo:
        return memo[key]
    s = LaurentPoly.monomial(1, 1, var)
    sinv = LaurentPoly.monomial(1, -1, var)
    k = _first_bad(g)
    if k is None:
        loop = -s - sinv
        value = loop ** (g.components() - 1)
    else:
        sign = g.crossings[k].sign
        switched = _skein(_switch(g, k), var, memo)
        smoothed = _skein(_smooth(g, k), var, memo)
        if sign > 0:
            value = s ** 4 * switched + (s ** 3 - s) * smoothed
        else:
            value = sinv ** 4 * switched + (sinv ** 3 - sinv) * smoothed
    memo[key] = value
    return value


def _graph_key(g: CrossingGraph):
    return (tuple(sorted((k, c.oi, c.oo, c.ui, c.uo, c.sign) for k, c in g.crossings.items())), g.free_loops)


def jones_skein(d: SlicedDiagram, variable: str = "s") -> LaurentPoly:
    """Jones polynomial of an oriented link diagram in ``s = t^(1/2)``."""
    return _skein(crossing_graph(d), variable, {})


def jones_skein_in_A(d: SlicedDiagram) -> LaurentPoly:
    """The skein value rewritten in A via ``t^(1/2) = A^-2``."""
    return lp_subst_monomial(jones_skein(d), "A", -2)
