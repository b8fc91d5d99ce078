"""The twelve acceptance criteria, each with its tolerance and time budget.

Run under pytest for one PASS/FAIL line per criterion in the terminal
summary, or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from tangle_tqft.cobord1 import circle1, tqft1_eval
from tangle_tqft.evaluator import check_theory, default_theory, eval_diagram, link_invariant
from tangle_tqft.kz import KZConfig, braid_path, braid_relation_check, flatness_check, transport
from tangle_tqft.oracles import bracket_statesum, jones_skein_in_A
from tangle_tqft.parser import ParseError, parse_sliced, serialize
from tangle_tqft.ring import LaurentPoly, mat_mul, mat_tensor
from tangle_tqft.sampling import (
    random_closed_diagram,
    random_composable_pair,
    random_diagram,
    random_movable_diagram,
)
from tangle_tqft.suites import braid_sweep
from tangle_tqft.tangle import braid_to_diagram, closure, compose, insert_kink, mirror, random_equivalent, tensor

SEED = 20240601
TH = default_theory()


@dataclass
class Outcome:
    ok: bool
    detail: str


def _timed(fn: Callable[[], Outcome]) -> tuple[Outcome, float]:
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# ---------------------------------------------------------------------------


def c1_circle() -> Outcome:
    z = tqft1_eval(circle1(), 2).scalar_value()
    return Outcome(z == LaurentPoly.constant(2, "q"), f"Z(S^1) = {z}")


def c2_functoriality() -> Outcome:
    rng = random.Random(SEED)
    bad = 0
    for _ in range(200):
        t2, t1 = random_composable_pair(rng)
        if eval_diagram(compose(t2, t1), TH) != mat_mul(eval_diagram(t2, TH), eval_diagram(t1, TH)):
            bad += 1
    return Outcome(bad == 0, f"200 pairs, {bad} mismatches")


def c3_monoidality() -> Outcome:
    rng = random.Random(SEED + 1)
    bad = 0
    for _ in range(200):
        t1, t2 = random_diagram(rng, max_width=3), random_diagram(rng, max_width=3)
        if eval_diagram(tensor(t1, t2), TH) != mat_tensor(eval_diagram(t1, TH), eval_diagram(t2, TH)):
            bad += 1
    return Outcome(bad == 0, f"200 pairs, {bad} mismatches")


def c4_theory() -> Outcome:
    rep = check_theory(TH)
    return Outcome(rep.passed, ", ".join(f"{r.name} {'ok' if r.passed else 'FAIL'}" for r in rep.results))


def c5_moves() -> Outcome:
    rng = random.Random(SEED + 2)
    bad = 0
    for _ in range(100):
        d = random_movable_diagram(rng)
        e = random_equivalent(d, 5, seed=rng.randrange(2 ** 32))
        if eval_diagram(e, TH) != eval_diagram(d, TH):
            bad += 1
    return Outcome(bad == 0, f"100 diagrams x 5 moves, {bad} mismatches")


def c6_framing() -> Outcome:
    rng = random.Random(SEED + 3)
    bad = 0
    for _ in range(20):
        d = random_closed_diagram(rng)
        levels = [k for k, w in enumerate(d.levels()) if len(w)]
        lv = rng.choice(levels)
        col = rng.randrange(len(d.levels()[lv]))
        before = eval_diagram(d, TH).scalar_value()
        after = eval_diagram(insert_kink(d, lv, col), TH).scalar_value()
        if after != before * LaurentPoly.parse("-A^3", "A"):
            bad += 1
    return Outcome(bad == 0, f"20 kinks, {bad} not scaled by -A^3")


def c7_oracle() -> Outcome:
    bad = cases = 0
    for n, word in braid_sweep(6, (2, 3)):
        d = closure(braid_to_diagram(word, n), "trace")
        cases += 1
        if eval_diagram(d, TH).scalar_value() != bracket_statesum(d):
            bad += 1
    return Outcome(bad == 0, f"{cases} braid closures, {bad} mismatches")


def c8_separation() -> Outcome:
    unknot = closure(braid_to_diagram([], 1), "trace")
    trefoil = closure(braid_to_diagram([1, 1, 1], 2), "trace")
    u, t, m = (link_invariant(d) for d in (unknot, trefoil, mirror(trefoil)))
    distinct = len({u.normalized, t.normalized, m.normalized}) == 3
    related = m.normalized_raw == t.normalized_raw.inverse_variable()
    return Outcome(distinct and related, f"unknot {u.normalized}; trefoil {t.normalized}; mirror {m.normalized}")


def c9_skein() -> Outcome:
    trefoil = closure(braid_to_diagram([1, 1, 1], 2), "trace")
    ours = link_invariant(trefoil).normalized_raw
    skein = jones_skein_in_A(trefoil)
    return Outcome(ours == skein, f"evaluator {ours}; skein {skein}")


def c10_flatness() -> Outcome:
    reps = [flatness_check(KZConfig(n)) for n in (2, 3, 4)]
    ok = all(r.passed and r.exact for r in reps)
    return Outcome(ok, f"{sum(r.checked for r in reps)} commutator identities, exact rational arithmetic")


def c11_kz() -> Outcome:
    r = transport(braid_path([1, -1], 2), KZConfig(2, 0.1), 256)
    dist = float(np.linalg.norm(r.matrix - np.eye(4), 2))
    rel = braid_relation_check(KZConfig(3, 0.2), 1e-6, 512)
    return Outcome(dist < 1e-6 and rel.passed, f"||X - I|| = {dist:.2e}; braid relation diff = {rel.difference:.2e}")


BAD_TOKENS = ["zz", "id", "x+", "cap+-", "y+++", "cup*", "id+-", "~~"]


def c12_parser() -> Outcome:
    rng = random.Random(SEED + 4)
    corpus = [random_closed_diagram(rng) if k % 3 == 0 else random_diagram(rng, max_width=6) for k in range(100)]
    trips = sum(parse_sliced(serialize(d)) == d for d in corpus)
    fuzzed = exact = 0
    for d in corpus:
        lines = serialize(d).split("\n")
        spots = [(ln, col, tok) for ln in range(1, len(lines)) for col, tok in _tokens(lines[ln]) if tok != "~"]
        if not spots:
            continue
        ln, col, tok = rng.choice(spots)
        broken = lines[:]
        broken[ln] = broken[ln][:col] + rng.choice(BAD_TOKENS) + broken[ln][col + len(tok):]
        fuzzed += 1
        try:
            parse_sliced("\n".join(broken))
        except ParseError as exc:
            exact += (exc.line, exc.column) == (ln + 1, col + 1)
    ok = trips == 100 and exact == fuzzed
    return Outcome(ok, f"{trips}/100 round trips; {exact}/{fuzzed} corrupted tokens located exactly")


def _tokens(line: str) -> list[tuple[int, str]]:
    out, col = [], 0
    for tok in line.split(" "):
        out.append((col, tok))
        col += len(tok) + 1
    return out


CRITERIA: list[tuple[int, str, Callable[[], Outcome], float]] = [
    (1, "Z(S^1) = 2", c1_circle, 0.001),
    (2, "functoriality", c2_functoriality, 10.0),
    (3, "monoidality", c3_monoidality, 10.0),
    (4, "theory invariants", c4_theory, 1.0),
    (5, "move invariance", c5_moves, 30.0),
    (6, "framing factor", c6_framing, 5.0),
    (7, "state-sum oracle", c7_oracle, 120.0),
    (8, "knot separation", c8_separation, 1.0),
    (9, "skein cross-oracle", c9_skein, 1.0),
    (10, "KZ flatness", c10_flatness, 1.0),
    (11, "KZ homotopy invariance", c11_kz, 30.0),
    (12, "parser round trip", c12_parser, 5.0),
]


def evaluate(number: int) -> tuple[bool, str]:
    _, name, fn, budget = next(c for c in CRITERIA if c[0] == number)
    out, elapsed = _timed(fn)
    in_time = elapsed < budget
    ok = out.ok and in_time
    timing = f"{elapsed * 1000:.3f} ms" if budget < 1 else f"{elapsed:.2f} s"
    limit = f"{budget * 1000:g} ms" if budget < 1 else f"{budget:g} s"
    line = f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {name}: {out.detail} ({timing}, limit {limit})"
    return ok, line


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[c[1].replace(" ", "_") for c in CRITERIA])
def test_criterion(number):
    from conftest import ACCEPTANCE

    ok, line = evaluate(number)
    ACCEPTANCE[number] = line
    print(line)
    assert ok, line


if __name__ == "__main__":
    sys.path.insert(0, str(Path(__file__).parent))
    results = [evaluate(c[0]) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
