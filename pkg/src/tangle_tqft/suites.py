"""Seeded property suites exposed by the ``check`` command.

Every case draws from its own generator seeded by ``(seed, suite, index)``,
so a report depends only on the seed and the sample count and cases could be
evaluated in any order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .cobord1 import circle1, compose1, disjoint_union1, identity1, tqft1_eval
from .evaluator import check_theory, default_theory, eval_diagram
from .kz import KZConfig, flatness_check
from .oracles import bracket_statesum
from .parser import serialize
from .ring import LaurentPoly, RingMatrix, mat_mul, mat_tensor
from .sampling import (
    random_composable_pair,
    random_diagram,
    random_matching,
    random_movable_diagram,
)
from .tangle import SignWord, braid_to_diagram, closure, compose, random_equivalent, tensor

__all__ = ["CaseFailure", "SuiteReport", "SUITES", "DEFAULT_SAMPLES", "run_suite", "case_rng"]


@dataclass(frozen=True)
class CaseFailure:
    case: int
    detail: str
    witness: str = ""


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    cases: int
    failures: tuple[CaseFailure, ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"suite {self.suite}: {self.cases - len(self.failures)}/{self.cases} passed (seed {self.seed}) {status}"]
        lines += [f"  {n}" for n in self.notes]
        for f in self.failures:
            lines.append(f"  case {f.case}: {f.detail}")
            lines += [f"    {w}" for w in f.witness.splitlines()]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "notes": list(self.notes),
            "failures": [{"case": f.case, "detail": f.detail, "witness": f.witness} for f in self.failures],
        }


def case_rng(seed: int, suite: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{index}")


def _diff(lhs: RingMatrix, rhs: RingMatrix) -> str | None:
    if lhs.shape != rhs.shape:
        return f"shape {lhs.shape} != {rhs.shape}"
    where = lhs.first_difference(rhs)
    if where is None:
        return None
    return f"entry {where}: {lhs[where]} != {rhs[where]}"


# ---------------------------------------------------------------------------


def _theory(samples: int, seed: int, **_) -> tuple[int, list[CaseFailure], list[str]]:
    rep = check_theory(default_theory())
    fails = [CaseFailure(k, f"{r.name}: {r.detail}") for k, r in enumerate(rep.results) if not r.passed]
    notes = [f"{r.name}: {'ok' if r.passed else 'FAILED'}" for r in rep.results]
    return len(rep.results), fails, notes


def _functoriality(samples: int, seed: int, **_):
    th = default_theory()
    fails = []
    for k in range(samples):
        t2, t1 = random_composable_pair(case_rng(seed, "functoriality", k))
        bad = _diff(eval_diagram(compose(t2, t1), th), mat_mul(eval_diagram(t2, th), eval_diagram(t1, th)))
        if bad:
            fails.append(CaseFailure(k, bad, f"T1:\n{serialize(t1)}\nT2:\n{serialize(t2)}"))
    return samples, fails, []


def _monoidality(samples: int, seed: int, **_):
    th = default_theory()
    fails = []
    for k in range(samples):
        rng = case_rng(seed, "monoidality", k)
        t1 = random_diagram(rng, max_width=3)
        t2 = random_diagram(rng, max_width=3)
        bad = _diff(eval_diagram(tensor(t1, t2), th), mat_tensor(eval_diagram(t1, th), eval_diagram(t2, th)))
        if bad:
            fails.append(CaseFailure(k, bad, f"T1:\n{serialize(t1)}\nT2:\n{serialize(t2)}"))
    return samples, fails, []


def _moves(samples: int, seed: int, n_moves: int = 5, **_):
    th = default_theory()
    fails = []
    for k in range(samples):
        rng = case_rng(seed, "moves", k)
        d = random_movable_diagram(rng)
        e = random_equivalent(d, n_moves, seed=rng.randrange(2 ** 32))
        bad = _diff(eval_diagram(e, th), eval_diagram(d, th))
        if bad:
            fails.append(CaseFailure(k, bad, f"original:\n{serialize(d)}\nmoved:\n{serialize(e)}"))
    return samples, fails, []


def braid_sweep(max_crossings: int = 6, strands: tuple[int, ...] = (2, 3)):
    """Every braid word up to the given length on the given strand counts."""
    for n in strands:
        letters = [s * i for i in range(1, n) for s in (1, -1)]
        for length in range(max_crossings + 1):
            for word in itertools.product(letters, repeat=length):
                yield n, list(word)


def _oracle(samples: int, seed: int, max_crossings: int = 6, **_):
    th = default_theory()
    fails = []
    count = 0
    for k, (n, word) in enumerate(braid_sweep(max_crossings)):
        count += 1
        d = closure(braid_to_diagram(word, n), "trace")
        got = eval_diagram(d, th).scalar_value()
        want = bracket_statesum(d)
        if got != want:
            fails.append(CaseFailure(k, f"n={n} word={word}: eval {got} != state sum {want}"))
    return count, fails, [f"braid words of length <= {max_crossings} on 2 and 3 strands, trace-closed"]


def _tqft1(samples: int, seed: int, **_):
    fails = []
    notes = []
    count = 0

    def check(ok: bool, detail: str, witness: str = "") -> None:
        nonlocal count
        if not ok:
            fails.append(CaseFailure(count, detail, witness))
        count += 1

    z = tqft1_eval(circle1(), 2).scalar_value()
    notes.append(f"Z(S^1) = {z}")
    check(z == LaurentPoly.constant(2, "q"), f"Z(S^1) = {z}, expected 2")
    empty = identity1(SignWord())
    check(tqft1_eval(empty, 2) == RingMatrix.identity(1, "q"), "empty matching does not evaluate to 1")
    for dim in (1, 2, 3):
        c = tqft1_eval(circle1(), dim).scalar_value()
        check(c == LaurentPoly.constant(dim, "q"), f"dim {dim}: circle gives {c}")
    for k in range(samples):
        rng = case_rng(seed, "tqft1", k)
        dim = rng.randint(1, 3)
        m1 = random_matching(rng, max_points=3)
        m2 = random_matching(rng, tuple(m1.target), max_points=3)
        m3 = random_matching(rng, tuple(m2.target), max_points=3)
        wit = f"m1: {m1}\nm2: {m2}\nm3: {m3}"
        bad = _diff(tqft1_eval(compose1(m2, m1), dim), mat_mul(tqft1_eval(m2, dim), tqft1_eval(m1, dim)))
        check(bad is None, f"functoriality (dim {dim}): {bad}", wit)
        bad = _diff(tqft1_eval(disjoint_union1(m1, m3), dim), mat_tensor(tqft1_eval(m1, dim), tqft1_eval(m3, dim)))
        check(bad is None, f"monoidality (dim {dim}): {bad}", wit)
        lhs, rhs = compose1(m3, compose1(m2, m1)), compose1(compose1(m3, m2), m1)
        check(lhs == rhs, f"associativity: {lhs} != {rhs}", wit)
        check(compose1(identity1(m1.target), m1) == m1 == compose1(m1, identity1(m1.source)), "identity law", wit)
    return count, fails, notes


def _kz_flatness(samples: int, seed: int, **_):
    fails = []
    notes = []
    for k, n in enumerate((2, 3, 4)):
        rep = flatness_check(KZConfig(n, 1.0))
        notes.append(f"n={n}: {rep.checked} identities, {'exact' if rep.exact else 'numeric'}")
        if not rep.passed:
            fails.append(CaseFailure(k, f"n={n}: " + "; ".join(f"{lab} norm {v:.3g}" for lab, v in rep.failures)))
    return 3, fails, notes


SUITES: dict[str, Callable] = {
    "theory": _theory,
    "functoriality": _functoriality,
    "monoidality": _monoidality,
    "moves": _moves,
    "oracle": _oracle,
    "tqft1": _tqft1,
    "kz-flatness": _kz_flatness,
}

DEFAULT_SAMPLES = {"functoriality": 200, "monoidality": 200, "moves": 100, "tqft1": 50}


def run_suite(name: str, samples: int | None = None, seed: int = 0, max_crossings: int = 6) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if samples is None:
        samples = DEFAULT_SAMPLES.get(name, 0)
    cases, fails, notes = SUITES[name](samples, seed, max_crossings=max_crossings)
    return SuiteReport(name, seed, cases, tuple(fails), tuple(notes))
