"""Functorial evaluation of sliced tangle diagrams to matrices over Z[A, A^-1].

A :class:`TheoryData` fixes the matrices for the elementary generators; the
evaluation of a diagram is the product, bottom to top, of the Kronecker
products of each slice's generator matrices. :func:`eval_diagram` does this
by pushing a sparse tensor through the slices, which keeps wide diagrams
cheap; :func:`eval_dense` builds every slice matrix literally and multiplies
them, and exists as a cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .conventions import (
    CAP,
    CUP,
    ID,
    MINUS,
    OVER,
    PLUS,
    SIGNS,
    SMOOTHING_EXPONENTS,
    UNDER,
    digits_of,
    flat_index,
    flip,
)
from .ring import (
    InexactDivisionError,
    LaurentPoly,
    RingMatrix,
    kron_all,
    lp_divide_exponents,
    lp_exact_div,
    mat_mul,
    mat_tensor,
)
from .tangle import Generator, SlicedDiagram, validate, writhe

__all__ = [
    "TheoryData",
    "CheckResult",
    "TheoryReport",
    "LinkInvariantReport",
    "default_theory",
    "eval_diagram",
    "eval_dense",
    "generator_matrix",
    "check_theory",
    "link_invariant",
]


@dataclass(frozen=True)
class TheoryData:
    variable: str
    dim_v: int
    r_over: RingMatrix
    r_under: RingMatrix
    cup: Mapping[str, RingMatrix]
    cap: Mapping[str, RingMatrix]
    loop_value: LaurentPoly
    kink_factor: LaurentPoly

    def __hash__(self) -> int:
        return id(self)


def default_theory() -> TheoryData:
    """The N = 2 Kauffman-bracket theory in the variable A.

    cap pairs basis (1,2) -> A and (2,1) -> -A^-1; cup sends 1 to
    (0, -A, A^-1, 0). The same matrices serve both orientations.
    """
    return _default_theory()


@lru_cache(maxsize=1)
def _default_theory() -> TheoryData:
    var = "A"
    A = LaurentPoly.monomial(1, 1, var)
    Ainv = LaurentPoly.monomial(1, -1, var)
    z = LaurentPoly.zero(var)
    cup = RingMatrix(4, 1, [z, -A, Ainv, z], var)
    cap = RingMatrix(1, 4, [z, A, -Ainv, z], var)
    e = mat_mul(cup, cap)
    ident = RingMatrix.identity(4, var)

    def crossing(kind: str) -> RingMatrix:
        vert, horiz = SMOOTHING_EXPONENTS[kind]
        return ident.scale(LaurentPoly.monomial(1, vert, var)) + e.scale(LaurentPoly.monomial(1, horiz, var))

    return TheoryData(
        variable=var,
        dim_v=2,
        r_over=crossing(OVER),
        r_under=crossing(UNDER),
        cup={PLUS: cup, MINUS: cup},
        cap={PLUS: cap, MINUS: cap},
        loop_value=-(A * A) - Ainv * Ainv,
        kink_factor=-(A * A * A),
    )


def generator_matrix(g: Generator, th: TheoryData) -> RingMatrix:
    if g.kind == ID:
        return RingMatrix.identity(th.dim_v, th.variable)
    if g.kind == CUP:
        return th.cup[g.signs[0]]
    if g.kind == CAP:
        return th.cap[g.signs[0]]
    if g.kind == OVER:
        return th.r_over
    return th.r_under


def _require_valid(d: SlicedDiagram) -> None:
    rep = validate(d)
    if not rep.ok:
        raise ValueError(f"invalid diagram at slice {rep.slice_no}, position {rep.position}: {rep.message}")


def eval_dense(d: SlicedDiagram, th: TheoryData) -> RingMatrix:
    """Reference evaluation: literal Kronecker products multiplied bottom-up."""
    _require_valid(d)
    result = RingMatrix.identity(th.dim_v ** len(d.bottom), th.variable)
    for sl in d.slices:
        result = mat_mul(kron_all((generator_matrix(g, th) for g in sl), th.variable), result)
    return result


class _SparseGen:
    """Column-sparse view of a generator matrix keyed by input digit tuples."""

    __slots__ = ("n_in", "n_out", "columns")

    def __init__(self, m: RingMatrix, n_in: int, n_out: int, dim: int):
        self.n_in, self.n_out = n_in, n_out
        cols: dict[tuple[int, ...], list[tuple[tuple[int, ...], LaurentPoly]]] = {}
        for c in range(m.cols):
            cols[digits_of(c, n_in, dim)] = []
        for r, c, v in m.nonzero():
            cols[digits_of(c, n_in, dim)].append((digits_of(r, n_out, dim), v))
        self.columns = cols


def _sparse_table(th: TheoryData) -> dict[tuple[str, tuple[str, ...]], _SparseGen]:
    cached = getattr(th, "_sparse_cache", None)
    if cached is not None:
        return cached
    table = {}
    for s in SIGNS:
        for kind in (ID, CUP, CAP):
            g = Generator(kind, (s,))
            table[(kind, g.signs)] = _SparseGen(generator_matrix(g, th), len(g.inputs), len(g.outputs), th.dim_v)
        for t in SIGNS:
            for kind in (OVER, UNDER):
                g = Generator(kind, (s, t))
                table[(kind, g.signs)] = _SparseGen(generator_matrix(g, th), 2, 2, th.dim_v)
    object.__setattr__(th, "_sparse_cache", table)
    return table


def eval_diagram(d: SlicedDiagram, th: TheoryData) -> RingMatrix:
    """Evaluate a valid diagram; the result is N^|target| x N^|source|."""
    _require_valid(d)
    table = _sparse_table(th)
    dim, var = th.dim_v, th.variable
    n_src = len(d.bottom)
    # state: {(row digits, source column): coefficient}
    state: dict[tuple[tuple[int, ...], int], LaurentPoly] = {}
    one = LaurentPoly.one(var)
    for col in range(dim ** n_src):
        state[(digits_of(col, n_src, dim), col)] = one
    for sl in d.slices:
        gens = [table[(g.kind, g.signs)] for g in sl]
        offsets = []
        pos = 0
        for sg in gens:
            offsets.append(pos)
            pos += sg.n_in
        new: dict[tuple[tuple[int, ...], int], LaurentPoly] = {}
        for (digits, col), coeff in state.items():
            choices = []
            for sg, off in zip(gens, offsets):
                opts = sg.columns[digits[off:off + sg.n_in]]
                if not opts:
                    break
                choices.append(opts)
            else:
                for combo in itertools.product(*choices):
                    out: tuple[int, ...] = ()
                    c = coeff
                    for part, v in combo:
                        out += part
                        if not v.is_one():
                            c = c * v
                    key = (out, col)
                    prev = new.get(key)
                    new[key] = c if prev is None else prev + c
        state = {k: v for k, v in new.items() if not v.is_zero()}
    n_tgt = len(d.target())
    data = {(flat_index(digits, dim), col): v for (digits, col), v in state.items()}
    return RingMatrix.from_sparse(dim ** n_tgt, dim ** n_src, data, var)


# ---------------------------------------------------------------------------
# invariant checks


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class TheoryReport:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def _compare(name: str, lhs: RingMatrix, rhs: RingMatrix) -> CheckResult:
    if lhs.shape != rhs.shape:
        return CheckResult(name, False, f"shape {lhs.shape} != {rhs.shape}")
    where = lhs.first_difference(rhs)
    if where is None:
        return CheckResult(name, True)
    i, j = where
    return CheckResult(name, False, f"entry ({i},{j}): {lhs[i, j]} != {rhs[i, j]}")


def check_theory(th: TheoryData) -> TheoryReport:
    """Check R2 inverses, Yang-Baxter, both zigzags for each sign, and loop values exactly."""
    var, n = th.variable, th.dim_v
    I = RingMatrix.identity(n, var)
    I2 = RingMatrix.identity(n * n, var)
    results = []

    r2 = _compare("r2", mat_mul(th.r_over, th.r_under), I2)
    if r2.passed:
        r2 = _compare("r2", mat_mul(th.r_under, th.r_over), I2)
    results.append(r2)

    a = mat_tensor(th.r_over, I)
    b = mat_tensor(I, th.r_over)
    results.append(_compare("yang_baxter", mat_mul(a, mat_mul(b, a)), mat_mul(b, mat_mul(a, b))))

    zig = CheckResult("zigzag", True)
    for s in SIGNS:
        # cup on the right of a strand, cap across strand and left leg
        right = mat_mul(mat_tensor(th.cap[s], I), mat_tensor(I, th.cup[flip(s)]))
        left = mat_mul(mat_tensor(I, th.cap[flip(s)]), mat_tensor(th.cup[s], I))
        for label, m in ((f"right bend, strand {s}", right), (f"left bend, strand {s}", left)):
            res = _compare("zigzag", m, I)
            if not res.passed:
                zig = CheckResult("zigzag", False, f"{label}: {res.detail}")
                break
        if not zig.passed:
            break
    results.append(zig)

    loop = CheckResult("loop", True)
    for s in SIGNS:
        res = _compare("loop", mat_mul(th.cap[s], th.cup[s]), RingMatrix.scalar(th.loop_value))
        if not res.passed:
            loop = CheckResult("loop", False, f"sign {s}: {res.detail}")
            break
    results.append(loop)
    return TheoryReport(tuple(results))


# ---------------------------------------------------------------------------
# link invariants


@dataclass(frozen=True)
class LinkInvariantReport:
    bracket: LaurentPoly
    writhe: int
    normalized: LaurentPoly
    variable_out: str
    # framing-corrected, unknot-normalized value before the change of variable
    normalized_raw: LaurentPoly | None = None
    fractional: bool = False

    def to_json(self) -> dict:
        return {
            "bracket": str(self.bracket),
            "writhe": self.writhe,
            "normalized": str(self.normalized),
            "variable": self.variable_out,
        }


def link_invariant(
    d: SlicedDiagram,
    th: TheoryData | None = None,
    report_var: str = "t",
    exponent_factor: int = -4,
) -> LinkInvariantReport:
    """Framing-corrected, unknot-normalized scalar invariant of a link diagram.

    The normalized value ``kappa^-writhe * bracket / loop_value`` is reported
    in ``report_var`` with ``A^e -> report_var^(e / exponent_factor)``; the
    default ``-4`` gives the Jones polynomial in ``t = A^-4``. When some
    exponent is not divisible the value stays in A and ``fractional`` is set.
    """
    th = th or default_theory()
    if not d.is_closed():
        raise ValueError(f"link invariant needs a closed diagram, got {d.source()} -> {d.target()}")
    bracket = eval_diagram(d, th).scalar_value()
    w = writhe(d)
    framed = bracket * (th.kink_factor ** (-w)) if th.kink_factor.is_unit() else None
    if framed is None:
        raise InexactDivisionError(f"kink factor {th.kink_factor} is not a unit")
    normalized = lp_exact_div(framed, th.loop_value)
    reported = lp_divide_exponents(normalized, report_var, exponent_factor)
    if reported is None:
        return LinkInvariantReport(bracket, w, normalized, th.variable, normalized, True)
    return LinkInvariantReport(bracket, w, reported, report_var, normalized, False)
