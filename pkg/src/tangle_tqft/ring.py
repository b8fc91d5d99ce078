"""Exact Laurent polynomials over the integers and dense matrices over them.

Both types are immutable. A :class:`LaurentPoly` is stored in canonical form
(sorted exponents, no zero coefficients), so equality and hashing are plain
tuple comparisons.

Matrices use the left-factor-major Kronecker convention throughout the
package: the basis vector of ``V_1 (x) V_2`` indexed by ``(i1, i2)`` sits at
flat position ``i1 * dim2 + i2``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "LaurentPoly",
    "RingMatrix",
    "InexactDivisionError",
    "VariableMismatchError",
    "lp_add",
    "lp_mul",
    "lp_subst_monomial",
    "lp_divide_exponents",
    "lp_exact_div",
    "mat_mul",
    "mat_tensor",
]


class VariableMismatchError(ValueError):
    pass


class InexactDivisionError(ArithmeticError):
    pass


class LaurentPoly:
    """An element of Z[x, x^-1] in one named variable."""

    __slots__ = ("variable", "_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, variable: str = "q"):
        if not variable or not variable.isidentifier():
            raise ValueError(f"invalid variable name {variable!r}")
        items = []
        if terms:
            for e, c in terms.items():
                if c:
                    items.append((int(e), int(c)))
        items.sort()
        self.variable = variable
        self._terms: tuple[tuple[int, int], ...] = tuple(items)
        self._hash: int | None = None

    @classmethod
    def _from_sorted(cls, items: tuple[tuple[int, int], ...], variable: str) -> LaurentPoly:
        p = object.__new__(cls)
        p.variable = variable
        p._terms = items
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: int, variable: str = "q") -> LaurentPoly:
        return cls({0: c}, variable)

    @classmethod
    def monomial(cls, c: int, e: int, variable: str = "q") -> LaurentPoly:
        return cls({e: c}, variable)

    @classmethod
    def zero(cls, variable: str = "q") -> LaurentPoly:
        return cls._from_sorted((), variable)

    @classmethod
    def one(cls, variable: str = "q") -> LaurentPoly:
        return cls._from_sorted(((0, 1),), variable)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == ((0, 1),)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def is_unit(self) -> bool:
        """Units of Z[x, x^-1] are exactly the monomials +-x^k."""
        return len(self._terms) == 1 and abs(self._terms[0][1]) == 1

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[0][0]

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[-1][0]

    def coefficient(self, e: int) -> int:
        for exp, c in self._terms:
            if exp == e:
                return c
        return 0

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms[0][1] if self._terms else 0

    def evaluate(self, x: complex) -> complex:
        return sum(c * x**e for e, c in self._terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: object) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            if other.variable != self.variable:
                raise VariableMismatchError(
                    f"variable mismatch: {self.variable!r} vs {other.variable!r}"
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentPoly.constant(other, self.variable)
        return None

    def __add__(self, other: object) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        acc = dict(self._terms)
        for e, c in o._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc, self.variable)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._from_sorted(tuple((e, -c) for e, c in self._terms), self.variable)

    def __sub__(self, other: object) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._terms or not o._terms:
            return LaurentPoly.zero(self.variable)
        if self.is_one():
            return o
        if o.is_one():
            return self
        if len(o._terms) == 1:
            e0, c0 = o._terms[0]
            return LaurentPoly._from_sorted(
                tuple((e + e0, c * c0) for e, c in self._terms), self.variable
            )
        if len(self._terms) == 1:
            return o * self
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in o._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc, self.variable)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_unit():
                raise InexactDivisionError(f"{self} is not invertible in the Laurent ring")
            (e, c), = self._terms
            return LaurentPoly.monomial(c ** (-n), e * n, self.variable)
        result = LaurentPoly.one(self.variable)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse_variable(self) -> LaurentPoly:
        """Apply x -> x^-1."""
        return LaurentPoly({-e: c for e, c in self._terms}, self.variable)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self.variable == other.variable and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variable, self._terms))
        return self._hash

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for k, (e, c) in enumerate(self._terms):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = self.variable if e == 1 else f"{self.variable}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            if k == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r}, variable={self.variable!r})"

    @classmethod
    def parse(cls, text: str, variable: str | None = None) -> LaurentPoly:
        """Parse the textual form produced by ``str``.

        The variable name is inferred from the text; pass ``variable`` when the
        text is a bare constant or to enforce a name.
        """
        s = text.replace(" ", "").replace("\t", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        pos = 0
        acc: dict[int, int] = {}
        seen_var = variable
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
            sign = -1 if m.group("sign") == "-" else 1
            coeff_txt, var, exp_txt = m.group("coeff"), m.group("var"), m.group("exp")
            if var is None:
                if coeff_txt is None or exp_txt is not None:
                    raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
                e, c = 0, int(coeff_txt)
            else:
                if seen_var is not None and var != seen_var:
                    raise VariableMismatchError(f"variable {var!r} in {text!r}, expected {seen_var!r}")
                seen_var = var
                c = int(coeff_txt) if coeff_txt is not None else 1
                e = int(exp_txt) if exp_txt is not None else 1
            acc[e] = acc.get(e, 0) + sign * c
            pos = m.end()
        return cls(acc, seen_var or "q")


_TERM_RE = re.compile(
    r"(?P<sign>[+-])"
    r"(?:(?P<coeff>\d+)(?:\*(?=[A-Za-z_]))?)?"
    r"(?:(?P<var>[A-Za-z_][A-Za-z_0-9]*)(?:\^(?P<exp>[+-]?\d+))?)?"
)


def _check_same_var(a: LaurentPoly, b: LaurentPoly) -> None:
    if a.variable != b.variable:
        raise VariableMismatchError(f"variable mismatch: {a.variable!r} vs {b.variable!r}")


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _check_same_var(a, b)
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _check_same_var(a, b)
    return a * b


def lp_subst_monomial(
    p: LaurentPoly, new_var: str, exponent_factor: int, negate_var: bool = False
) -> LaurentPoly:
    """Substitute ``x -> (+-y)^f``: each ``c*x^e`` becomes ``c*(+-1)^e*y^(e*f)``."""
    if exponent_factor == 0:
        raise ValueError("exponent_factor must be nonzero")
    acc = {}
    for e, c in p.items():
        if negate_var and e % 2:
            c = -c
        acc[e * exponent_factor] = c
    return LaurentPoly(acc, new_var)


def lp_divide_exponents(p: LaurentPoly, new_var: str, divisor: int) -> LaurentPoly | None:
    """Substitute ``x -> y^(1/divisor)``; None when some exponent is not divisible."""
    if divisor == 0:
        raise ValueError("divisor must be nonzero")
    acc = {}
    for e, c in p.items():
        if e % divisor:
            return None
        acc[e // divisor] = c
    return LaurentPoly(acc, new_var)


def lp_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient ``a / b`` in Z[x, x^-1]; raises InexactDivisionError on a remainder."""
    _check_same_var(a, b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    # shift both to honest polynomials with nonzero constant term, then long-divide
    la, lb = a.min_exponent(), b.min_exponent()
    num = {e - la: c for e, c in a.items()}
    den = [(e - lb, c) for e, c in b.items()]
    dtop, dlead = den[-1]
    quot: dict[int, int] = {}
    while num:
        top = max(num)
        if top < dtop:
            break
        c = num[top]
        if c % dlead:
            raise InexactDivisionError(f"({a}) / ({b}) is not exact")
        qc = c // dlead
        shift = top - dtop
        quot[shift] = qc
        for e, dc in den:
            k = e + shift
            v = num.get(k, 0) - qc * dc
            if v:
                num[k] = v
            else:
                num.pop(k, None)
    if num:
        raise InexactDivisionError(f"({a}) / ({b}) is not exact")
    return LaurentPoly({e + la - lb: c for e, c in quot.items()}, a.variable)


class RingMatrix:
    """Dense row-major matrix with LaurentPoly entries in one shared variable."""

    __slots__ = ("rows", "cols", "entries", "variable")

    def __init__(self, rows: int, cols: int, entries: Sequence[LaurentPoly], variable: str | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        if variable is None:
            if not entries:
                raise ValueError("variable required for an empty matrix")
            variable = entries[0].variable
        for x in entries:
            if x.variable != variable:
                raise VariableMismatchError(f"entry in {x.variable!r}, matrix in {variable!r}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.variable = variable

    @classmethod
    def identity(cls, n: int, variable: str = "q") -> RingMatrix:
        zero, one = LaurentPoly.zero(variable), LaurentPoly.one(variable)
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)], variable)

    @classmethod
    def zeros(cls, rows: int, cols: int, variable: str = "q") -> RingMatrix:
        return cls(rows, cols, [LaurentPoly.zero(variable)] * (rows * cols), variable)

    @classmethod
    def scalar(cls, p: LaurentPoly) -> RingMatrix:
        return cls(1, 1, [p], p.variable)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly | int]], variable: str) -> RingMatrix:
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            for x in row:
                flat.append(x if isinstance(x, LaurentPoly) else LaurentPoly.constant(x, variable))
        return cls(r, c, flat, variable)

    @classmethod
    def from_sparse(
        cls, rows: int, cols: int, data: Mapping[tuple[int, int], LaurentPoly], variable: str
    ) -> RingMatrix:
        zero = LaurentPoly.zero(variable)
        flat = [zero] * (rows * cols)
        for (i, j), v in data.items():
            flat[i * cols + j] = v
        return cls(rows, cols, flat, variable)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[LaurentPoly, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[LaurentPoly]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def nonzero(self) -> Iterator[tuple[int, int, LaurentPoly]]:
        for k, v in enumerate(self.entries):
            if not v.is_zero():
                yield divmod(k, self.cols) + (v,)

    def scalar_value(self) -> LaurentPoly:
        if self.shape != (1, 1):
            raise ValueError(f"not a 1x1 matrix: shape {self.shape}")
        return self.entries[0]

    def scale(self, p: LaurentPoly) -> RingMatrix:
        return RingMatrix(self.rows, self.cols, [p * x for x in self.entries], self.variable)

    def map_entries(self, fn) -> RingMatrix:
        out = [fn(x) for x in self.entries]
        return RingMatrix(self.rows, self.cols, out, out[0].variable if out else self.variable)

    def transpose(self) -> RingMatrix:
        return RingMatrix(
            self.cols, self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
            self.variable,
        )

    def __add__(self, other: RingMatrix) -> RingMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return RingMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)], self.variable)

    def __sub__(self, other: RingMatrix) -> RingMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return RingMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)], self.variable)

    def __matmul__(self, other: RingMatrix) -> RingMatrix:
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.shape == other.shape and self.variable == other.variable and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.variable, self.entries))

    def __repr__(self) -> str:
        return f"RingMatrix({self.rows}x{self.cols}, variable={self.variable!r})"

    def __str__(self) -> str:
        if self.shape == (1, 1):
            return str(self.entries[0])
        return "\n".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))

    def first_difference(self, other: RingMatrix) -> tuple[int, int] | None:
        """First (row, col) where two same-shape matrices differ."""
        for k, (a, b) in enumerate(zip(self.entries, other.entries)):
            if a != b:
                return divmod(k, self.cols)
        return None


def mat_mul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if a.variable != b.variable:
        raise VariableMismatchError(f"variable mismatch: {a.variable!r} vs {b.variable!r}")
    var = a.variable
    zero = LaurentPoly.zero(var)
    # row-sparse view of b
    b_rows: list[list[tuple[int, LaurentPoly]]] = [[] for _ in range(b.rows)]
    for i, j, v in b.nonzero():
        b_rows[i].append((j, v))
    out = [zero] * (a.rows * b.cols)
    for i in range(a.rows):
        acc: dict[int, LaurentPoly] = {}
        for k, x in enumerate(a.row(i)):
            if x.is_zero():
                continue
            for j, y in b_rows[k]:
                prod = x * y
                acc[j] = acc[j] + prod if j in acc else prod
        for j, v in acc.items():
            out[i * b.cols + j] = v
    return RingMatrix(a.rows, b.cols, out, var)


def mat_tensor(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    """Kronecker product, left-factor-major: row (i1, i2) -> i1*b.rows + i2."""
    if a.variable != b.variable:
        raise VariableMismatchError(f"variable mismatch: {a.variable!r} vs {b.variable!r}")
    rows, cols = a.rows * b.rows, a.cols * b.cols
    zero = LaurentPoly.zero(a.variable)
    out = [zero] * (rows * cols)
    b_nz = list(b.nonzero())
    for i1, j1, x in a.nonzero():
        for i2, j2, y in b_nz:
            out[(i1 * b.rows + i2) * cols + j1 * b.cols + j2] = x * y
    return RingMatrix(rows, cols, out, a.variable)


def kron_all(mats: Iterable[RingMatrix], variable: str) -> RingMatrix:
    result = RingMatrix.identity(1, variable)
    for m in mats:
        result = mat_tensor(result, m)
    return result
