"""Exact rational scalars, small dense matrices and rational functions in q.

Everything here works over `fractions.Fraction`; there is no floating point
anywhere.  Matrices are tiny (at most 6x6 in this package) so plain Gaussian
elimination with exact pivoting is all we need.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class SingularMatrix(ValueError):
    """Raised when inverting a matrix with zero determinant."""


class PoleAtPoint(ZeroDivisionError):
    """Raised when evaluating a rational function at a pole."""


def rational(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' (or plain 'p') with optional sign; no float syntax."""
    s = text.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    """Render as 'p/q', or 'p' when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Matrix:
    """Immutable dense matrix with Fraction entries, row-major."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(rational(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self._entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            flat.extend(row)
        return cls(nrows, ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self):
        body = "; ".join(
            " ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(
            self.rows, self.cols, [a + b for a, b in zip(self._entries, other._entries)]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(
            self.rows, self.cols, [a - b for a, b in zip(self._entries, other._entries)]
        )

    def scale(self, c) -> "Matrix":
        c = rational(c)
        return Matrix(self.rows, self.cols, [c * e for e in self._entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return Matrix(self.rows, other.cols, out)

    def matvec(self, v: Sequence) -> list[Fraction]:
        v = [rational(x) for x in v]
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [
            sum((self[i, k] * v[k] for k in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        ]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)]
        )

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self._entries)


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (in place on a copy); returns (rref, pivot cols)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _rref(m.to_rows())
    return len(pivots)


def kernel_basis(m: Matrix) -> list[list[Fraction]]:
    """Basis of the right null space {v : m v = 0}, exact.

    The basis is in the standard RREF form: one vector per free column, with
    a 1 in the free coordinate.  An empty matrix has the full standard basis.
    """
    if m.rows == 0 or m.cols == 0:
        return [
            [Fraction(int(i == j)) for i in range(m.cols)] for j in range(m.cols)
        ]
    rref, pivots = _rref(m.to_rows())
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc]
        basis.append(v)
    return basis


def invert(m: Matrix) -> Matrix:
    """Exact inverse via Gauss-Jordan; raises SingularMatrix when det = 0."""
    if m.rows != m.cols:
        raise SingularMatrix("only square matrices are invertible")
    n = m.rows
    aug = [list(m.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rref, pivots = _rref(aug)
    if pivots[: n if len(pivots) >= n else len(pivots)] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return Matrix.from_rows([row[n:] for row in rref[:n]])


def det(m: Matrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    a = m.to_rows()
    n = m.rows
    result = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def solve(m: Matrix, b: Sequence) -> list[Fraction] | None:
    """Solve m x = b exactly; None when inconsistent.

    When the solution is not unique the free coordinates are set to 0, so
    callers that need uniqueness should check `rank(m) == m.cols` first.
    """
    b = [rational(x) for x in b]
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    aug = [list(m.row(i)) + [b[i]] for i in range(m.rows)]
    rref, pivots = _rref(aug)
    if m.cols in pivots:
        return None  # a pivot in the augmented column: inconsistent
    x = [Fraction(0)] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][m.cols]
    return x


# ---------------------------------------------------------------------------
# Integer-coefficient polynomials in one formal variable q, and their ratios.
# ---------------------------------------------------------------------------


def _trim(coeffs: list) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    """Univariate polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([rational(c) for c in coeffs])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([rational(c)])

    @classmethod
    def q(cls) -> "Poly":
        return cls([0, 1])

    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def __pow__(self, n: int) -> "Poly":
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = rational(c)
        return Poly([c * x for x in self.coeffs])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        num = list(self.coeffs)
        den = other.coeffs
        if len(num) < len(den):
            return Poly(), self
        qcoeffs = [Fraction(0)] * (len(num) - len(den) + 1)
        for i in range(len(num) - len(den), -1, -1):
            c = num[i + len(den) - 1] / den[-1]
            qcoeffs[i] = c
            if c != 0:
                for j, d in enumerate(den):
                    num[i + j] -= c * d
        return Poly(qcoeffs), Poly(num)

    def __call__(self, x) -> Fraction:
        x = rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content_and_primitive(self) -> tuple[Fraction, "Poly"]:
        """Write self = content * primitive with integer primitive coefficients."""
        if self.is_zero():
            return Fraction(0), Poly()
        denom_lcm = 1
        for c in self.coeffs:
            denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
        ints = [c * denom_lcm for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, abs(c.numerator))
        content = Fraction(g, denom_lcm)
        if self.coeffs[-1] < 0:
            content = -content
        return content, Poly([c / content for c in self.coeffs])

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(format_rational(c))
            elif i == 1:
                terms.append(f"{format_rational(c)}*q" if c != 1 else "q")
            else:
                terms.append(f"{format_rational(c)}*q^{i}" if c != 1 else f"q^{i}")
        return "Poly(" + " + ".join(terms) + ")"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic-normalized polynomial gcd over the rationals."""
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    lead = a.coeffs[-1]
    return Poly([c / lead for c in a.coeffs])


class RationalFunctionQ:
    """Quotient of integer-coefficient polynomials in q, in canonical form.

    Canonical form: numerator and denominator are coprime with integer
    coefficients, each primitive apart from a single leading rational content
    pushed into the numerator, and the denominator's leading coefficient is
    positive.  Equality of values implies equality of representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        den = Poly.const(1) if den is None else den
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        g = poly_gcd(num, den)
        num, _ = num.divmod(g)
        den, _ = den.divmod(g)
        cn, pn = num.content_and_primitive()
        cd, pd = den.content_and_primitive()
        ratio = cn / cd
        self.num = pn.scale(ratio)
        self.den = pd

    @classmethod
    def const(cls, c) -> "RationalFunctionQ":
        return cls(Poly.const(c))

    @classmethod
    def q(cls) -> "RationalFunctionQ":
        return cls(Poly.q())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFunctionQ)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "RationalFunctionQ") -> "RationalFunctionQ":
        return RationalFunctionQ(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalFunctionQ(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "RationalFunctionQ") -> "RationalFunctionQ":
        return RationalFunctionQ(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunctionQ") -> "RationalFunctionQ":
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunctionQ(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RationalFunctionQ":
        if n < 0:
            return RationalFunctionQ(self.den, self.num) ** (-n)
        out = RationalFunctionQ.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        return f"RationalFunctionQ({self.num!r} / {self.den!r})"

    def to_json(self) -> dict:
        return {
            "num": [format_rational(c) for c in self.num.coeffs],
            "den": [format_rational(c) for c in self.den.coeffs],
        }


def eval_q(f: RationalFunctionQ, q0) -> Fraction:
    """Exact evaluation of f at q = q0; raises PoleAtPoint on a pole."""
    q0 = rational(q0)
    d = f.den(q0)
    if d == 0:
        raise PoleAtPoint(f"denominator vanishes at q = {format_rational(q0)}")
    return f.num(q0) / d
