"""Binary cubics, the det^{-1} x Sym^3 twisted GL2 action, and orbit invariants.

Coefficient convention, fixed once for the whole package: the vector
(r0, r1, r2, r3) stands for the cubic

    r(x, y) = r0*y^3 - 3*r1*y^2*x - 3*r2*y*x^2 - r3*x^3.

A line [u1:u2] stands for the linear form u(x, y) = u1*y - u2*x, whose zero
through the origin is the point (x, y) = (u1, u2).  All arithmetic is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .linalg import Matrix, format_rational, rational


class SingularGroupElement(ValueError):
    """Raised when a group element has zero determinant."""


class ZeroCubic(ValueError):
    """Raised by operations that are meaningless on the zero cubic."""


# -- plain-basis helpers ------------------------------------------------------
#
# Internally some routines expand cubics in the plain monomial basis
#     a0*y^3 + a1*y^2*x + a2*y*x^2 + a3*x^3,
# related to the twisted coefficients by a = (r0, -3r1, -3r2, -r3).
# A homogeneous polynomial of degree d is a list of d+1 Fractions, the
# coefficient of y^(d-i)*x^i at index i.


def to_plain(coeffs) -> list[Fraction]:
    r0, r1, r2, r3 = (rational(c) for c in coeffs)
    return [r0, -3 * r1, -3 * r2, -r3]


def from_plain(plain) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    a0, a1, a2, a3 = (rational(c) for c in plain)
    return (a0, -a1 / 3, -a2 / 3, -a3)


def poly_mul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_eval(p, x, y) -> Fraction:
    """Evaluate a homogeneous polynomial (plain basis) at the point (x, y)."""
    x, y = rational(x), rational(y)
    d = len(p) - 1
    return sum((rational(c) * y ** (d - i) * x**i for i, c in enumerate(p)), Fraction(0))


def poly_dx(p) -> list[Fraction]:
    """d/dx of a homogeneous polynomial in the plain basis."""
    d = len(p) - 1
    return [rational(p[i]) * i for i in range(1, d + 1)]


def poly_dy(p) -> list[Fraction]:
    """d/dy of a homogeneous polynomial in the plain basis."""
    d = len(p) - 1
    return [rational(p[i]) * (d - i) for i in range(d)]


def divide_by_form(p: list[Fraction], u1: Fraction, u2: Fraction):
    """Divide homogeneous p by the form u1*y - u2*x.

    Returns (quotient, exact) where exact says the division left no remainder.
    """
    u1, u2 = rational(u1), rational(u2)
    if u1 == 0 and u2 == 0:
        raise ValueError("zero linear form")
    d = len(p) - 1
    if u1 != 0:
        # synthetic division along descending powers of y
        q = [Fraction(0)] * d
        carry = Fraction(0)
        for i in range(d):
            q[i] = (rational(p[i]) + u2 * carry) / u1
            carry = q[i]
        remainder = rational(p[d]) + u2 * carry
        return q, remainder == 0
    # form is -u2*x: divisible iff the y^d coefficient vanishes
    if rational(p[0]) != 0:
        return [Fraction(0)] * d, False
    return [rational(c) / (-u2) for c in p[1:]], True


def poly_gcd_homogeneous(p: list[Fraction], q: list[Fraction]) -> int:
    """Degree of gcd of two homogeneous polynomials (0 means coprime).

    Strips common powers of x and y, then runs a univariate Euclid on the
    dehomogenizations.  Returns the total degree of the gcd; the zero
    polynomial is treated as divisible by everything.
    """

    def split(p):
        p = [rational(c) for c in p]
        if all(c == 0 for c in p):
            return None
        lead = next(i for i, c in enumerate(p) if c != 0)  # power of x
        tail = next(i for i, c in enumerate(reversed(p)) if c != 0)  # power of y
        core = p[lead : len(p) - tail]
        return lead, tail, core  # core[0] != 0 != core[-1]

    sp, sq = split(p), split(q)
    if sp is None and sq is None:
        return 0
    if sp is None:
        return len(q) - 1
    if sq is None:
        return len(p) - 1
    xp, yp, cp = sp
    xq, yq, cq = sq
    a, b = list(cp), list(cq)
    while any(c != 0 for c in b):
        # univariate Euclid in s = x/y on coefficient lists (lowest first)
        while len(a) >= len(b) and any(c != 0 for c in a):
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            a = [c - f * (b[i - shift] if 0 <= i - shift < len(b) else 0) for i, c in enumerate(a)]
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return min(xp, xq) + min(yp, yq) + (len(a) - 1)


# -- domain types -------------------------------------------------------------


class OrbitClass(enum.Enum):
    """The four GL2 orbit classes of binary cubics, by increasing dimension."""

    C0 = 0
    C1 = 1
    C2 = 2
    C3 = 3

    @property
    def dim(self) -> int:
        return {0: 0, 1: 2, 2: 3, 3: 4}[self.value]


class MultiplicityStructure(enum.Enum):
    ZERO = "zero"
    TRIPLE_LINE = "triple_line"
    DOUBLE_PLUS_SIMPLE = "double_plus_simple"
    THREE_DISTINCT = "three_distinct"


ORBIT_TO_STRUCTURE = {
    OrbitClass.C0: MultiplicityStructure.ZERO,
    OrbitClass.C1: MultiplicityStructure.TRIPLE_LINE,
    OrbitClass.C2: MultiplicityStructure.DOUBLE_PLUS_SIMPLE,
    OrbitClass.C3: MultiplicityStructure.THREE_DISTINCT,
}
STRUCTURE_TO_ORBIT = {v: k for k, v in ORBIT_TO_STRUCTURE.items()}


class _CoeffVector:
    """Shared behaviour of the primal and dual coefficient 4-vectors."""

    __slots__ = ("coeffs",)

    def __init__(self, c0, c1, c2, c3):
        self.coeffs = (rational(c0), rational(c1), rational(c2), rational(c3))

    @classmethod
    def from_coeffs(cls, coeffs):
        return cls(*coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def scale(self, c):
        c = rational(c)
        return type(self)(*(c * x for x in self.coeffs))

    def __add__(self, other):
        if type(other) is not type(self):
            raise TypeError("cannot mix primal and dual cubics")
        return type(self)(*(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.coeffs))

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(format_rational(c) for c in self.coeffs)})"

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


class BinaryCubic(_CoeffVector):
    """A cubic in the moduli space V, in the twisted coefficient convention."""


class DualCubic(_CoeffVector):
    """A cubic viewed in the dual space V*; same coefficient convention."""


@dataclass(frozen=True)
class GroupElement:
    """An invertible 2x2 rational matrix [[a, b], [c, d]]."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __init__(self, a, b, c, d):
        object.__setattr__(self, "a", rational(a))
        object.__setattr__(self, "b", rational(b))
        object.__setattr__(self, "c", rational(c))
        object.__setattr__(self, "d", rational(d))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1, 0, 0, 1)

    @classmethod
    def diagonal(cls, a, d) -> "GroupElement":
        return cls(a, 0, 0, d)

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def require_invertible(self) -> None:
        if self.det() == 0:
            raise SingularGroupElement(f"{self} has determinant 0")

    def inverse(self) -> "GroupElement":
        self.require_invertible()
        dt = self.det()
        return GroupElement(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def transpose(self) -> "GroupElement":
        return GroupElement(self.a, self.c, self.b, self.d)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale(self, t) -> "GroupElement":
        t = rational(t)
        return GroupElement(t * self.a, t * self.b, t * self.c, t * self.d)

    def to_json(self) -> list[list[str]]:
        return [
            [format_rational(self.a), format_rational(self.b)],
            [format_rational(self.c), format_rational(self.d)],
        ]

    def __repr__(self):
        e = [format_rational(x) for x in (self.a, self.b, self.c, self.d)]
        return f"GroupElement([[{e[0]}, {e[1]}], [{e[2]}, {e[3]}]])"


class Line:
    """A projective line [u1:u2], i.e. the form u1*y - u2*x, normalized so the
    first nonzero coordinate is 1."""

    __slots__ = ("u1", "u2")

    def __init__(self, u1, u2):
        u1, u2 = rational(u1), rational(u2)
        if u1 == 0 and u2 == 0:
            raise ValueError("a line needs a nonzero coordinate pair")
        scale = u1 if u1 != 0 else u2
        self.u1 = u1 / scale
        self.u2 = u2 / scale

    def perp(self) -> "Line":
        """The unique line v with u1*v1 + u2*v2 = 0."""
        return Line(-self.u2, self.u1)

    def form_plain(self) -> list[Fraction]:
        """The form u1*y - u2*x as a degree-1 plain-basis polynomial."""
        return [self.u1, -self.u2]

    def __eq__(self, other) -> bool:
        return isinstance(other, Line) and (self.u1, self.u2) == (other.u1, other.u2)

    def __hash__(self):
        return hash((self.u1, self.u2))

    def __repr__(self):
        return f"Line[{format_rational(self.u1)}:{format_rational(self.u2)}]"

    def to_json(self) -> list[str]:
        return [format_rational(self.u1), format_rational(self.u2)]


# canonical orbit representatives; xy(x+y) is the rational-split C3 element
REPRESENTATIVES = {
    OrbitClass.C0: BinaryCubic(0, 0, 0, 0),
    OrbitClass.C1: BinaryCubic(1, 0, 0, 0),  # y^3
    OrbitClass.C2: BinaryCubic(0, 1, 0, 0),  # -3xy^2
    OrbitClass.C3: BinaryCubic(1, 0, 1, 0),  # y(y^2 - 3x^2)
}

RATIONAL_SPLIT_REPRESENTATIVES = {
    OrbitClass.C0: BinaryCubic(0, 0, 0, 0),
    OrbitClass.C1: BinaryCubic(1, 0, 0, 0),
    OrbitClass.C2: BinaryCubic(0, 1, 0, 0),
    OrbitClass.C3: BinaryCubic(0, Fraction(-1, 3), Fraction(-1, 3), 0),  # xy(x+y)
}


# -- operations ---------------------------------------------------------------


def evaluate(r: BinaryCubic | DualCubic, x, y) -> Fraction:
    """r(x, y) = r0*y^3 - 3*r1*y^2*x - 3*r2*y*x^2 - r3*x^3, exactly."""
    x, y = rational(x), rational(y)
    r0, r1, r2, r3 = r.coeffs
    return r0 * y**3 - 3 * r1 * y**2 * x - 3 * r2 * y * x**2 - r3 * x**3


def _substitute(plain: list[Fraction], h: GroupElement) -> list[Fraction]:
    """Expand p((x, y) h) for a homogeneous polynomial in the plain basis."""
    # x |-> a x + c y, y |-> b x + d y
    xs = [h.c, h.a]  # image of x, plain degree-1 basis (y-coeff, x-coeff)
    ys = [h.d, h.b]
    d = len(plain) - 1
    out = [Fraction(0)] * (d + 1)
    for i, coeff in enumerate(plain):  # term y^(d-i) x^i
        if coeff == 0:
            continue
        term = [Fraction(1)]
        for _ in range(d - i):
            term = poly_mul(term, ys)
        for _ in range(i):
            term = poly_mul(term, xs)
        for k, t in enumerate(term):
            out[k] += coeff * t
    return out


def act(h: GroupElement, r: BinaryCubic) -> BinaryCubic:
    """The twisted action (h.r)(x, y) = det(h)^{-1} r((x, y) h).

    Implemented by polynomial substitution and expansion; the closed-form
    matrix of the same action lives in `act_matrix` and the two are kept as
    independent routes on purpose.
    """
    h.require_invertible()
    plain = _substitute(to_plain(r.coeffs), h)
    dt = h.det()
    return BinaryCubic(*from_plain([c / dt for c in plain]))


def act_matrix(h: GroupElement) -> Matrix:
    """The 4x4 matrix of the twisted action on coefficient vectors."""
    h.require_invertible()
    a, b, c, d = h.a, h.b, h.c, h.d
    dt = h.det()
    raw = [
        [d**3, -3 * c * d**2, -3 * c**2 * d, -(c**3)],
        [-b * d**2, d * (a * d + 2 * b * c), c * (2 * a * d + b * c), a * c**2],
        [-(b**2) * d, b * (2 * a * d + b * c), a * (a * d + 2 * b * c), a**2 * c],
        [-(b**3), 3 * a * b**2, 3 * a**2 * b, a**3],
    ]
    return Matrix.from_rows([[e / dt for e in row] for row in raw])


def act_dual(h: GroupElement, s: DualCubic) -> DualCubic:
    """The contragredient twisted action (h.s)(x, y) = det(h) s((x, y) t(h^{-1}))."""
    h.require_invertible()
    g = h.inverse().transpose()
    plain = _substitute(to_plain(s.coeffs), g)
    dt = h.det()
    return DualCubic(*from_plain([dt * c for c in plain]))


def hessian_quadratic(r: BinaryCubic | DualCubic):
    """Coefficients (d0, d1, d2) of the Hessian quadratic d0 y^2 + d1 xy + d2 x^2.

    This equals one quarter of det Hess(r); the factor is pinned by an
    expansion oracle in the test-suite.
    """
    r0, r1, r2, r3 = r.coeffs
    d0 = -9 * (r2 * r0 + r1 * r1)
    d1 = -9 * (r0 * r3 + r1 * r2)
    d2 = 9 * (r1 * r3 - r2 * r2)
    return d0, d1, d2


def discriminant(r: BinaryCubic | DualCubic) -> Fraction:
    """Discriminant of the Hessian quadratic; zero iff r has a repeated root."""
    d0, d1, d2 = hessian_quadratic(r)
    return d1 * d1 - 4 * d0 * d2


def classify(r: BinaryCubic | DualCubic) -> OrbitClass:
    """Orbit class from the two rational invariants only (no factoring)."""
    if r.is_zero():
        return OrbitClass.C0
    d0, d1, d2 = hessian_quadratic(r)
    if d0 == 0 and d1 == 0 and d2 == 0:
        return OrbitClass.C1
    if d1 * d1 - 4 * d0 * d2 == 0:
        return OrbitClass.C2
    return OrbitClass.C3


def multiplicity_structure(r: BinaryCubic | DualCubic) -> MultiplicityStructure:
    return ORBIT_TO_STRUCTURE[classify(r)]


def divides(u: Line, r: BinaryCubic | DualCubic) -> int:
    """Largest k with u(x,y)^k dividing r, by exact polynomial division.

    By convention the zero cubic is divisible by every line (returns 3).
    """
    if r.is_zero():
        return 3
    p = to_plain(r.coeffs)
    mult = 0
    while mult < 3:
        q, exact = divide_by_form(p, u.u1, u.u2)
        if not exact:
            break
        p = q
        mult += 1
    return mult


def rational_lines(r: BinaryCubic | DualCubic):
    """All rational projective roots of r with multiplicities.

    Returns (lines, residual_degree) where lines is a list of (Line, mult)
    and residual_degree is the degree of the remaining factor with no
    rational root (0 when r splits over the rationals).
    """
    if r.is_zero():
        raise ZeroCubic("the zero cubic has no well-defined root list")
    p = to_plain(r.coeffs)
    found: list[tuple[Line, int]] = []
    for root in _rational_projective_roots(p):
        mult = 0
        q = p
        while True:
            q2, exact = divide_by_form(q, root.u1, root.u2)
            if not exact:
                break
            q = q2
            mult += 1
        if mult:
            found.append((root, mult))
            p = q
    residual = len(p) - 1
    return found, residual


def _rational_projective_roots(p: list[Fraction]) -> list[Line]:
    """Rational zeros [u1:u2] of a homogeneous polynomial, each listed once."""
    d = len(p) - 1
    roots: list[Line] = []
    if rational(p[0]) == 0:  # x divides: the point (x, y) = (0, 1), line [0:1]
        roots.append(Line(0, 1))
    # remaining roots have u1 != 0: normalize u1 = 1, solve p(1, t) for t = u2
    # where the candidate line [1:t] vanishes at (x, y) = (1, t)
    coeffs = [rational(c) for c in p]  # c_i on y^(d-i) x^i; at (x,y)=(1,t): sum c_i t^(d-i)
    uni = list(reversed(coeffs))  # index j: coefficient of t^j
    while uni and uni[-1] == 0:
        uni.pop()
    if not uni:
        return roots
    lcm = 1
    for c in uni:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in uni]
    while ints and ints[0] == 0:  # factor t | p(1, t): root t = 0
        if not any(line == Line(1, 0) for line in roots):
            roots.append(Line(1, 0))
        ints = ints[1:]
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    for pnum in _divisors(a0):
        for pden in _divisors(an):
            for sign in (1, -1):
                t = Fraction(sign * pnum, pden)
                if sum(c * t**j for j, c in enumerate(ints)) == 0:
                    cand = Line(1, t)
                    if cand not in roots:
                        roots.append(cand)
    return roots


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def line_of_factor(plain_linear) -> Line:
    """Line of a degree-1 plain-basis factor [y-coeff, x-coeff]."""
    a, b = rational(plain_linear[0]), rational(plain_linear[1])
    return Line(a, -b)
