"""Killing pairing, moment map, conormal strata and (microlocal) stabilizers.

The conormal variety is the vanishing locus of the 2x2 moment map [r, s];
its regular strata pair an orbit with its dual orbit.  Stabilizer component
groups are computed honestly: the finite generators are found by solving
exact line-permutation equations and every generator is verified to fix its
input, while dimensions come from the kernel of the infinitesimal action.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .cubics import (
    BinaryCubic,
    DualCubic,
    GroupElement,
    Line,
    MultiplicityStructure,
    OrbitClass,
    act,
    act_dual,
    classify,
    poly_dx,
    poly_dy,
    poly_mul,
    from_plain,
    rational_lines,
    to_plain,
)
from .linalg import Matrix, kernel_basis, rational


class IrrationalSplitting(ValueError):
    """Raised when a stabilizer needs lines that are not rational."""


class NotRegularConormal(ValueError):
    """Raised when a point is not on a regular conormal stratum."""


class ComponentGroup(enum.Enum):
    TRIVIAL = "trivial"
    S2 = "S2"
    S3 = "S3"

    @property
    def order(self) -> int:
        return {"trivial": 1, "S2": 2, "S3": 6}[self.value]


@dataclass(frozen=True)
class ConormalPoint:
    r: BinaryCubic
    s: DualCubic

    def to_json(self) -> dict:
        return {"r": self.r.to_json(), "s": self.s.to_json()}


@dataclass
class StabilizerDescription:
    dimension: int
    component_group: ComponentGroup
    generators: list[GroupElement] = field(default_factory=list)

    def group_elements(self) -> list[GroupElement]:
        """Closure of the finite part under multiplication."""
        elems = [GroupElement.identity()]
        frontier = list(self.generators)
        while frontier:
            g = frontier.pop()
            if g not in elems:
                elems.append(g)
                frontier.extend([g * h for h in elems] + [h * g for h in elems])
        return elems

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "component_group": self.component_group.value,
            "generators": [g.to_json() for g in self.generators],
        }


# -- pairing and moment map ---------------------------------------------------


def pairing(r: BinaryCubic, s: DualCubic) -> Fraction:
    """The invariant pairing <r, s> = r0 s0 + 3 r1 s1 + 3 r2 s2 + r3 s3."""
    r0, r1, r2, r3 = r.coeffs
    s0, s1, s2, s3 = s.coeffs
    return r0 * s0 + 3 * r1 * s1 + 3 * r2 * s2 + r3 * s3


def dual_from_factors(v1, v2, v3, v4, v5, v6) -> DualCubic:
    """Expand (v1 y + v2 x)(v3 y + v4 x)(v5 y + v6 x) into dual coordinates."""
    p = poly_mul(poly_mul([rational(v1), rational(v2)], [rational(v3), rational(v4)]),
                 [rational(v5), rational(v6)])
    return DualCubic(*from_plain(p))


def pairing_factored(r: BinaryCubic, v1, v2, v3, v4, v5, v6) -> Fraction:
    """<r, s> for factored s, via the Hessian of r.

    Equals (1/6) (v1 v2) . Hess(r)|_{y=v3, x=v4} . (v5 v6)^t, with the Hessian
    in the (y, x) variable order; symmetric in the three factors.
    """
    v1, v2 = rational(v1), rational(v2)
    v3, v4 = rational(v3), rational(v4)
    v5, v6 = rational(v5), rational(v6)
    r0, r1, r2, r3 = r.coeffs
    # Hess(r) = [[r_yy, r_yx], [r_xy, r_xx]] at (y, x) = (v3, v4)
    ryy = 6 * r0 * v3 - 6 * r1 * v4
    ryx = -6 * r1 * v3 - 6 * r2 * v4
    rxx = -6 * r2 * v3 - 6 * r3 * v4
    w1 = v1 * ryy + v2 * ryx
    w2 = v1 * ryx + v2 * rxx
    return (w1 * v5 + w2 * v6) / 6


def moment(r: BinaryCubic, s: DualCubic) -> Matrix:
    """The 2x2 moment map [r, s]; its vanishing defines the conormal variety."""
    r0, r1, r2, r3 = r.coeffs
    s0, s1, s2, s3 = s.coeffs
    return Matrix.from_rows(
        [
            [r0 * s0 + 2 * r1 * s1 + r2 * s2, -r1 * s0 + 2 * r2 * s1 + r3 * s2],
            [-r0 * s1 + 2 * r1 * s2 + r2 * s3, r1 * s1 + 2 * r2 * s2 + r3 * s3],
        ]
    )


def moment_matrix_of(r: BinaryCubic) -> Matrix:
    """Matrix of the linear map s |-> entries of [r, s] (4 rows, 4 cols)."""
    r0, r1, r2, r3 = r.coeffs
    return Matrix.from_rows(
        [
            [r0, 2 * r1, r2, 0],
            [-r1, 2 * r2, r3, 0],
            [0, -r0, 2 * r1, r2],
            [0, r1, 2 * r2, r3],
        ]
    )


def conormal_kernel(r: BinaryCubic) -> list[DualCubic]:
    """Exact basis of {s : [r, s] = 0}; dimension 4, 2, 1, 0 on C0..C3."""
    return [DualCubic(*v) for v in kernel_basis(moment_matrix_of(r))]


def dual_orbit_class(i: int) -> MultiplicityStructure:
    """Multiplicity structure of the dual orbit paired with stratum i."""
    return {
        0: MultiplicityStructure.THREE_DISTINCT,
        1: MultiplicityStructure.DOUBLE_PLUS_SIMPLE,
        2: MultiplicityStructure.TRIPLE_LINE,
        3: MultiplicityStructure.ZERO,
    }[i]


def in_lambda_regular(p: ConormalPoint) -> int | None:
    """Stratum index 0..3 when p lies on a regular conormal stratum, else None."""
    if not moment(p.r, p.s).is_zero():
        return None
    i = classify(p.r).value
    from .cubics import multiplicity_structure

    if multiplicity_structure(p.s) != dual_orbit_class(i):
        return None
    return i


# canonical regular base points, one per stratum, all rational-split
def canonical_regular_pairs() -> dict[int, ConormalPoint]:
    xy_x_plus_y = (0, Fraction(-1, 3), Fraction(-1, 3), 0)
    return {
        0: ConormalPoint(BinaryCubic(0, 0, 0, 0), DualCubic(*xy_x_plus_y)),
        1: ConormalPoint(BinaryCubic(1, 0, 0, 0), DualCubic(0, 0, Fraction(-1, 3), 0)),
        2: ConormalPoint(BinaryCubic(0, 1, 0, 0), DualCubic(0, 0, 0, 1)),
        3: ConormalPoint(BinaryCubic(*xy_x_plus_y), DualCubic(0, 0, 0, 0)),
    }


# -- infinitesimal action and stabilizer dimensions ---------------------------

_GL2_BASIS = ((0, 0), (0, 1), (1, 0), (1, 1))  # (row, col) of the four E_ij


def _lie_act_primal(ij, r: BinaryCubic) -> list[Fraction]:
    """d/dt act(exp(t E_ij), r) at t = 0, as a plain-basis cubic."""
    i, j = ij
    plain = to_plain(r.coeffs)
    rx, ry = poly_dx(plain), poly_dy(plain)
    # (x X11 + y X21) r_x + (x X12 + y X22) r_y - tr(X) r
    out = [Fraction(0)] * 4
    cx = [Fraction(int(i == 1 and j == 0)), Fraction(int(i == 0 and j == 0))]  # x coeff of X row
    cy = [Fraction(int(i == 1 and j == 1)), Fraction(int(i == 0 and j == 1))]
    for k, c in enumerate(poly_mul(cx, rx)):
        out[k] += c
    for k, c in enumerate(poly_mul(cy, ry)):
        out[k] += c
    if i == j:
        for k in range(4):
            out[k] -= plain[k]
    return out


def _lie_act_dual(ij, s: DualCubic) -> list[Fraction]:
    """d/dt act_dual(exp(t E_ij), s) at t = 0, as a plain-basis cubic."""
    i, j = ij
    plain = to_plain(s.coeffs)
    sx, sy = poly_dx(plain), poly_dy(plain)
    # tr(X) s - (x X11 + y X12) s_x - (x X21 + y X22) s_y
    out = [Fraction(0)] * 4
    cx = [Fraction(int(i == 0 and j == 1)), Fraction(int(i == 0 and j == 0))]
    cy = [Fraction(int(i == 1 and j == 1)), Fraction(int(i == 1 and j == 0))]
    for k, c in enumerate(poly_mul(cx, sx)):
        out[k] -= c
    for k, c in enumerate(poly_mul(cy, sy)):
        out[k] -= c
    if i == j:
        for k in range(4):
            out[k] += plain[k]
    return out


def stabilizer_dimension(r: BinaryCubic, s: DualCubic | None = None) -> int:
    """Dimension of the stabilizer of r (and s) via the infinitesimal action."""
    rows = []
    for ij in _GL2_BASIS:
        rows.append(_lie_act_primal(ij, r))
    if s is not None:
        for k, ij in enumerate(_GL2_BASIS):
            rows[k] = rows[k] + _lie_act_dual(ij, s)
    # rows index gl2 basis vectors; stabilizer = kernel of the transposed map
    m = Matrix.from_rows(rows).transpose()
    return len(kernel_basis(m))


# -- finite stabilizers -------------------------------------------------------


def _line_permutation_element(lines: list[Line], images: list[Line]) -> GroupElement | None:
    """The projective element sending line i to images[i], or None.

    A line (u1, u2) transforms to (u1, u2) . adj(h) under h, so each
    constraint 'u adj(h) parallel to w' is linear in the entries of h.
    """
    rows = []
    for u, w in zip(lines, images):
        u1, u2 = u.u1, u.u2
        w1, w2 = w.u1, w.u2
        # cross(u.adj(h), w) = 0, coefficients in (a, b, c, d)
        rows.append([-u2 * w1, u1 * w1, -u2 * w2, u1 * w2])
    basis = kernel_basis(Matrix.from_rows(rows))
    if len(basis) != 1:
        return None
    a, b, c, d = basis[0]
    h = GroupElement(a, b, c, d)
    return h if h.det() != 0 else None


def _scale_to_fix(h: GroupElement, r: BinaryCubic) -> GroupElement | None:
    """Scale h so that act(h, r) = r, using act(t h, r) = t act(h, r)."""
    image = act(h, r)
    ratio = None
    for x, y in zip(image.coeffs, r.coeffs):
        if y == 0 and x == 0:
            continue
        if y == 0 or x == 0:
            return None
        c = x / y
        if ratio is None:
            ratio = c
        elif ratio != c:
            return None
    if ratio is None or ratio == 0:
        return None
    return h.scale(1 / ratio)


def _split_three_lines(r: BinaryCubic) -> list[Line]:
    lines, residual = rational_lines(r)
    if residual != 0 or sorted(m for _, m in lines) != [1, 1, 1]:
        raise IrrationalSplitting(
            f"{r!r} does not split into three distinct rational lines"
        )
    return [u for u, _ in lines]


def _s3_stabilizer(r: BinaryCubic) -> list[GroupElement]:
    """All six elements fixing a rational-split three-line cubic."""
    lines = _split_three_lines(r)
    elements = []
    for perm in permutations(range(3)):
        h0 = _line_permutation_element(lines, [lines[p] for p in perm])
        if h0 is None:
            raise IrrationalSplitting(f"no rational element realizes permutation {perm}")
        h = _scale_to_fix(h0, r)
        if h is None or act(h, r) != r:
            raise IrrationalSplitting(f"could not normalize permutation {perm}")
        elements.append(h)
    return elements


def stabilizer_of_cubic(r: BinaryCubic) -> StabilizerDescription:
    """Stabilizer of r under the twisted action, at rational-split inputs.

    Orbit invariance makes the component group independent of the chosen
    representative; C3 inputs must have three rational lines.
    """
    orbit = classify(r)
    if orbit is OrbitClass.C0:
        return StabilizerDescription(4, ComponentGroup.TRIVIAL, [])
    if orbit in (OrbitClass.C1, OrbitClass.C2):
        _, residual = rational_lines(r)
        if residual != 0:
            raise IrrationalSplitting(f"{r!r} has an irrational factor")
        dim = 2 if orbit is OrbitClass.C1 else 1
        return StabilizerDescription(dim, ComponentGroup.TRIVIAL, [])
    elements = _s3_stabilizer(r)
    return StabilizerDescription(0, ComponentGroup.S3, elements)


def _dual_stabilizer_elements(s: DualCubic) -> list[GroupElement]:
    """Six elements fixing a rational-split three-line dual cubic.

    act_dual(h, s) = act(t(h^{-1}), s read on the primal side), so the dual
    stabilizer is the image of the primal one under h |-> t(h^{-1}).
    """
    primal = BinaryCubic(*s.coeffs)
    out = []
    for g in _s3_stabilizer(primal):
        h = g.inverse().transpose()
        if act_dual(h, s) != s:
            raise IrrationalSplitting("dual stabilizer transport failed")
        out.append(h)
    return out


def _order_two_pair_element(
    r: BinaryCubic, s: DualCubic, stratum: int
) -> GroupElement:
    """The involution generating the S2 microlocal group on strata 1 and 2.

    Found by conjugating the involution at the canonical base pair by an
    explicit element moving the base pair onto (r, s) up to scalars.
    """
    if stratum == 2:
        # r = u^2 u', lines rational; base pair ((0,1,0,0), (0,0,0,1))
        lines, residual = rational_lines(r)
        if residual != 0:
            raise IrrationalSplitting(f"{r!r} has an irrational factor")
        by_mult = {m: u for u, m in lines}
        u, uprime = by_mult[2], by_mult[1]
        # substitution sending the form y to u and the form x to u'
        g = GroupElement(-uprime.u2, -u.u2, uprime.u1, u.u1)
        base = GroupElement.diagonal(-1, 1)
    else:
        # r = u^3, s = v^2 v'; base pair ((1,0,0,0), (0,0,-1/3,0))
        lines, residual = rational_lines(s)
        if residual != 0:
            raise IrrationalSplitting(f"{s!r} has an irrational factor")
        by_mult = {m: v for v, m in lines}
        v, vprime = by_mult[2], by_mult[1]
        # dual-side substitution sending the form x to v and the form y to v',
        # transported back to the primal side
        gprime = GroupElement(-v.u2, -vprime.u2, v.u1, vprime.u1)
        g = gprime.inverse().transpose()
        base = GroupElement.diagonal(1, -1)
    g.require_invertible()
    h = g * base * g.inverse()
    if act(h, r) != r or act_dual(h, s) != s:
        raise IrrationalSplitting("conjugated involution fails to fix the pair")
    return h


def microlocal_stabilizer(p: ConormalPoint) -> StabilizerDescription:
    """Stabilizer of a regular conormal point; S3, S2, S2, S3 on strata 0..3."""
    stratum = in_lambda_regular(p)
    if stratum is None:
        raise NotRegularConormal(f"{p!r} is not on a regular conormal stratum")
    dim = stabilizer_dimension(p.r, p.s)
    if stratum == 3:
        elems = _s3_stabilizer(p.r)
        for h in elems:
            if act_dual(h, p.s) != p.s:  # s = 0, trivially true
                raise NotRegularConormal("stabilizer fails on the dual side")
        return StabilizerDescription(dim, ComponentGroup.S3, elems)
    if stratum == 0:
        return StabilizerDescription(dim, ComponentGroup.S3, _dual_stabilizer_elements(p.s))
    h = _order_two_pair_element(p.r, p.s, stratum)
    return StabilizerDescription(dim, ComponentGroup.S2, [h])
