import random
from fractions import Fraction

import pytest

from g2cubics.cubics import (
    BinaryCubic,
    DualCubic,
    GroupElement,
    Line,
    MultiplicityStructure,
    OrbitClass,
    REPRESENTATIVES,
    SingularGroupElement,
    ZeroCubic,
    act,
    act_dual,
    act_matrix,
    classify,
    discriminant,
    divides,
    evaluate,
    hessian_quadratic,
    multiplicity_structure,
    rational_lines,
    to_plain,
)
from g2cubics.linalg import Matrix


def rng_cubic(rng, span=4):
    return BinaryCubic(*(Fraction(rng.randint(-span, span)) for _ in range(4)))


def rng_element(rng, span=4):
    while True:
        h = GroupElement(*(Fraction(rng.randint(-span, span)) for _ in range(4)))
        if h.det() != 0:
            return h


XY_X_PLUS_Y = BinaryCubic(0, Fraction(-1, 3), Fraction(-1, 3), 0)  # xy(x+y)


def test_evaluate_examples():
    assert evaluate(BinaryCubic(0, 0, 0, 0), 5, -7) == 0
    assert evaluate(BinaryCubic(1, 0, 0, 0), 2, 3) == 27
    assert evaluate(BinaryCubic(1, 0, 1, 0), 1, 1) == -2


def test_act_identity_and_scalars():
    rng = random.Random(1)
    for _ in range(20):
        r = rng_cubic(rng)
        assert act(GroupElement.identity(), r) == r
        a = Fraction(rng.randint(1, 5))
        assert act(GroupElement.diagonal(a, a), r) == r.scale(a)


def test_act_fixes_split_cubic_under_line_swap():
    h = GroupElement(0, -1, -1, 0)
    assert act(h, XY_X_PLUS_Y) == XY_X_PLUS_Y


def test_act_rejects_singular_elements():
    with pytest.raises(SingularGroupElement):
        act(GroupElement(1, 2, 2, 4), BinaryCubic(1, 0, 0, 0))
    with pytest.raises(SingularGroupElement):
        act_matrix(GroupElement(0, 0, 0, 0))


def test_act_matrix_identity_and_diagonal():
    assert act_matrix(GroupElement.identity()) == Matrix.identity(4)
    a, d = Fraction(3), Fraction(5)
    expected = Matrix.from_rows(
        [
            [d * d / a, 0, 0, 0],
            [0, d, 0, 0],
            [0, 0, a, 0],
            [0, 0, 0, a * a / d],
        ]
    )
    assert act_matrix(GroupElement.diagonal(a, d)) == expected


def test_act_matrix_agrees_with_substitution():
    rng = random.Random(2)
    for _ in range(20):
        h, r = rng_element(rng), rng_cubic(rng)
        assert act_matrix(h).matvec(list(r.coeffs)) == list(act(h, r).coeffs)


def test_act_matrix_is_multiplicative():
    rng = random.Random(3)
    for _ in range(20):
        h1, h2 = rng_element(rng), rng_element(rng)
        assert act_matrix(h1 * h2) == act_matrix(h1) @ act_matrix(h2)


def test_act_dual_identity_and_scalars():
    rng = random.Random(4)
    s = DualCubic(1, -2, 3, Fraction(1, 2))
    assert act_dual(GroupElement.identity(), s) == s
    for _ in range(10):
        a = Fraction(rng.randint(1, 6))
        assert act_dual(GroupElement.diagonal(a, a), s) == s.scale(1 / a)


def test_hessian_examples():
    assert hessian_quadratic(BinaryCubic(0, 0, 0, 0)) == (0, 0, 0)
    assert hessian_quadratic(BinaryCubic(1, 0, 0, 0)) == (0, 0, 0)
    assert hessian_quadratic(BinaryCubic(1, 0, 1, 0)) == (-9, 0, -9)


def test_discriminant_examples():
    assert discriminant(BinaryCubic(0, 1, 0, 0)) == 0
    assert discriminant(BinaryCubic(1, 0, 1, 0)) == -324
    assert discriminant(BinaryCubic(1, 0, 0, 0)) == 0
    assert discriminant(XY_X_PLUS_Y) == -3


def test_classify_representatives():
    assert classify(BinaryCubic(0, 0, 0, 0)) is OrbitClass.C0
    assert classify(BinaryCubic(1, 0, 0, 0)) is OrbitClass.C1
    assert classify(BinaryCubic(0, 1, 0, 0)) is OrbitClass.C2
    assert classify(BinaryCubic(1, 0, 1, 0)) is OrbitClass.C3


def test_classify_is_action_invariant():
    rng = random.Random(5)
    for _ in range(300):
        r, h = rng_cubic(rng), rng_element(rng)
        assert classify(act(h, r)) is classify(r)


def test_discriminant_equivariance_power_is_two():
    # the twisted-action discriminant picks up det(h)^2; the exponent was
    # pinned against scalar elements (a^4 = det^2) and diag(t, 1)
    rng = random.Random(6)
    for _ in range(100):
        r, h = rng_cubic(rng), rng_element(rng)
        assert discriminant(act(h, r)) == h.det() ** 2 * discriminant(r)
    t = Fraction(7)
    r = BinaryCubic(1, 0, 1, 0)
    assert discriminant(act(GroupElement.diagonal(t, 1), r)) == t**2 * discriminant(r)


def test_divides_examples():
    assert divides(Line(1, 0), BinaryCubic(1, 0, 0, 0)) == 3
    assert divides(Line(0, 1), BinaryCubic(0, 1, 0, 0)) == 1
    assert divides(Line(1, 1), BinaryCubic(1, 0, 1, 0)) == 0
    assert divides(Line(1, 0), BinaryCubic(0, 0, 0, 0)) == 3  # convention


def test_divides_matches_root_evaluation():
    # the form u1*y - u2*x vanishes at (x, y) = (u1, u2)
    rng = random.Random(7)
    for _ in range(300):
        r = rng_cubic(rng)
        if r.is_zero():
            continue
        u1, u2 = rng.randint(0, 3), rng.randint(-3, 3)
        if (u1, u2) == (0, 0):
            u1 = 1
        u = Line(u1, u2)
        assert (divides(u, r) >= 1) == (evaluate(r, u.u1, u.u2) == 0)


def test_multiplicity_structure_examples():
    assert multiplicity_structure(BinaryCubic(0, 0, 0, 0)) is MultiplicityStructure.ZERO
    assert multiplicity_structure(BinaryCubic(1, 0, 0, 0)) is MultiplicityStructure.TRIPLE_LINE
    assert multiplicity_structure(XY_X_PLUS_Y) is MultiplicityStructure.THREE_DISTINCT


def test_rational_lines_of_triple_line():
    lines, residual = rational_lines(BinaryCubic(1, 0, 0, 0))
    assert lines == [(Line(1, 0), 3)]
    assert residual == 0


def test_rational_lines_of_split_cubic():
    lines, residual = rational_lines(XY_X_PLUS_Y)
    assert residual == 0
    assert sorted(m for _, m in lines) == [1, 1, 1]
    assert {u for u, _ in lines} == {Line(1, 0), Line(0, 1), Line(1, -1)}


def test_rational_lines_with_residual_quadratic():
    lines, residual = rational_lines(BinaryCubic(1, 0, 1, 0))
    assert lines == [(Line(1, 0), 1)]
    assert residual == 2


def test_rational_lines_rejects_zero():
    with pytest.raises(ZeroCubic):
        rational_lines(BinaryCubic(0, 0, 0, 0))


def test_rational_lines_reconstruct_the_cubic():
    rng = random.Random(8)
    for _ in range(100):
        r = rng_cubic(rng)
        if r.is_zero():
            continue
        lines, residual = rational_lines(r)
        assert sum(m for _, m in lines) + residual == 3
        # multiply the found factors back and divide out
        plain = to_plain(r.coeffs)
        from g2cubics.cubics import divide_by_form

        for u, m in lines:
            for _ in range(m):
                plain, exact = divide_by_form(plain, u.u1, u.u2)
                assert exact
        if residual == 0:
            assert len(plain) == 1 and plain[0] != 0


def test_line_normalization_and_perp():
    assert Line(2, 4) == Line(1, 2)
    assert Line(0, -5) == Line(0, 1)
    u = Line(1, 2)
    v = u.perp()
    assert u.u1 * v.u1 + u.u2 * v.u2 == 0


def test_json_encoding():
    r = BinaryCubic(1, Fraction(-1, 3), 0, 2)
    assert r.to_json() == ["1", "-1/3", "0", "2"]
    assert Line(1, Fraction(1, 2)).to_json() == ["1", "1/2"]


def test_representatives_table():
    for orbit, rep in REPRESENTATIVES.items():
        assert classify(rep) is orbit
