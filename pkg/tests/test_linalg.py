import random
from fractions import Fraction

import pytest

from g2cubics.linalg import (
    Matrix,
    Poly,
    PoleAtPoint,
    RationalFunctionQ,
    SingularMatrix,
    eval_q,
    format_rational,
    invert,
    kernel_basis,
    parse_rational,
    rank,
    solve,
)


def test_kernel_of_identity_is_trivial():
    assert kernel_basis(Matrix.identity(2)) == []


def test_kernel_of_zero_map_is_standard_basis():
    basis = kernel_basis(Matrix.zero(2, 4))
    assert len(basis) == 4
    for j, v in enumerate(basis):
        assert v == [Fraction(int(i == j)) for i in range(4)]


def _hand_gaussian_kernel(rows):
    """Independent elimination oracle, written without the library routines."""
    m = [[Fraction(x) for x in row] for row in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        hit = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                hit = i
                break
        if hit is None:
            continue
        m[r], m[hit] = m[hit], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in [c for c in range(ncols) if c not in pivots]:
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -m[row_idx][free]
        basis.append(v)
    return basis


def test_kernel_matches_hand_elimination():
    rows = [[1, 0, 0, 0], [-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]]
    m = Matrix.from_rows(rows)
    got = kernel_basis(m)
    assert got == _hand_gaussian_kernel(rows)
    e3 = [Fraction(0), Fraction(0), Fraction(1), Fraction(0)]
    e4 = [Fraction(0), Fraction(0), Fraction(0), Fraction(1)]
    assert got == [e3, e4]


def test_kernel_vectors_are_annihilated():
    rng = random.Random(7)
    for _ in range(50):
        rows = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(rng.randint(1, 4))]
        m = Matrix.from_rows(rows)
        for v in kernel_basis(m):
            assert all(x == 0 for x in m.matvec(v))
        assert len(kernel_basis(m)) == m.cols - rank(m)


def test_invert_identity_and_diagonal():
    assert invert(Matrix.identity(3)) == Matrix.identity(3)
    d = Matrix.from_rows([[2, 0], [0, 1]])
    assert invert(d) == Matrix.from_rows([[Fraction(1, 2), 0], [0, 1]])


def _back_substitution_inverse(rows):
    """Inverse of an upper unitriangular matrix by plain back-substitution."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            x[i] = inv[i][col] - sum(a[i][j] * x[j] for j in range(i + 1, n))
        for i in range(n):
            inv[i][col] = x[i]
    return Matrix.from_rows(inv)


def test_invert_change_of_basis_matrix():
    rows = [[1, 1, -3, 1], [0, 1, -2, 1], [0, 0, 1, -1], [0, 0, 0, 1]]
    m = Matrix.from_rows(rows)
    inv = invert(m)
    assert inv == _back_substitution_inverse(rows)
    assert m @ inv == Matrix.identity(4)
    assert inv @ m == Matrix.identity(4)


def test_invert_is_two_sided_on_random_matrices():
    rng = random.Random(13)
    found = 0
    while found < 25:
        m = Matrix.from_rows([[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)])
        try:
            inv = invert(m)
        except SingularMatrix:
            continue
        found += 1
        assert m @ inv == Matrix.identity(3)
        assert inv @ m == Matrix.identity(3)


def test_singular_matrix_raises():
    with pytest.raises(SingularMatrix):
        invert(Matrix.from_rows([[1, 2], [2, 4]]))


def test_solve_consistent_and_inconsistent():
    m = Matrix.from_rows([[1, 0], [0, 1], [1, 1]])
    assert solve(m, [1, 2, 3]) == [Fraction(1), Fraction(2)]
    assert solve(m, [1, 2, 4]) is None


def test_rational_serialization_roundtrip():
    rng = random.Random(3)
    for _ in range(200):
        x = Fraction(rng.randint(-500, 500), rng.randint(1, 500))
        assert parse_rational(format_rational(x)) == x
    assert format_rational(Fraction(4, 2)) == "2"
    with pytest.raises(ValueError):
        parse_rational("1.5")


def test_eval_q_examples():
    q = RationalFunctionQ.q()
    assert eval_q(q, 7) == 7
    one = RationalFunctionQ.const(1)
    gamma = q**9 / ((q + one) ** 2 * (q**2 + q + one))
    assert eval_q(gamma, 2) == Fraction(512, 63)
    with pytest.raises(PoleAtPoint):
        eval_q(one / (q - one), 1)


def test_rational_function_canonical_form():
    q = Poly.q()
    one = Poly.const(1)
    f = RationalFunctionQ(q**2 - one, q - one)
    assert f == RationalFunctionQ(q + one)
    # denominator sign is normalized to a positive leading coefficient
    g = RationalFunctionQ(q, Poly([0, -1]))
    assert g == RationalFunctionQ(-q, Poly([0, 1]))
    assert g.den.coeffs[-1] > 0


def test_rational_function_json_is_lowest_degree_first():
    q = Poly.q()
    one = Poly.const(1)
    f = RationalFunctionQ(q**2 - one, Poly.const(2))
    assert f.to_json() == {"num": ["-1/2", "0", "1/2"], "den": ["1"]}
