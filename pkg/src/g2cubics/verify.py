"""Named consistency checks over the whole library.

Each check is a pure function returning None on success or a short witness
string on failure.  The CLI `verify` command runs them all (never stopping
early) and the acceptance tests reuse them at their stated trial counts.
Randomized checks draw from a seeded generator, so runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import conormal, cubics, packets, rootdata, sheaves
from .cubics import (
    BinaryCubic,
    DualCubic,
    GroupElement,
    Line,
    OrbitClass,
    REPRESENTATIVES,
    RATIONAL_SPLIT_REPRESENTATIVES,
    act,
    act_dual,
    act_matrix,
    classify,
    discriminant,
    divides,
    evaluate,
    hessian_quadratic,
    poly_dx,
    poly_dy,
    to_plain,
)
from .linalg import Matrix, eval_q, invert, rational
from .sheaves import SheafTables, TABLES


@dataclass
class CheckResult:
    name: str
    scope: str
    passed: bool
    witness: str = ""


def _random_fraction(rng: random.Random, span: int = 4) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.choice([1, 1, 1, 2, 3])
    return Fraction(num, den)


def _random_cubic(rng: random.Random, span: int = 4) -> BinaryCubic:
    return BinaryCubic(*(_random_fraction(rng, span) for _ in range(4)))


def _random_dual(rng: random.Random, span: int = 4) -> DualCubic:
    return DualCubic(*(_random_fraction(rng, span) for _ in range(4)))


def _random_group_element(rng: random.Random, span: int = 4) -> GroupElement:
    while True:
        h = GroupElement(*(_random_fraction(rng, span) for _ in range(4)))
        if h.det() != 0:
            return h


def _gcd_poly(p, q):
    """Homogeneous gcd returned as a plain-basis polynomial."""
    # strip common x- and y-powers, run a univariate Euclid, reassemble
    def split(p):
        p = [rational(c) for c in p]
        if all(c == 0 for c in p):
            return None
        lead = next(i for i, c in enumerate(p) if c != 0)
        tail = next(i for i, c in enumerate(reversed(p)) if c != 0)
        return lead, tail, p[lead : len(p) - tail]

    sp, sq = split(p), split(q)
    if sp is None:
        return [rational(c) for c in q]
    if sq is None:
        return [rational(c) for c in p]
    xp, yp, a = sp
    xq, yq, b = sq
    a, b = list(a), list(b)
    while any(c != 0 for c in b):
        while len(a) >= len(b) and any(c != 0 for c in a):
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            a = [
                c - f * (b[i - shift] if 0 <= i - shift < len(b) else 0)
                for i, c in enumerate(a)
            ]
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    core = a if a else [Fraction(1)]
    gx, gy = min(xp, xq), min(yp, yq)
    return [Fraction(0)] * gx + core + [Fraction(0)] * gy


def _has_repeated_root(r: BinaryCubic) -> bool:
    """Brute-force oracle: gcd(r, dr/dx, dr/dy) is nonconstant."""
    p = to_plain(r.coeffs)
    if all(c == 0 for c in p):
        return True
    g = _gcd_poly(_gcd_poly(p, poly_dx(p)), poly_dy(p))
    return len(g) - 1 > 0


# --- geometry checks ----------------------------------------------------------


def check_orbit_representatives() -> str | None:
    expected = {
        OrbitClass.C0: REPRESENTATIVES[OrbitClass.C0],
        OrbitClass.C1: REPRESENTATIVES[OrbitClass.C1],
        OrbitClass.C2: REPRESENTATIVES[OrbitClass.C2],
        OrbitClass.C3: REPRESENTATIVES[OrbitClass.C3],
    }
    for orbit, rep in expected.items():
        if classify(rep) is not orbit:
            return f"{rep!r} classified as {classify(rep)} not {orbit}"
    return None


def check_discriminant_oracle(trials: int = 1000, seed: int = 101) -> str | None:
    rng = random.Random(seed)
    for k in range(trials):
        r = BinaryCubic(*(rng.randint(-4, 4) for _ in range(4)))
        lhs = discriminant(r) == 0
        rhs = _has_repeated_root(r)
        if lhs != rhs:
            return f"trial {k}: {r!r} D==0 is {lhs} but gcd oracle says {rhs}"
    return None


def check_classify_invariance(trials: int = 1000, seed: int = 102) -> str | None:
    rng = random.Random(seed)
    for k in range(trials):
        r = _random_cubic(rng)
        h = _random_group_element(rng)
        if classify(act(h, r)) is not classify(r):
            return f"trial {k}: class changed under {h!r}"
    return None


def check_action_matrix_identity(trials: int = 100, seed: int = 103) -> str | None:
    rng = random.Random(seed)
    for k in range(trials):
        r = _random_cubic(rng)
        h = _random_group_element(rng)
        via_matrix = act_matrix(h).matvec(list(r.coeffs))
        via_substitution = list(act(h, r).coeffs)
        if via_matrix != via_substitution:
            return f"trial {k}: matrix route {via_matrix} != substitution {via_substitution}"
    return None


def check_action_matrix_entries(trials: int = 5, seed: int = 104) -> str | None:
    """act_matrix agrees with the displayed closed-form entries."""
    rng = random.Random(seed)
    for k in range(trials):
        h = _random_group_element(rng)
        a, b, c, d = h.a, h.b, h.c, h.d
        dt = h.det()
        expected = Matrix.from_rows(
            [
                [e / dt for e in row]
                for row in [
                    [d**3, -3 * c * d**2, -3 * c**2 * d, -(c**3)],
                    [-b * d**2, d * (a * d + 2 * b * c), c * (2 * a * d + b * c), a * c**2],
                    [-(b**2) * d, b * (2 * a * d + b * c), a * (a * d + 2 * b * c), a**2 * c],
                    [-(b**3), 3 * a * b**2, 3 * a**2 * b, a**3],
                ]
            ]
        )
        if act_matrix(h) != expected:
            return f"trial {k}: closed-form mismatch at {h!r}"
    return None


def check_action_homomorphism(trials: int = 50, seed: int = 105) -> str | None:
    rng = random.Random(seed)
    for k in range(trials):
        h1 = _random_group_element(rng)
        h2 = _random_group_element(rng)
        if act_matrix(h1 * h2) != act_matrix(h1) @ act_matrix(h2):
            return f"trial {k}: act_matrix is not multiplicative"
    return None


# The discriminant transforms by det(h)^2; the exponent was pinned by a
# one-off oracle run over random group elements (scalars alone force an even
# power, and diag(t, 1) on the three-distinct representative fixes it at 2).
DISCRIMINANT_DET_POWER = 2


def check_discriminant_equivariance(trials: int = 200, seed: int = 106) -> str | None:
    rng = random.Random(seed)
    for k in range(trials):
        r = _random_cubic(rng)
        h = _random_group_element(rng)
        if discriminant(act(h, r)) != h.det() ** DISCRIMINANT_DET_POWER * discriminant(r):
            return f"trial {k}: D(h.r) != det^{DISCRIMINANT_DET_POWER} D(r) at {h!r}"
    return None


def check_hessian_quarter_determinant(trials: int = 200, seed: int = 107) -> str | None:
    """Coefficient formula equals (1/4) det Hess via symbolic expansion."""
    rng = random.Random(seed)
    for k in range(trials):
        r = _random_cubic(rng)
        p = to_plain(r.coeffs)
        px, py = poly_dx(p), poly_dy(p)
        pyy, pyx = poly_dy(py), poly_dx(py)
        pxx = poly_dx(px)
        det = [Fraction(0)] * 3
        for i, c in enumerate(cubics.poly_mul(pyy, pxx)):
            det[i] += c
        for i, c in enumerate(cubics.poly_mul(pyx, pyx)):
            det[i] -= c
        quarter = [c / 4 for c in det]
        d0, d1, d2 = hessian_quadratic(r)
        if quarter != [d0, d1, d2]:
            return f"trial {k}: expansion {quarter} != formula {(d0, d1, d2)}"
    return None


def check_line_division_root(trials: int = 300, seed: int = 108) -> str | None:
    """divides(u, r) >= 1 iff r vanishes at the zero (u1, u2) of the form."""
    rng = random.Random(seed)
    for k in range(trials):
        r = _random_cubic(rng)
        if r.is_zero():
            continue
        u1, u2 = rng.randint(0, 3), rng.randint(-3, 3)
        u = Line(u1, u2) if (u1, u2) != (0, 0) else Line(1, 0)
        lhs = divides(u, r) >= 1
        rhs = evaluate(r, u.u1, u.u2) == 0
        if lhs != rhs:
            return f"trial {k}: division and evaluation disagree at {u!r}, {r!r}"
    return None


def check_pairing_trace(trials: int = 1000, seed: int = 109) -> str | None:
    rng = random.Random(seed)
    for k in range(trials):
        r, s = _random_cubic(rng), _random_dual(rng)
        if conormal.moment(r, s).trace() != conormal.pairing(r, s):
            return f"trial {k}: trace of moment != pairing"
    return None


def check_pairing_invariance(trials: int = 1000, seed: int = 110) -> str | None:
    rng = random.Random(seed)
    for k in range(trials):
        r, s = _random_cubic(rng), _random_dual(rng)
        h = _random_group_element(rng)
        if conormal.pairing(act(h, r), act_dual(h, s)) != conormal.pairing(r, s):
            return f"trial {k}: pairing moved under {h!r}"
    return None


def check_pairing_factored(trials: int = 500, seed: int = 111) -> str | None:
    rng = random.Random(seed)
    for k in range(trials):
        r = _random_cubic(rng)
        vs = [_random_fraction(rng) for _ in range(6)]
        s = conormal.dual_from_factors(*vs)
        direct = conormal.pairing(r, s)
        hessian = conormal.pairing_factored(r, *vs)
        if direct != hessian:
            return f"trial {k}: Hessian form {hessian} != coordinate form {direct}"
    return None


def check_dual_action_matrix(trials: int = 50, seed: int = 112) -> str | None:
    """act_dual is the contragredient of act with respect to the pairing.

    With G = diag(1, 3, 3, 1) the Gram matrix of the pairing, the matrix of
    act_dual(h) equals G^{-1} transpose(inverse(act_matrix(h))) G.
    """
    rng = random.Random(seed)
    basis = [DualCubic(*(int(i == j) for i in range(4))) for j in range(4)]
    gram = Matrix.from_rows(
        [[1, 0, 0, 0], [0, 3, 0, 0], [0, 0, 3, 0], [0, 0, 0, 1]]
    )
    gram_inv = invert(gram)
    for k in range(trials):
        h = _random_group_element(rng)
        cols = [list(act_dual(h, e).coeffs) for e in basis]
        dual_matrix = Matrix.from_rows(cols).transpose()
        contragredient = gram_inv @ invert(act_matrix(h)).transpose() @ gram
        if dual_matrix != contragredient:
            return f"trial {k}: dual action matrix mismatch at {h!r}"
    return None


def check_conormal_kernel_dims() -> str | None:
    expected = {OrbitClass.C0: 4, OrbitClass.C1: 2, OrbitClass.C2: 1, OrbitClass.C3: 0}
    for orbit, rep in REPRESENTATIVES.items():
        got = len(conormal.conormal_kernel(rep))
        if got != expected[orbit]:
            return f"{orbit}: kernel dim {got} != {expected[orbit]}"
        if got + orbit.dim != 4:
            return f"{orbit}: kernel dim + orbit dim != 4"
    return None


def check_conormal_kernel_typing() -> str | None:
    """Kernel typing via division: C2 kernels are perp triple lines, C1
    kernels are divisible twice by the perp line."""
    r2 = REPRESENTATIVES[OrbitClass.C2]
    (lines2, _) = cubics.rational_lines(r2)
    u2 = {m: u for u, m in lines2}[2]
    v2 = u2.perp()
    for s in conormal.conormal_kernel(r2):
        if divides(v2, s) != 3:
            return f"C2 kernel element {s!r} is not the cube of the perp line"
    r1 = REPRESENTATIVES[OrbitClass.C1]
    (lines1, _) = cubics.rational_lines(r1)
    u1 = lines1[0][0]
    v1 = u1.perp()
    for s in conormal.conormal_kernel(r1):
        if divides(v1, s) < 2:
            return f"C1 kernel element {s!r} lacks a square perp factor"
    return None


def check_conormal_kernel_equivariance(trials: int = 100, seed: int = 113) -> str | None:
    rng = random.Random(seed)
    reps = list(REPRESENTATIVES.values())
    for k in range(trials):
        r = reps[rng.randrange(4)]
        basis = conormal.conormal_kernel(r)
        if not basis:
            continue
        coeffs = [rng.randint(-3, 3) for _ in basis]
        s = DualCubic(0, 0, 0, 0)
        for c, vec in zip(coeffs, basis):
            s = s + vec.scale(c)
        h = _random_group_element(rng)
        if not conormal.moment(act(h, r), act_dual(h, s)).is_zero():
            return f"trial {k}: kernel membership lost under {h!r}"
    return None


def check_stabilizer_orders() -> str | None:
    expected_dims = {OrbitClass.C0: 4, OrbitClass.C1: 2, OrbitClass.C2: 1, OrbitClass.C3: 0}
    expected_orders = {OrbitClass.C0: 1, OrbitClass.C1: 1, OrbitClass.C2: 1, OrbitClass.C3: 6}
    for orbit, rep in RATIONAL_SPLIT_REPRESENTATIVES.items():
        desc = conormal.stabilizer_of_cubic(rep)
        if desc.dimension != expected_dims[orbit]:
            return f"{orbit}: dimension {desc.dimension} != {expected_dims[orbit]}"
        elems = desc.group_elements()
        if len(elems) != expected_orders[orbit]:
            return f"{orbit}: component order {len(elems)} != {expected_orders[orbit]}"
        for h in elems:
            if act(h, rep) != rep:
                return f"{orbit}: listed element {h!r} does not stabilize"
    return None


def check_microlocal_orders() -> str | None:
    expected = {0: 6, 1: 2, 2: 2, 3: 6}
    groups = {0: "S3", 1: "S2", 2: "S2", 3: "S3"}
    for stratum, point in conormal.canonical_regular_pairs().items():
        desc = conormal.microlocal_stabilizer(point)
        elems = desc.group_elements()
        if len(elems) != expected[stratum]:
            return f"stratum {stratum}: order {len(elems)} != {expected[stratum]}"
        if desc.component_group.value != groups[stratum]:
            return f"stratum {stratum}: group {desc.component_group.value}"
        for h in elems:
            if act(h, point.r) != point.r or act_dual(h, point.s) != point.s:
                return f"stratum {stratum}: element {h!r} does not fix the pair"
    return None


def check_lambda_regular_base_points() -> str | None:
    for stratum, point in conormal.canonical_regular_pairs().items():
        got = conormal.in_lambda_regular(point)
        if got != stratum:
            return f"canonical pair of stratum {stratum} landed in {got}"
    return None


# --- sheaf checks ---------------------------------------------------------------


def check_stalk_solver(tables: SheafTables = TABLES) -> str | None:
    solved = sheaves.solve_ic_stalk_ranks(tables)
    encoded = sheaves.graded_stalk_totals(tables)
    for key, value in encoded.items():
        if solved[key] != value:
            return f"{key}: solved {solved[key]} != encoded {value}"
    return None


def check_rhoe_redundancy(tables: SheafTables = TABLES) -> str | None:
    if not sheaves.rhoe_equations_satisfied(tables):
        return "rhoE cover equations are not satisfied by the solved ranks"
    return None


def check_fiber_rank_recompute(tables: SheafTables = TABLES) -> str | None:
    for (cover, orbit), count in sheaves.recomputed_finite_fiber_counts().items():
        if tables.fiber_ranks[cover][orbit] != count:
            return f"{cover.value} at {orbit}: encoded {tables.fiber_ranks[cover][orbit]} != recomputed {count}"
    return None


def check_geomult(tables: SheafTables = TABLES) -> str | None:
    got = sheaves.geometric_multiplicity_matrix(tables)
    expected = [
        [1, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0],
        [2, 1, 1, 0, 0, 0],
        [1, 1, 1, 1, 0, 0],
        [1, 0, 1, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]
    if got != expected:
        return f"geometric multiplicity matrix mismatch: {got}"
    for i in range(6):
        if got[i][i] != 1:
            return "diagonal is not all ones"
    return None


def check_kl_transpose(tables: SheafTables = TABLES) -> str | None:
    if not sheaves.kl_check(tables):
        return "geometric multiplicity matrix is not the transposed module matrix"
    return None


def check_evs_zero_pattern(tables: SheafTables = TABLES) -> str | None:
    if not sheaves.evs_zero_pattern_ok(tables):
        return "a raw table entry lives above its support orbit"
    return None


def check_nevs_derivation(tables: SheafTables = TABLES) -> str | None:
    for obj in sheaves.SIMPLE_ORDER:
        try:
            sheaves.nevs(obj, tables)
        except sheaves.NEvsMismatch as exc:
            return str(exc)
    return None


def check_nevs_diagonal(tables: SheafTables = TABLES) -> str | None:
    diag = {
        sheaves.SimpleObject.IC1_C0: 0,
        sheaves.SimpleObject.IC1_C1: 1,
        sheaves.SimpleObject.IC1_C2: 2,
        sheaves.SimpleObject.IC1_C3: 3,
    }
    for obj, stratum in diag.items():
        if sheaves.nevs(obj, tables).get(stratum) != "one":
            return f"{obj.name}: normalised diagonal entry is not trivial"
    return None


def check_fourier_involution(tables: SheafTables = TABLES) -> str | None:
    mapping = sheaves.fourier_primal_map(tables)
    for obj, image in mapping.items():
        if mapping[image] is not obj:
            return f"fourier is not an involution at {obj.name}"
    return None


def check_local_system_rank_accounting(tables: SheafTables = TABLES) -> str | None:
    group_orders = {0: 6, 1: 2, 2: 2, 3: 6}
    for stratum, decomp in sheaves.REGULAR_COVER_DECOMP.items():
        # regular representation: multiplicity of each system equals its rank
        for label, mult in decomp.items():
            if mult != sheaves.LOCAL_SYSTEM_RANKS[label]:
                return f"stratum {stratum}: multiplicity of {label} is {mult}"
        total = sum(
            mult * sheaves.LOCAL_SYSTEM_RANKS[label] for label, mult in decomp.items()
        )
        if total != group_orders[stratum]:
            return f"stratum {stratum}: total rank {total} != |G| = {group_orders[stratum]}"
    return None


# --- packet checks ---------------------------------------------------------------


def check_packets_match(tables: SheafTables = TABLES) -> str | None:
    for psi in range(4):
        got = packets.packet(psi, tables)
        if got != packets.EXPECTED_PACKETS[psi]:
            return f"psi{psi}: packet {sorted(p.label() for p in got)}"
    return None


def check_lpacket_containment(tables: SheafTables = TABLES) -> str | None:
    for i in range(4):
        if not packets.l_packet(i) <= packets.packet(i, tables):
            return f"phi{i}: L-packet not inside the packet"
    return None


def check_supercuspidal_everywhere(tables: SheafTables = TABLES) -> str | None:
    for psi in range(4):
        if packets.Irreducible.PI3E not in packets.packet(psi, tables):
            return f"psi{psi}: missing the supercuspidal member"
    return None


def check_stable_characters(tables: SheafTables = TABLES) -> str | None:
    for psi in range(4):
        got = packets.stable_virtual_character(psi, tables).coefficients
        if tuple(got) != packets.EXPECTED_STABLE[psi]:
            return f"psi{psi}: coefficients {got}"
    return None


def check_change_of_basis(tables: SheafTables = TABLES) -> str | None:
    got = packets.standard_module_change_of_basis(tables)
    if got != packets.EXPECTED_CHANGE_OF_BASIS:
        return f"change of basis {got!r}"
    for i in range(4):
        for j in range(i):
            if got[i, j] != 0:
                return "matrix is not upper unitriangular"
        if got[i, i] != 1:
            return "matrix diagonal is not 1"
    return None


def check_change_of_basis_roundtrip(tables: SheafTables = TABLES) -> str | None:
    if not packets.change_of_basis_roundtrip_ok(tables):
        return "inverse does not round-trip the stable vectors"
    return None


def check_stable_independence(tables: SheafTables = TABLES) -> str | None:
    if packets.stable_basis_rank(tables) != 4:
        return "the four stable characters are not linearly independent"
    return None


def check_aubert(tables: SheafTables = TABLES) -> str | None:
    expected = {
        packets.Irreducible.PI0: packets.Irreducible.PI3,
        packets.Irreducible.PI1: packets.Irreducible.PI3R,
        packets.Irreducible.PI2: packets.Irreducible.PI2,
        packets.Irreducible.PI3: packets.Irreducible.PI0,
        packets.Irreducible.PI3R: packets.Irreducible.PI1,
        packets.Irreducible.PI3E: packets.Irreducible.PI3E,
    }
    for pi, image in expected.items():
        if packets.aubert(pi, tables) is not image:
            return f"{pi.label()} -> {packets.aubert(pi, tables).label()}"
        if packets.aubert(image, tables) is not pi:
            return "involution failure"
    return None


def check_aubert_packet_swap(tables: SheafTables = TABLES) -> str | None:
    for a, b in ((0, 3), (1, 2)):
        image = {packets.aubert(pi, tables) for pi in packets.packet(a, tables)}
        if image != packets.packet(b, tables):
            return f"psi{a} does not map onto psi{b}"
    return None


def check_temperedness_pattern(tables: SheafTables = TABLES) -> str | None:
    p3 = packets.packet(3, tables)
    if not all(pi.tempered for pi in p3):
        return "packet 3 contains a non-tempered member"
    chars3 = {packets.pairing_character(3, pi, tables) for pi in p3}
    if chars3 != {"1", "rho", "eps"}:
        return "packet 3 pairing is not bijective onto the S3 dual"
    for psi in (0, 1, 2):
        if all(pi.tempered for pi in packets.packet(psi, tables)):
            return f"psi{psi}: expected a non-tempered member"
    vals1 = [packets.pairing_character(1, pi, tables) for pi in packets.packet(1, tables)]
    if len(set(vals1)) == len(vals1):
        return "psi1 pairing is unexpectedly injective"
    spherical_vals = [
        packets.pairing_character(psi, packets.Irreducible.PI0, tables)
        for psi in range(4)
        if packets.Irreducible.PI0 in packets.packet(psi, tables)
    ]
    if any(v != "1" for v in spherical_vals):
        return "spherical member pairs non-trivially"
    return None


def check_character_orthogonality() -> str | None:
    for group in ("S3", "S2"):
        table = packets.character_table(group)
        sizes = packets.CLASS_SIZES[group]
        order = sum(sizes.values())
        for chi1 in table.irreducibles:
            for chi2 in table.irreducibles:
                total = sum(
                    sizes[c] * table.values[(chi1, c)] * table.values[(chi2, c)]
                    for c in table.classes
                )
                if total != (order if chi1 == chi2 else 0):
                    return f"{group}: <{chi1}, {chi2}> = {total}"
    return None


# --- root-data checks --------------------------------------------------------------


def check_cartan_matrices() -> str | None:
    g2 = rootdata.cartan_matrix("g2")
    dual = rootdata.cartan_matrix("dual")
    if g2 != [[2, -1], [-3, 2]] or dual != [[2, -3], [-1, 2]]:
        return "Cartan matrices are wrong"
    if any(g2[i][j] != dual[j][i] for i in range(2) for j in range(2)):
        return "the two Cartan matrices are not transposes"
    return None


def check_coroot_relations() -> str | None:
    expected = {(1, 1): (3, 1), (1, 2): (3, 2), (1, 3): (1, 1), (2, 3): (2, 1)}
    for (a, b), pair in expected.items():
        if rootdata.coroot(rootdata.Root(a, b)) != pair:
            return f"coroot of {a}a+{b}b is {rootdata.coroot(rootdata.Root(a, b))}"
    return None


def check_weight_spaces() -> str | None:
    plus = {(r.a, r.b) for r in rootdata.weight_space(1)}
    if plus != {(1, 0), (1, 1), (1, 2), (1, 3)}:
        return f"weight +1 space is {sorted(plus)}"
    minus = {(r.a, r.b) for r in rootdata.weight_space(-1)}
    if minus != {(-1, 0), (-1, -1), (-1, -2), (-1, -3)}:
        return f"weight -1 space is {sorted(minus)}"
    sizes = [len(rootdata.weight_space(e)) for e in (-2, -1, 0, 1, 2)]
    if sizes != [1, 4, 2, 4, 1]:
        return f"weight partition sizes {sizes}"
    if sum(sizes) != 12:
        return "weights do not partition the twelve roots"
    return None


def check_cartan_from_weights() -> str | None:
    simple = [rootdata.Root(1, 0), rootdata.Root(0, 1)]
    dual = rootdata.cartan_matrix("dual")
    for i, gamma in enumerate(simple):
        for j, delta in enumerate(simple):
            if rootdata.root_coroot_pairing(gamma, delta) != dual[i][j]:
                return f"<{gamma}, {delta}^vee> != Cartan entry"
    for gamma in rootdata.positive_roots("dual"):
        if rootdata.root_coroot_pairing(gamma, gamma) != 2:
            return f"<{gamma}, {gamma}^vee> != 2"
    return None


def check_root_closure() -> str | None:
    roots = rootdata.all_roots("dual")
    if len(roots) != 12 or len(set((r.a, r.b) for r in roots)) != 12:
        return "root list is not twelve distinct roots"
    pairs = {(r.a, r.b) for r in roots}
    if any((-a, -b) not in pairs for a, b in pairs):
        return "roots are not closed under negation"
    return None


def check_torus_selfcheck() -> str | None:
    report = rootdata.frobenius_torus_selfcheck()
    if not report["coroot_form_matches"]:
        return "coroot form of the Frobenius element does not give m(q, q)"
    if report["stated_matches"]:
        return "unexpected: the composite h_a(q) h_b(q^2) matches m(q, q)"
    if not report["swapped_matches"]:
        return "the swapped composite h_a(q^2) h_b(q) does not give m(q, q)"
    return None


def check_arthur_metadata() -> str | None:
    metas = rootdata.arthur_parameters()
    if [m.component_group for m in metas] != ["S3", "S2", "S2", "S3"]:
        return "component groups wrong"
    if [m.s_psi_image for m in metas] != [1, -1, -1, 1]:
        return "s_psi images wrong"
    if [m.swap_partner for m in metas] != [3, 2, 1, 0]:
        return "swap partners wrong"
    return None


def check_formal_degree_simplification() -> str | None:
    data = rootdata.adjoint_gamma_data()
    if data.dim_sigma != rootdata.dim_sigma_simplified():
        return "dim sigma does not reduce to q(q-1)^2(q^2-q+1)/6"
    return None


def check_formal_degree_values() -> str | None:
    data = rootdata.adjoint_gamma_data()
    if eval_q(data.dim_sigma, 2) != 1:
        return f"dim sigma at q=2 is {eval_q(data.dim_sigma, 2)}"
    if eval_q(data.dim_sigma, 3) != 14:
        return f"dim sigma at q=3 is {eval_q(data.dim_sigma, 3)}"
    if eval_q(data.gamma0, 2) != Fraction(512, 63):
        return f"gamma(0) at q=2 is {eval_q(data.gamma0, 2)}"
    return None


def check_gamma_from_l_factor() -> str | None:
    data = rootdata.adjoint_gamma_data()
    derived = data.epsilon_power(0) * (data.l_factor(1) / data.l_factor(0))
    if derived != data.gamma0:
        return "gamma(0) != epsilon(0) L(1)/L(0)"
    return None


def check_dim_sigma_integrality() -> str | None:
    data = rootdata.adjoint_gamma_data()
    for q0 in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27):
        value = eval_q(data.dim_sigma, q0)
        if value.denominator != 1 or value <= 0:
            return f"dim sigma at q={q0} is {value}"
    return None


# --- registry -----------------------------------------------------------------------


CHECKS: list[tuple[str, str, object]] = [
    ("orbit-representatives", "geometry", check_orbit_representatives),
    ("discriminant-repeated-root-oracle", "geometry", check_discriminant_oracle),
    ("classify-action-invariance", "geometry", check_classify_invariance),
    ("action-matrix-substitution", "geometry", check_action_matrix_identity),
    ("action-matrix-entries", "geometry", check_action_matrix_entries),
    ("action-matrix-homomorphism", "geometry", check_action_homomorphism),
    ("discriminant-equivariance", "geometry", check_discriminant_equivariance),
    ("hessian-quarter-determinant", "geometry", check_hessian_quarter_determinant),
    ("line-division-root-convention", "geometry", check_line_division_root),
    ("pairing-trace-of-moment", "geometry", check_pairing_trace),
    ("pairing-invariance", "geometry", check_pairing_invariance),
    ("pairing-factored-hessian", "geometry", check_pairing_factored),
    ("dual-action-matrix", "geometry", check_dual_action_matrix),
    ("conormal-kernel-dimensions", "geometry", check_conormal_kernel_dims),
    ("conormal-kernel-typing", "geometry", check_conormal_kernel_typing),
    ("conormal-kernel-equivariance", "geometry", check_conormal_kernel_equivariance),
    ("stabilizer-orders", "geometry", check_stabilizer_orders),
    ("microlocal-stabilizer-orders", "geometry", check_microlocal_orders),
    ("lambda-regular-base-points", "geometry", check_lambda_regular_base_points),
    ("stalk-solver", "sheaves", check_stalk_solver),
    ("rhoE-redundant-equations", "sheaves", check_rhoe_redundancy),
    ("fiber-rank-recompute", "sheaves", check_fiber_rank_recompute),
    ("geometric-multiplicity-matrix", "sheaves", check_geomult),
    ("kl-transpose", "sheaves", check_kl_transpose),
    ("evs-zero-pattern", "sheaves", check_evs_zero_pattern),
    ("nevs-derivation", "sheaves", check_nevs_derivation),
    ("nevs-diagonal", "sheaves", check_nevs_diagonal),
    ("fourier-involution", "sheaves", check_fourier_involution),
    ("local-system-rank-accounting", "sheaves", check_local_system_rank_accounting),
    ("packets-from-nevs", "packets", check_packets_match),
    ("lpacket-containment", "packets", check_lpacket_containment),
    ("supercuspidal-in-every-packet", "packets", check_supercuspidal_everywhere),
    ("stable-characters", "packets", check_stable_characters),
    ("standard-module-matrix", "packets", check_change_of_basis),
    ("standard-module-roundtrip", "packets", check_change_of_basis_roundtrip),
    ("stable-independence", "packets", check_stable_independence),
    ("aubert-involution", "packets", check_aubert),
    ("aubert-packet-swap", "packets", check_aubert_packet_swap),
    ("temperedness-pattern", "packets", check_temperedness_pattern),
    ("character-orthogonality", "packets", check_character_orthogonality),
    ("cartan-matrices", "g2", check_cartan_matrices),
    ("coroot-relations", "g2", check_coroot_relations),
    ("weight-space-partition", "g2", check_weight_spaces),
    ("cartan-from-weights", "g2", check_cartan_from_weights),
    ("root-closure", "g2", check_root_closure),
    ("frobenius-torus-selfcheck", "g2", check_torus_selfcheck),
    ("arthur-metadata", "g2", check_arthur_metadata),
    ("formal-degree-simplification", "g2", check_formal_degree_simplification),
    ("formal-degree-values", "g2", check_formal_degree_values),
    ("gamma-from-l-factor", "g2", check_gamma_from_l_factor),
    ("dim-sigma-integrality", "g2", check_dim_sigma_integrality),
]

_TABLE_CHECKS = {
    "stalk-solver",
    "rhoE-redundant-equations",
    "fiber-rank-recompute",
    "geometric-multiplicity-matrix",
    "kl-transpose",
    "evs-zero-pattern",
    "nevs-derivation",
    "nevs-diagonal",
    "fourier-involution",
    "local-system-rank-accounting",
    "packets-from-nevs",
    "lpacket-containment",
    "supercuspidal-in-every-packet",
    "stable-characters",
    "standard-module-matrix",
    "standard-module-roundtrip",
    "stable-independence",
    "aubert-involution",
    "aubert-packet-swap",
    "temperedness-pattern",
}


def run_checks(scope: str = "all", tables: SheafTables = TABLES) -> list[CheckResult]:
    """Run every check in the scope; never stops early."""
    results = []
    for name, check_scope, fn in CHECKS:
        if scope != "all" and check_scope != scope:
            continue
        try:
            witness = fn(tables) if name in _TABLE_CHECKS else fn()
        except Exception as exc:  # a raising check is a failing check
            witness = f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, check_scope, witness is None, witness or ""))
    return results
