"""Packets, pairing characters, stable virtual characters, Aubert involution.

Everything here is derived from the microlocal tables, the finite character
tables of S2/S3 and the encoded multiplicity matrix; the derived values are
compared against the expected packet and distribution tables by the
verification suite.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, invert, rank, solve
from .rootdata import arthur_parameters
from .sheaves import (
    SIMPLE_ORDER,
    SheafTables,
    SimpleObject,
    TABLES,
    fourier,
    nevs,
    rep_multiplicity_matrix,
)


class NotInSpan(ValueError):
    """Raised when a virtual character is outside the requested span."""


class Irreducible(enum.Enum):
    PI0 = 0
    PI1 = 1
    PI2 = 2
    PI3 = 3
    PI3R = 4
    PI3E = 5

    @property
    def tempered(self) -> bool:
        return self in (Irreducible.PI3, Irreducible.PI3R, Irreducible.PI3E)

    @property
    def spherical(self) -> bool:
        return self is Irreducible.PI0

    @property
    def supercuspidal(self) -> bool:
        return self is Irreducible.PI3E

    def label(self) -> str:
        return ["pi0", "pi1", "pi2", "pi3", "pi3rho", "pi3eps"][self.value]


IRREDUCIBLE_ORDER = list(Irreducible)


def llc(obj: SimpleObject) -> Irreducible:
    """The bijection between simple objects and irreducibles (basis order)."""
    return IRREDUCIBLE_ORDER[SIMPLE_ORDER.index(obj)]


def llc_inverse(pi: Irreducible) -> SimpleObject:
    return SIMPLE_ORDER[IRREDUCIBLE_ORDER.index(pi)]


@dataclass(frozen=True)
class CharacterTable:
    group: str
    irreducibles: tuple  # names
    classes: tuple  # conjugacy class names
    values: dict  # (irrep, class) -> int


def character_table(group: str) -> CharacterTable:
    if group == "S3":
        values = {
            ("1", "e"): 1, ("1", "transposition"): 1, ("1", "3-cycle"): 1,
            ("rho", "e"): 2, ("rho", "transposition"): 0, ("rho", "3-cycle"): -1,
            ("eps", "e"): 1, ("eps", "transposition"): -1, ("eps", "3-cycle"): 1,
        }
        return CharacterTable("S3", ("1", "rho", "eps"), ("e", "transposition", "3-cycle"), values)
    if group == "S2":
        values = {("1", "e"): 1, ("1", "t"): 1, ("tau", "e"): 1, ("tau", "t"): -1}
        return CharacterTable("S2", ("1", "tau"), ("e", "t"), values)
    if group == "trivial":
        return CharacterTable("trivial", ("1",), ("e",), {("1", "e"): 1})
    raise ValueError(f"unknown group {group!r}")


# class sizes, for the orthogonality checks
CLASS_SIZES = {"S3": {"e": 1, "transposition": 3, "3-cycle": 2}, "S2": {"e": 1, "t": 1}}

# local-system labels on a stratum, read as irreducibles of its group
_LABEL_TO_IRREP = {"one": "1", "T": "tau", "R": "rho", "E": "eps"}


def packet(psi: int, tables: SheafTables = TABLES) -> set[Irreducible]:
    """The packet of psi: support of the normalised table at stratum psi."""
    out = set()
    for obj in SIMPLE_ORDER:
        if psi in nevs(obj, tables):
            out.add(llc(obj))
    return out


EXPECTED_PACKETS = {
    0: {Irreducible.PI0, Irreducible.PI1, Irreducible.PI3E},
    1: {Irreducible.PI1, Irreducible.PI2, Irreducible.PI3E},
    2: {Irreducible.PI2, Irreducible.PI3R, Irreducible.PI3E},
    3: {Irreducible.PI3, Irreducible.PI3R, Irreducible.PI3E},
}


def l_packet(phi: int) -> set[Irreducible]:
    return {
        0: {Irreducible.PI0},
        1: {Irreducible.PI1},
        2: {Irreducible.PI2},
        3: {Irreducible.PI3, Irreducible.PI3R, Irreducible.PI3E},
    }[phi]


def pairing_character(psi: int, pi: Irreducible, tables: SheafTables = TABLES) -> str | None:
    """Name of the component-group irreducible pairing pi with psi, or None."""
    label = nevs(llc_inverse(pi), tables).get(psi)
    return None if label is None else _LABEL_TO_IRREP[label]


@dataclass(frozen=True)
class VirtualCharacter:
    basis: str  # "irreducible" or "standard"
    coefficients: tuple

    def to_json(self) -> dict:
        return {"basis": self.basis, "coefficients": list(self.coefficients)}


def stable_virtual_character(psi: int, tables: SheafTables = TABLES) -> VirtualCharacter:
    """Integer combination of irreducibles with coefficients evaluated at s_psi."""
    meta = arthur_parameters()[psi]
    table = character_table(meta.component_group)
    if meta.s_psi_image == 1:
        klass = "e"
    else:
        klass = "t" if meta.component_group == "S2" else "transposition"
    coeffs = []
    for pi in IRREDUCIBLE_ORDER:
        irrep = pairing_character(psi, pi, tables)
        coeffs.append(0 if irrep is None else table.values[(irrep, klass)])
    return VirtualCharacter("irreducible", tuple(coeffs))


EXPECTED_STABLE = {
    0: (1, 2, 0, 0, 0, 1),
    1: (0, 1, -1, 0, 0, 1),
    2: (0, 0, 1, 0, -1, -1),
    3: (0, 0, 0, 1, 2, 1),
}


def standard_module_rows(tables: SheafTables = TABLES) -> list[tuple]:
    """The basis (M0, M1, M2, Theta_psi3) written over the irreducibles."""
    rep = rep_multiplicity_matrix(tables)
    theta3 = stable_virtual_character(3, tables).coefficients
    return [tuple(rep[0]), tuple(rep[1]), tuple(rep[2]), tuple(theta3)]


def express_in_standard_modules(
    v: VirtualCharacter, tables: SheafTables = TABLES
) -> tuple[Fraction, ...]:
    """Coefficients of v over (M0, M1, M2, Theta_psi3); exact solve."""
    if v.basis != "irreducible":
        raise ValueError("expected a virtual character in the irreducible basis")
    basis_rows = standard_module_rows(tables)
    m = Matrix.from_rows(basis_rows).transpose()  # 6x4: columns are the basis
    x = solve(m, list(v.coefficients))
    if x is None:
        raise NotInSpan(f"{v} is not in the span of the four stable distributions")
    return tuple(x)


def standard_module_change_of_basis(tables: SheafTables = TABLES) -> Matrix:
    """Rows: Theta_psi0..Theta_psi3 over (M0, M1, M2, Theta_psi3)."""
    rows = [
        list(express_in_standard_modules(stable_virtual_character(i, tables), tables))
        for i in range(4)
    ]
    return Matrix.from_rows(rows)


EXPECTED_CHANGE_OF_BASIS = Matrix.from_rows(
    [[1, 1, -3, 1], [0, 1, -2, 1], [0, 0, 1, -1], [0, 0, 0, 1]]
)


def aubert(pi: Irreducible, tables: SheafTables = TABLES) -> Irreducible:
    """The involution conjugate to the Fourier transform under the bijection."""
    _, primal = fourier(llc_inverse(pi), tables)
    return llc(primal)


def stable_basis_rank(tables: SheafTables = TABLES) -> int:
    rows = [list(stable_virtual_character(i, tables).coefficients) for i in range(4)]
    return rank(Matrix.from_rows(rows))


def change_of_basis_roundtrip_ok(tables: SheafTables = TABLES) -> bool:
    """Invert the unitriangular matrix and reproduce the Theta vectors."""
    m = standard_module_change_of_basis(tables)
    minv = invert(m)
    basis_rows = standard_module_rows(tables)
    for i in range(4):
        target = [Fraction(c) for c in stable_virtual_character(i, tables).coefficients]
        coeffs = m.row(i)
        recovered = [
            sum(coeffs[k] * Fraction(basis_rows[k][j]) for k in range(4)) for j in range(6)
        ]
        if recovered != target:
            return False
    return (m @ minv) == Matrix.identity(4)
