"""Command-line surface for classification, conormal, packet and table queries.

Exit codes: 0 success, 1 a verification check failed, 2 bad input.
All output is deterministic: JSON payloads are emitted with sorted keys and
tables have a fixed row/column order.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import conormal, packets, rootdata, sheaves, verify
from .cubics import (
    BinaryCubic,
    DualCubic,
    OrbitClass,
    classify,
    discriminant,
    hessian_quadratic,
    multiplicity_structure,
    rational_lines,
)
from .linalg import eval_q, format_rational, parse_rational

OK, CHECK_FAILED, INPUT_ERROR = 0, 1, 2


class InputError(ValueError):
    pass


def _parse_coeffs(values: list[str], count: int = 4) -> list:
    if len(values) != count:
        raise InputError(f"expected {count} rational coefficients, got {len(values)}")
    out = []
    for v in values:
        try:
            out.append(parse_rational(v))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {v!r}: {exc}") from exc
    return out


def _emit(args, payload: dict, human: str) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = human if human.endswith("\n") else human + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_table(payload: dict, fmt: str) -> str:
    rows, cols, entries = payload["rows"], payload["cols"], payload["entries"]
    if fmt == "csv":
        lines = ["," + ",".join(str(c) for c in cols)]
        for name, row in zip(rows, entries):
            lines.append(str(name) + "," + ",".join(str(e) for e in row))
        return "\n".join(lines) + "\n"
    # markdown / text
    header = ["", *map(str, cols)]
    body = [[str(name), *map(str, row)] for name, row in zip(rows, entries)]
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]
    out = ["| " + " | ".join(h.ljust(w) for h, w in zip(header, widths)) + " |"]
    out.append("|" + "|".join("-" * (w + 2) for w in widths) + "|")
    for line in body:
        out.append("| " + " | ".join(e.ljust(w) for e, w in zip(line, widths)) + " |")
    return "\n".join(out) + "\n"


# -- subcommand handlers -------------------------------------------------------


def cmd_classify(args) -> int:
    r = BinaryCubic(*_parse_coeffs(args.coeffs))
    orbit = classify(r)
    d0, d1, d2 = hessian_quadratic(r)
    payload = {
        "r": r.to_json(),
        "orbit": orbit.name,
        "orbit_dimension": orbit.dim,
        "hessian_quadratic": [format_rational(x) for x in (d0, d1, d2)],
        "discriminant": format_rational(discriminant(r)),
        "multiplicity_structure": multiplicity_structure(r).value,
    }
    if orbit is not OrbitClass.C0:
        lines, residual = rational_lines(r)
        payload["rational_lines"] = [
            {"line": u.to_json(), "multiplicity": m} for u, m in lines
        ]
        payload["residual_degree"] = residual
    try:
        stab = conormal.stabilizer_of_cubic(r)
        payload["stabilizer"] = stab.to_json()
    except conormal.IrrationalSplitting:
        payload["stabilizer"] = None
    human = (
        f"orbit {payload['orbit']} (dim {payload['orbit_dimension']}), "
        f"structure {payload['multiplicity_structure']}, "
        f"D = {payload['discriminant']}, "
        f"Delta = ({', '.join(payload['hessian_quadratic'])})"
    )
    _emit(args, payload, human)
    return OK


def cmd_pair(args) -> int:
    r = BinaryCubic(*_parse_coeffs(args.coeffs[:4]))
    s = DualCubic(*_parse_coeffs(args.coeffs[4:]))
    value = conormal.pairing(r, s)
    _emit(args, {"pairing": format_rational(value)}, f"<r, s> = {format_rational(value)}")
    return OK


def cmd_moment(args) -> int:
    r = BinaryCubic(*_parse_coeffs(args.coeffs[:4]))
    s = DualCubic(*_parse_coeffs(args.coeffs[4:]))
    m = conormal.moment(r, s)
    rows = [[format_rational(m[i, j]) for j in range(2)] for i in range(2)]
    human = "\n".join("  ".join(row) for row in rows)
    _emit(args, {"moment": rows, "is_zero": m.is_zero()}, human)
    return OK


def cmd_kernel(args) -> int:
    r = BinaryCubic(*_parse_coeffs(args.coeffs))
    basis = conormal.conormal_kernel(r)
    payload = {"dimension": len(basis), "basis": [s.to_json() for s in basis]}
    human = f"kernel dimension {len(basis)}\n" + "\n".join(
        "  (" + ", ".join(s.to_json()) + ")" for s in basis
    )
    _emit(args, payload, human)
    return OK


def cmd_stabilizer(args) -> int:
    r = BinaryCubic(*_parse_coeffs(args.coeffs))
    try:
        desc = conormal.stabilizer_of_cubic(r)
    except conormal.IrrationalSplitting as exc:
        raise InputError(str(exc)) from exc
    payload = desc.to_json()
    human = (
        f"dimension {desc.dimension}, component group {desc.component_group.value}, "
        f"{len(desc.generators)} finite generators"
    )
    _emit(args, payload, human)
    return OK


def cmd_lambda_regular(args) -> int:
    r = BinaryCubic(*_parse_coeffs(args.coeffs[:4]))
    s = DualCubic(*_parse_coeffs(args.coeffs[4:]))
    stratum = conormal.in_lambda_regular(conormal.ConormalPoint(r, s))
    payload = {"stratum": stratum}
    human = "not on a regular stratum" if stratum is None else f"regular stratum {stratum}"
    _emit(args, payload, human)
    return OK


def cmd_tables(args) -> int:
    try:
        payload = sheaves.table_payload(args.which)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.format in ("md", "csv", "text"):
        _emit(args, payload, _render_table(payload, args.format))
    else:
        _emit(args, payload, _render_table(payload, "md"))
    return OK


def cmd_packets(args) -> int:
    if args.psi not in (0, 1, 2, 3):
        raise InputError("psi index must be 0..3")
    members = sorted(p.label() for p in packets.packet(args.psi))
    lmembers = sorted(p.label() for p in packets.l_packet(args.psi))
    chars = {
        p.label(): packets.pairing_character(args.psi, p)
        for p in packets.packet(args.psi)
    }
    payload = {
        "psi": args.psi,
        "packet": members,
        "l_packet": lmembers,
        "pairing_characters": chars,
    }
    human = f"packet(psi{args.psi}) = {{{', '.join(members)}}}; L-packet = {{{', '.join(lmembers)}}}"
    _emit(args, payload, human)
    return OK


def cmd_aubert(args) -> int:
    mapping = {pi.label(): packets.aubert(pi).label() for pi in packets.IRREDUCIBLE_ORDER}
    human = "\n".join(f"{k} -> {v}" for k, v in mapping.items())
    _emit(args, {"aubert": mapping}, human)
    return OK


def cmd_stable(args) -> int:
    if args.psi not in (0, 1, 2, 3):
        raise InputError("psi index must be 0..3")
    theta = packets.stable_virtual_character(args.psi)
    payload = {"psi": args.psi, "basis": args.basis}
    if args.basis == "irred":
        payload["coefficients"] = list(theta.coefficients)
        names = [p.label() for p in packets.IRREDUCIBLE_ORDER]
    else:
        coefficients = packets.express_in_standard_modules(theta)
        payload["coefficients"] = [format_rational(c) for c in coefficients]
        names = ["M0", "M1", "M2", "Theta_psi3"]
    terms = [
        f"{c:+}*{n}" if not isinstance(c, str) else f"{c}*{n}"
        for c, n in zip(payload["coefficients"], names)
        if str(c) not in ("0",)
    ]
    _emit(args, payload, f"Theta_psi{args.psi} = " + " ".join(terms))
    return OK


def cmd_formal_degree(args) -> int:
    try:
        q0 = parse_rational(args.q)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    data = rootdata.adjoint_gamma_data()
    try:
        values = {
            "q": format_rational(q0),
            "dim_sigma": format_rational(eval_q(data.dim_sigma, q0)),
            "gamma0": format_rational(eval_q(data.gamma0, q0)),
        }
    except ZeroDivisionError as exc:
        raise InputError(f"pole at q = {args.q}: {exc}") from exc
    human = f"dim sigma = {values['dim_sigma']}, gamma(0) = {values['gamma0']}"
    _emit(args, values, human)
    return OK


def cmd_roots(args) -> int:
    payload = {
        "cartan_g2": rootdata.cartan_matrix("g2"),
        "cartan_dual": rootdata.cartan_matrix("dual"),
        "positive_roots_dual": [[r.a, r.b] for r in rootdata.positive_roots("dual")],
        "positive_roots_g2": [[r.a, r.b] for r in rootdata.positive_roots("g2")],
        "coroots_dual": {
            f"{r.a},{r.b}": list(rootdata.coroot(r)) for r in rootdata.positive_roots("dual")
        },
        "weight_partition": {
            str(e): [[r.a, r.b] for r in rootdata.weight_space(e)] for e in (-2, -1, 0, 1, 2)
        },
    }
    human_lines = ["positive roots (dual side, a*alpha + b*beta):"]
    for r in rootdata.positive_roots("dual"):
        human_lines.append(f"  ({r.a}, {r.b})  coroot {rootdata.coroot(r)}")
    _emit(args, payload, "\n".join(human_lines))
    return OK


def cmd_verify(args) -> int:
    tables = sheaves.TABLES
    if getattr(args, "tamper_evs", False):
        tables = tables.with_flipped_evs(sheaves.SimpleObject.IC1_C1, 1)
    results = verify.run_checks(args.scope, tables)
    failures = [r for r in results if not r.passed]
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"[{status}] {r.scope}/{r.name}"
        if not r.passed:
            line += f" -- {r.witness}"
        lines.append(line)
    lines.append(f"{len(results) - len(failures)}/{len(results)} checks passed")
    payload = {
        "scope": args.scope,
        "passed": len(results) - len(failures),
        "failed": len(failures),
        "checks": [
            {"name": r.name, "scope": r.scope, "passed": r.passed, "witness": r.witness}
            for r in results
        ],
    }
    _emit(args, payload, "\n".join(lines))
    return CHECK_FAILED if failures else OK


# -- parser ---------------------------------------------------------------------


def _add_global_flags(p: argparse.ArgumentParser, root: bool = False) -> None:
    # on subparsers the defaults are suppressed so a flag given before the
    # subcommand is not clobbered
    default = {"default": "text"} if root else {"default": argparse.SUPPRESS}
    p.add_argument("--format", choices=["json", "md", "csv", "text"], **default)
    p.add_argument(
        "--output",
        help="write the result to a file",
        **({"default": None} if root else {"default": argparse.SUPPRESS}),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g2cubics",
        description="Exact computations with binary cubics, conormal geometry, "
        "perverse-sheaf tables and packet data.",
    )
    _add_global_flags(parser, root=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="orbit class and invariants of a cubic")
    p.add_argument("coeffs", nargs=4, metavar="R")
    _add_global_flags(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("pair", help="Killing pairing of a cubic with a dual cubic")
    p.add_argument("coeffs", nargs=8, metavar="C")
    _add_global_flags(p)
    p.set_defaults(fn=cmd_pair)

    p = sub.add_parser("moment", help="moment-map matrix of a conormal pair")
    p.add_argument("coeffs", nargs=8, metavar="C")
    _add_global_flags(p)
    p.set_defaults(fn=cmd_moment)

    p = sub.add_parser("kernel", help="basis of the conormal kernel of a cubic")
    p.add_argument("coeffs", nargs=4, metavar="R")
    _add_global_flags(p)
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("stabilizer", help="stabilizer of a rational-split cubic")
    p.add_argument("coeffs", nargs=4, metavar="R")
    _add_global_flags(p)
    p.set_defaults(fn=cmd_stabilizer)

    p = sub.add_parser("lambda-regular", help="regular conormal stratum membership")
    p.add_argument("coeffs", nargs=8, metavar="C")
    _add_global_flags(p)
    p.set_defaults(fn=cmd_lambda_regular)

    p = sub.add_parser("tables", help="emit one of the shipped tables")
    p.add_argument(
        "--which",
        required=True,
        choices=["stalks", "geomult", "repmult", "evs", "nevs", "fourier"],
    )
    _add_global_flags(p)
    p.set_defaults(fn=cmd_tables)

    p = sub.add_parser("packets", help="packet membership and pairing characters")
    p.add_argument("action", nargs="?", default="show", choices=["show"])
    p.add_argument("--psi", type=int, required=True)
    _add_global_flags(p)
    p.set_defaults(fn=cmd_packets)

    p = sub.add_parser("aubert", help="the involution on the six irreducibles")
    _add_global_flags(p)
    p.set_defaults(fn=cmd_aubert)

    p = sub.add_parser("stable", help="stable virtual character of a parameter")
    p.add_argument("--psi", type=int, required=True)
    p.add_argument("--basis", choices=["irred", "standard"], default="irred")
    _add_global_flags(p)
    p.set_defaults(fn=cmd_stable)

    p = sub.add_parser("formal-degree", help="formal-degree data at a given q")
    p.add_argument("--q", required=True)
    _add_global_flags(p)
    p.set_defaults(fn=cmd_formal_degree)

    p = sub.add_parser("roots", help="root system and coroot data")
    _add_global_flags(p)
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("verify", help="run the consistency-check suite")
    p.add_argument(
        "--scope", choices=["all", "geometry", "sheaves", "packets", "g2"], default="all"
    )
    p.add_argument(
        "--tamper-evs",
        action="store_true",
        help="flip one raw-table entry first (sensitivity harness)",
    )
    _add_global_flags(p)
    p.set_defaults(fn=cmd_verify)

    # let negative rationals such as -1/3 pass as positional coefficients
    matcher = re.compile(r"^-\d+(/\d+)?$")
    parser._negative_number_matcher = matcher
    for child in sub.choices.values():
        child._negative_number_matcher = matcher

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INPUT_ERROR
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
