"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 I/O, 4 numerical, 5 table reproduction.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from . import point_dipole, potentials
from .potentials import DipoleSpecies
from .quadrature import (QuadratureError, cp_by_quadrature, integrate_log,
                         log_integral_closed_form, resonance_by_quadrature)
from .quantities import Energy
from .species import (BUILTIN_TABLE, COLUMNS, RESIDUAL_TOL, TABLE_TOL, InversionError, SpeciesFileError,
                      TableRow, builtin_species, invert_table_row, load_species,
                      reproduce_table, table_species)
from .tensor import BRANCHES

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERICAL, EXIT_TABLE = 0, 2, 3, 4, 5

QUANTITIES = ("cp", "cp-truncated", "res-x", "res-z", "point-modes", "self-energy")
MAX_POINTS = 100_000

A_GRID_TOL = 1e-7
ENERGY_REL_TOL = 1e-6
ENERGY_ABS_FLOOR = 1e-10


class UsageError(Exception):
    pass


def fmt(x):
    return format(float(x), ".12g")


def write_csv(header, rows, out):
    buf = io.StringIO(newline="")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(r if isinstance(r, str) else fmt(r) for r in row) + "\n")
    text = buf.getvalue()
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def resolve_species(args) -> DipoleSpecies:
    inline = (args.alpha0, args.omega0, args.a)
    if any(v is not None for v in inline):
        if any(v is None for v in inline):
            raise UsageError("--alpha0, --omega0 and --a must be given together")
        try:
            return DipoleSpecies.from_parameters(args.species or "custom", args.alpha0,
                                                 Energy.from_ev(args.omega0), args.a)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if args.species_file:
        found = load_species(args.species_file)
        if not found:
            raise UsageError(f"{args.species_file}: no species defined")
        if args.species is None:
            if len(found) > 1:
                raise UsageError("--species NAME is required when the file holds several species")
            return found[0]
        for sp in found:
            if sp.name == args.species:
                return sp
        raise UsageError(f"species {args.species!r} not in {args.species_file}")
    if args.species is None:
        raise UsageError("choose a species with --species, --species-file or --alpha0/--omega0/--a")
    try:
        return builtin_species(args.species)
    except KeyError:
        names = ", ".join(r.element for r in BUILTIN_TABLE)
        raise UsageError(f"unknown built-in species {args.species!r} (have {names})") from None


def sweep_grid(rho_min, rho_max, points, log):
    if points < 2 or points > MAX_POINTS:
        raise UsageError(f"--points must be in [2, {MAX_POINTS}]")
    if not (math.isfinite(rho_min) and math.isfinite(rho_max)) or rho_min < 0 or rho_min >= rho_max:
        raise UsageError("need 0 <= --rho-min < --rho-max")
    if log:
        if rho_min <= 0:
            raise UsageError("--log needs --rho-min > 0")
        return np.geomspace(rho_min, rho_max, points)
    return np.linspace(rho_min, rho_max, points)


def sweep_rows(species, quantity, grid, method="closed"):
    """Yield (header, rows) for a sweep; rows follow the order of ``grid``."""
    a = species.a
    header = ["rho_bohr", "t", "U_eV"]
    rows = []
    if quantity == "point-modes":
        if grid[0] <= 0:
            raise UsageError("point-modes needs --rho-min > 0")
        header.append("real_modes")
        for rho in grid:
            U = point_dipole.interaction_energy(species.model, rho)
            n = point_dipole.mode_spectrum(species.model, rho).real_count
            rows.append([rho, rho / a, U.ev, str(n)])
        return header, rows
    if quantity == "cp":
        for j in BRANCHES:
            header += [f"sym_{j.value}", f"anti_{j.value}"]
        for rho in grid:
            bd = potentials.cp_breakdown(species, rho)
            U = cp_by_quadrature(species, rho) if method == "quadrature" else bd.total
            row = [rho, rho / a, U.ev]
            for j in BRANCHES:
                row += [bd[j].symmetric, bd[j].antisymmetric]
            rows.append(row)
        return header, rows
    for rho in grid:
        if quantity == "cp-truncated":
            U = potentials.cp_potential_truncated(species, rho)
        elif quantity in ("res-x", "res-z"):
            branch = quantity[-1]
            if method == "quadrature":
                U = resonance_by_quadrature(species, rho, branch)
            else:
                U = potentials.resonance_potential(species, rho, branch)
        elif quantity == "self-energy":
            U = potentials.self_energy(species)
        else:
            raise UsageError(f"unknown quantity {quantity!r}")
        rows.append([rho, rho / a, U.ev])
    return header, rows


def cmd_sweep(args):
    species = resolve_species(args)
    if args.rho_min is None or args.rho_max is None:
        raise UsageError("--rho-min and --rho-max are required")
    grid = sweep_grid(args.rho_min, args.rho_max, args.points, args.log)
    header, rows = sweep_rows(species, args.quantity, grid, args.method)
    write_csv(header, rows, args.out)
    return EXIT_OK


def read_table_file(path):
    with open(path) as fh:
        text = fh.read()
    if not text.strip():
        raise UsageError(f"{path}: empty table file")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, list) or not doc:
        raise UsageError(f"{path}: expected a non-empty array of table rows")
    rows = []
    for i, rec in enumerate(doc):
        if not isinstance(rec, dict) or set(rec) != {"element", *COLUMNS}:
            raise UsageError(f"{path}: record {i} needs exactly the fields element, {', '.join(COLUMNS)}")
        try:
            rows.append(TableRow(rec["element"], *(float(rec[k]) for k in COLUMNS)))
        except (TypeError, ValueError) as exc:
            raise UsageError(f"{path}: record {i}: {exc}") from exc
    return rows


def table_rows(args):
    return read_table_file(args.table_file) if args.table_file else list(BUILTIN_TABLE)


def cmd_table(args):
    tol = TABLE_TOL if args.tolerance is None else args.tolerance
    report = reproduce_table(table_rows(args), tol)
    print(report.format())
    if not report.passed:
        for r in report.rows:
            for cell in r.failed_cells:
                print(f"failing cell: {r.element} {cell} ({r.deviations[cell]:+.3%})", file=sys.stderr)
            if r.error:
                print(f"failing row: {r.element}: {r.error}", file=sys.stderr)
        return EXIT_TABLE
    return EXIT_OK


def cmd_invert(args):
    tol = RESIDUAL_TOL if args.tolerance is None else args.tolerance
    status = EXIT_OK
    print("element,hbar_omega0_eV,g,four_g_over_3,resid_u_s_full,resid_u_cp_trunc0")
    for row in table_rows(args):
        try:
            p = invert_table_row(row, tol=math.inf)
        except InversionError as exc:
            print(f"gaussdisp: {exc}", file=sys.stderr)
            status = EXIT_TABLE
            continue
        print(",".join([row.element, fmt(p.hbar_omega0.ev), fmt(p.g), fmt(4 * p.g / 3),
                        fmt(p.residuals["u_s_full"]), fmt(p.residuals["u_cp_trunc0"])]))
        for cell, r in p.residuals.items():
            if abs(r) > tol:
                print(f"gaussdisp: {row.element}: {cell} residual {r:+.3%} exceeds {tol:.2%}",
                      file=sys.stderr)
                status = EXIT_TABLE
    return status


def cmd_modes(args):
    species = resolve_species(args)
    if args.rho is None or args.rho <= 0:
        raise UsageError("modes needs --rho > 0")
    spectrum = point_dipole.mode_spectrum(species.model, args.rho)
    w = species.omega0.ev
    rows = []
    for m in spectrum.modes:
        freq = w * math.sqrt(m.frequency_squared_factor) if m.is_real else 0.0
        rows.append([m.frequency_squared_factor, str(m.multiplicity), str(m.is_real).lower(), freq])
    write_csv(["factor", "multiplicity", "is_real", "frequency_eV"], rows, args.out)
    U = point_dipole.interaction_energy(species.model, args.rho)
    print(f"# u = {point_dipole.coupling_ratio(species.model, args.rho):.12g}, "
          f"real modes = {spectrum.real_count}, U = {U.ev:.12g} eV", file=sys.stderr)
    return EXIT_OK


def cmd_self_energy(args):
    species = resolve_species(args)
    rows = [[species.name, species.coupling, potentials.self_energy(species).ev,
             potentials.self_energy_truncated(species).ev, potentials.cp_contact(species).ev,
             potentials.cp_potential_truncated(species, 0.0).ev]]
    write_csv(["name", "g", "U_S_full_eV", "U_S_truncated_eV", "U_CP_full0_eV", "U_CP_truncated0_eV"],
              rows, args.out)
    return EXIT_OK


def default_a_grid(n=100):
    mags = np.logspace(-4, 3, n)
    return np.concatenate([mags, -mags])


def oracle_check(tol, a_values=None, species=None, t_points=50, out=None):
    """Closed form vs quadrature; returns (passed, summary dict)."""
    out = sys.stdout if out is None else out
    a_values = default_a_grid() if a_values is None else a_values
    max_a = 0.0
    for A in a_values:
        max_a = max(max_a, abs(integrate_log(A, tol).value - log_integral_closed_form(A)))
    species = table_species() if species is None else species
    max_cp = max_res = 0.0
    for sp in species:
        w = sp.omega0.value
        for t in np.geomspace(1e-3, 30.0, t_points):
            rho = t * sp.a
            pairs = [("cp", potentials.cp_potential(sp, rho), cp_by_quadrature(sp, rho, tol))]
            for j in ("x", "z"):
                pairs.append(("res", potentials.resonance_potential(sp, rho, j),
                              resonance_by_quadrature(sp, rho, j, tol)))
            for kind, closed, quad_ in pairs:
                dev = abs(closed.value - quad_.value) / max(abs(closed.value), ENERGY_ABS_FLOOR * w)
                if kind == "cp":
                    max_cp = max(max_cp, dev)
                else:
                    max_res = max(max_res, dev)
    summary = {"log_integral_max_abs": max_a, "cp_max_rel": max_cp, "resonance_max_rel": max_res}
    passed = max_a <= A_GRID_TOL and max_cp <= ENERGY_REL_TOL and max_res <= ENERGY_REL_TOL
    print(f"log_integral grid ({len(a_values)} values): max |delta| = {max_a:.3e} "
          f"(limit {A_GRID_TOL:g})", file=out)
    print(f"cp_potential vs quadrature: max rel = {max_cp:.3e} (limit {ENERGY_REL_TOL:g})", file=out)
    print(f"resonance_potential vs quadrature: max rel = {max_res:.3e} (limit {ENERGY_REL_TOL:g})",
          file=out)
    print("PASS" if passed else "FAIL", file=out)
    return passed, summary


def cmd_oracle_check(args):
    from .quadrature import DEFAULT_TOL
    tol = DEFAULT_TOL if args.tolerance is None else args.tolerance
    a_values = None
    if args.a_values:
        try:
            a_values = [float(v) for v in args.a_values.split(",")]
        except ValueError as exc:
            raise UsageError(f"--a-values: {exc}") from exc
    passed, _ = oracle_check(tol, a_values)
    return EXIT_OK if passed else EXIT_NUMERICAL


def build_parser():
    p = argparse.ArgumentParser(
        prog="gaussdisp",
        description="Dispersion interactions between finite-size Gaussian dipoles "
                    "(energies in eV, lengths in bohr).")
    sub = p.add_subparsers(dest="command", required=True)

    def species_opts(sp):
        sp.add_argument("--species", metavar="NAME",
                        help="built-in He/Ne/Ar/Kr (inverted from the table, a = 1 bohr) "
                             "or a name from --species-file")
        sp.add_argument("--species-file", metavar="PATH", help="JSON species file")
        sp.add_argument("--alpha0", type=float, help="inline species: alpha0 in bohr^3")
        sp.add_argument("--omega0", type=float, help="inline species: hbar*omega0 in eV")
        sp.add_argument("--a", type=float, help="inline species: Gaussian radius in bohr")
        sp.add_argument("--out", metavar="PATH", help="output CSV (default stdout)")

    s = sub.add_parser("sweep", help="tabulate a potential over separations")
    species_opts(s)
    s.add_argument("--quantity", choices=QUANTITIES, default="cp")
    s.add_argument("--rho-min", type=float)
    s.add_argument("--rho-max", type=float)
    s.add_argument("--points", type=int, default=50)
    s.add_argument("--log", action="store_true", help="log spacing")
    s.add_argument("--method", choices=("closed", "quadrature"), default="closed",
                   help="closed forms or numerical imaginary-frequency integrals")
    s.set_defaults(func=cmd_sweep)

    for name, func, text in (("table", cmd_table, "reproduce the noble-gas table"),
                             ("invert", cmd_invert, "recover hbar*omega0 and g from table rows")):
        t = sub.add_parser(name, help=text)
        t.add_argument("--table-file", metavar="PATH", help="JSON array of table rows")
        t.add_argument("--tolerance", type=float)
        t.set_defaults(func=func)

    m = sub.add_parser("modes", help="point-dipole normal modes at one separation")
    species_opts(m)
    m.add_argument("--rho", type=float)
    m.set_defaults(func=cmd_modes)

    e = sub.add_parser("self-energy", help="self- and contact energies of a species")
    species_opts(e)
    e.set_defaults(func=cmd_self_energy)

    o = sub.add_parser("oracle-check", help="closed forms against quadrature")
    o.add_argument("--tolerance", type=float, help="absolute quadrature tolerance")
    o.add_argument("--a-values", metavar="A1,A2,...", help="replace the default A grid")
    o.set_defaults(func=cmd_oracle_check)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gaussdisp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpeciesFileError as exc:
        print(f"gaussdisp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"gaussdisp: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except QuadratureError as exc:
        print(f"gaussdisp: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
