"""Command-line interface.

Every subcommand prints a short human-readable summary; ``--json PATH``
additionally writes the full result as JSON (``-`` sends it to stdout in
place of the summary).  Exit status: 0 success, 1 failed verification,
2 unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .configs import (
    DEFAULT_WORD_LENGTH,
    UnsupportedConfiguration,
    configuration_from_json,
    enumerate_profiles,
    enumerate_starred,
    necessary_conditions,
    profile_configuration,
    rigid_configuration_check,
)
from .kodaira import FINITE_KINDS, TABLE
from .polynomial import RationalPolynomial
from .sl2z import INFINITE, format_matrix, is_conjugate, normal_form, order, parse_matrix, parse_word
from .torus import (
    DEFAULT_ORDER_CAP,
    BUILTIN_NAMES,
    GroupOrderExceeded,
    NonSymplecticAction,
    builtin_action,
    desingularization_obstruction,
    fixed_locus,
    group_from_json,
    hodge_numbers,
    preserves_symplectic,
    singularity_inventory,
)
from .torus.forms import base_action, top_power_invariant
from .verify import run_checks
from .weierstrass import classify_surface, fibre_display, normalize_j_case, WeierstrassError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, lines: list[str]) -> None:
    target = getattr(args, "json", None)
    if target == "-":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
        return
    for line in lines:
        print(line)
    if target:
        Path(target).write_text(json.dumps(payload, indent=2) + "\n")


# -- monodromy -------------------------------------------------------------------


def _count(n: int, noun: str) -> str:
    return f"{n} {noun}" if n == 1 else f"{n} {noun}s"


def _order_text(m) -> str:
    k = order(m)
    return "infinite order" if k == INFINITE else f"order {k}"


def cmd_monodromy(args) -> int:
    if (args.matrix is None) == (args.word is None):
        raise UsageError("give exactly one of --matrix or --word")
    m = parse_matrix(args.matrix) if args.matrix is not None else parse_word(args.word).evaluate()
    word = normal_form(m)
    k = order(m)
    payload = {
        "matrix": format_matrix(m),
        "trace": m.trace,
        "order": "infinite" if k == INFINITE else k,
        "word": word.display(),
    }
    lines = [f"matrix {format_matrix(m)}", f"{_order_text(m)}, word {word.display()}"]
    if k == INFINITE:
        lines.append(f"note: |trace| = {abs(m.trace)} >= 2, so no power is the identity")
    if args.conjugate is not None:
        other = parse_matrix(args.conjugate)
        try:
            res = is_conjugate(m, other, args.word_length)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        payload["conjugacy"] = {
            "target": format_matrix(other),
            "conjugate": res.conjugate,
            "witness": res.witness.display() if res.witness else None,
            "search_bound": res.search_bound,
        }
        if res:
            lines.append(f"conjugate to {format_matrix(other)}: yes, witness {res.witness.display()}")
        else:
            lines.append(
                f"conjugate to {format_matrix(other)}: no witness among reduced words of length <= {args.word_length}"
            )
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_fibres(args) -> int:
    rows = [TABLE[k].as_row() for k in FINITE_KINDS]
    lines = [
        f"{r['Kodaira type']:<6} {r['Dynkin diagram']:<4} euler {r['Euler number']:<3} "
        f"{r['monodromy']:<18} order {r['order']}"
        for r in rows
    ]
    _emit(args, {"table": rows}, lines)
    return EXIT_OK


# -- classify --------------------------------------------------------------------


def cmd_classify(args) -> int:
    try:
        j_case = normalize_j_case(args.j)
    except WeierstrassError as exc:
        raise UsageError(str(exc)) from exc
    expected = {"zero": "b", "1728": "a", "generic": None}[j_case]
    given = {"a": args.a, "b": args.b}
    for name, value in given.items():
        if value is not None and name != expected:
            raise UsageError(f"--{name} does not apply to j case {j_case}")
    poly = None
    if expected is not None:
        text = given[expected]
        if text is None:
            raise UsageError(f"j case {j_case} needs --{expected}")
        poly = RationalPolynomial.parse(text)
    report = classify_surface(j_case, poly)
    lines = [f"j case {report.j_case}" + (f", {expected}(t) = {poly.pretty()}" if poly is not None else "")]
    for z in report.zeros:
        if z.kind is None:
            lines.append(f"  order {z.multiplicity} at {z.location} (x{z.count}): not a rational double point")
        else:
            lines.append(
                f"  order {z.multiplicity} at {z.location} (x{z.count}): {fibre_display(z.kind)}, "
                f"euler {z.euler}, monodromy {z.monodromy}, singularity {z.singularity}"
            )
    fibres = ", ".join(f"{fibre_display(k)} x{c}" for k, c in report.fibres) or "none"
    lines.append(f"fibres: {fibres}")
    lines.append(f"euler total {report.euler_total}")
    lines.append("valid K3" if report.valid_k3 else "invalid: " + "; ".join(report.reasons))
    _emit(args, report.as_dict(), lines)
    return EXIT_OK


# -- configs ---------------------------------------------------------------------


def cmd_configs(args) -> int:
    if args.action == "starred":
        configs = enumerate_starred()
        payload = {"configurations": [{"fibres": c.as_json_list(), "euler": c.euler_ledger()} for c in configs]}
        lines = [f"{c}   ({c.euler_ledger()})" for c in configs]
        lines.append(f"{len(configs)} configurations")
    elif args.action == "profiles":
        if args.j is None:
            raise UsageError("configs profiles needs --j 0 or --j 1728")
        j_case = normalize_j_case(args.j)
        profiles = enumerate_profiles(j_case)
        payload = {"j_case": j_case, "count": len(profiles), "profiles": []}
        lines = []
        for prof in profiles:
            cfg = profile_configuration(j_case, prof)
            payload["profiles"].append({"multiplicities": prof.multiplicities(), "fibres": cfg.as_json_list(),
                                        "euler": cfg.euler_ledger()})
            lines.append(f"{'+'.join(map(str, prof.multiplicities())):<26} {cfg}   ({cfg.euler_ledger()})")
        lines.append(f"{len(profiles)} profiles")
    elif args.action == "check":
        cfg = _config_arg(args)
        nc = necessary_conditions(cfg)
        payload = {"configuration": cfg.as_json_list(), "j_case": cfg.j_case, "euler": cfg.euler_ledger(),
                   "status": nc.status, "exponent_sum": nc.exponent_sum, "modulus": nc.modulus}
        lines = [f"{cfg}   ({cfg.euler_ledger()})", nc.status]
    else:
        configs = [_config_arg(args)] if args.config else enumerate_starred()
        reports = []
        lines = []
        for cfg in configs:
            try:
                rep = rigid_configuration_check(cfg, args.word_length)
            except UnsupportedConfiguration as exc:
                raise UsageError(str(exc)) from exc
            reports.append(rep.as_dict())
            if rep.rigid:
                forced = ", ".join(format_matrix(m) for _, m in rep.forced)
                lines.append(f"{cfg}: forced {forced}; monodromy group order {rep.group_order}")
            else:
                lines.append(f"{cfg}: {rep.solutions} assignments found, not rigid at word length {rep.word_length}")
        payload = {"word_length": args.word_length, "reports": reports}
    _emit(args, payload, lines)
    return EXIT_OK


def _config_arg(args):
    if not args.config:
        raise UsageError('needs --config, e.g. \'[{"type": "IVstar", "count": 3}]\'')
    try:
        return configuration_from_json(json.loads(args.config))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse configuration: {exc}") from exc


# -- torus -----------------------------------------------------------------------


def _torsion(text: str | None):
    if text is None:
        return None
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise UsageError("--torsion takes two rationals, e.g. 1/2,0")
    return parts


def _group(args):
    if args.action_file and args.group:
        raise UsageError("give either --group or --action, not both")
    try:
        if args.action_file:
            return group_from_json(Path(args.action_file).read_text(), args.order_cap)
        if not args.group:
            raise UsageError(f"needs --group ({', '.join(BUILTIN_NAMES)}) or --action FILE")
        return builtin_action(args.group, k=args.k, n=args.n, torsion=_torsion(args.torsion), kind=args.field,
                              order_cap=args.order_cap)
    except GroupOrderExceeded as exc:
        raise UsageError(str(exc)) from exc
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise UsageError(f"cannot load action: {exc}") from exc


def cmd_torus(args) -> int:
    group = _group(args)
    header = f"{group.name or 'group'}: order {group.order}, E^{group.complex_dimension}, {group.kind}"
    if args.action == "fixed-points":
        if args.element:
            try:
                targets = [(args.element, group.element(args.element))]
            except KeyError as exc:
                raise UsageError(str(exc.args[0])) from exc
        else:
            targets = [(group.generator_name(i), g) for i, g in enumerate(group.generators)]
        payload = {"group": group.name, "order": group.order, "elements": []}
        lines = [header]
        for name, g in targets:
            loc = fixed_locus(g)
            entry = {"element": name, **loc.summary()}
            if loc.is_isolated:
                entry["points"] = [p.as_list() for p in loc.isolated_points]
            elif loc.solvable and args.samples:
                entry["samples"] = [p.as_list() for p in loc.samples()]
            payload["elements"].append(entry)
            if not loc.solvable:
                lines.append(f"{name}: no fixed points")
            elif loc.is_isolated:
                lines.append(f"{name}: {_count(loc.component_count, 'isolated fixed point')}")
            else:
                lines.append(f"{name}: {loc.component_count} components of dimension {loc.dimension}")
    elif args.action == "inventory":
        inv = singularity_inventory(group)
        payload = inv.as_dict()
        lines = [header]
        for k, v in inv.points_by_stabilizer_order.items():
            orbits = inv.orbits_by_stabilizer_order[k]
            lines.append(f"stabilizer order {k}: {_count(v, 'point')} in {_count(orbits, 'orbit')}")
        if inv.orbits_by_label:
            lines.append("labels: " + ", ".join(f"{c} x {lab}" for lab, c in inv.orbits_by_label.items()))
        for s in inv.strata:
            lines.append(
                f"stratum of {s.element} (class size {s.class_size}): dimension {s.dimension}, "
                f"{s.component_count} components, transverse {s.transverse['scalar'] or s.transverse['eigenvalues']}"
            )
    elif args.action == "invariants":
        hodge = hodge_numbers(group)
        sym = preserves_symplectic(group)
        payload = {"group": group.name, "order": group.order, "hodge": {f"h{p},0": h for p, h in enumerate(hodge)},
                   "preserves_symplectic": sym, "volume_form_invariant": top_power_invariant(group)}
        lines = [header] + [f"h^{p},0 = {h}" for p, h in enumerate(hodge)]
        lines.append(f"preserves symplectic form: {'yes' if sym else 'no'}")
        if args.base:
            base = base_action(group)
            bh = hodge_numbers(base)
            payload["base"] = {"dimension": base.complex_dimension, "hodge": {f"h{p},0": h for p, h in enumerate(bh)}}
            lines.append(f"base E^{base.complex_dimension}: invariant top forms {bh[-1]}")
    else:
        try:
            rep = desingularization_obstruction(group)
        except NonSymplecticAction as exc:
            raise UsageError(str(exc)) from exc
        payload = rep.as_dict()
        lines = [header, f"{rep.verdict}: {rep.reason}"]
        if rep.witness:
            w = rep.witness
            transverse = w.transverse["scalar"] or w.transverse["eigenvalues"]
            lines.append(f"witness: fixed locus of {w.element}, local model {w.local_model}, "
                         f"|G| = {len(w.stabilizer)}, transverse {transverse}")
    _emit(args, payload, lines)
    return EXIT_OK


# -- verify ----------------------------------------------------------------------


def cmd_verify(args) -> int:
    only = set(args.only) if args.only else None
    report = run_checks(only)
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.id:<28} {c.location}" for c in report.checks]
    for c in report.checks:
        if not c.passed:
            lines.append(f"  {c.id}: expected {json.dumps(c.expected)}, computed {json.dumps(c.computed)}")
    lines.append(f"{report.passed}/{len(report.checks)} checks passed")
    _emit(args, report.as_dict(), lines)
    return EXIT_OK if report.ok else EXIT_FAILED


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the full result as JSON ('-' for stdout)")

    parser = argparse.ArgumentParser(prog="isotrivial", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("monodromy", parents=[common], help="order, normal form and conjugacy in SL(2,Z)")
    p.add_argument("--matrix", help="e.g. [[1,1],[-1,0]]")
    p.add_argument("--word", help="word in a, a2, b with optional sign, e.g. -ab")
    p.add_argument("--conjugate", metavar="MATRIX", help="search for a conjugator onto this matrix")
    p.add_argument("--word-length", type=int, default=8, help="conjugator search bound (default 8)")
    p.set_defaults(func=cmd_monodromy)

    p = sub.add_parser("fibres", parents=[common], help="finite-monodromy Kodaira fibre table")
    p.set_defaults(func=cmd_fibres)

    p = sub.add_parser("classify", parents=[common], help="fibres of an isotrivial Weierstrass K3")
    p.add_argument("--j", required=True, help="0, 1728 or generic")
    p.add_argument("--b", help="b(t) for j = 0, coefficients constant term first")
    p.add_argument("--a", help="a(t) for j = 1728, coefficients constant term first")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("configs", parents=[common], help="singular-fibre configurations")
    p.add_argument("action", choices=["starred", "profiles", "rigidity", "check"])
    p.add_argument("--j", help="j case for profiles")
    p.add_argument("--config", help='JSON list such as [{"type": "IVstar", "count": 3}]')
    p.add_argument("--word-length", type=int, default=DEFAULT_WORD_LENGTH,
                   help=f"rigidity search bound (default {DEFAULT_WORD_LENGTH})")
    p.set_defaults(func=cmd_configs)

    p = sub.add_parser("torus", parents=[common], help="finite group actions on products of elliptic curves")
    p.add_argument("action", choices=["fixed-points", "inventory", "invariants", "obstruction"])
    p.add_argument("--group", choices=BUILTIN_NAMES)
    p.add_argument("--k", type=int, help="order of the cyclic factor (2, 3, 4, 6)")
    p.add_argument("--n", type=int)
    p.add_argument("--torsion", help="2-torsion translation for the translated action, e.g. 1/2,0")
    p.add_argument("--field", choices=["gauss", "eisenstein", "rational"])
    p.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP)
    p.add_argument("--action", dest="action_file", metavar="FILE", help="action as JSON instead of --group")
    p.add_argument("--element", help="group element as a product of generator names, e.g. gamma1*gamma2")
    p.add_argument("--samples", action="store_true", help="list one point per fixed component")
    p.add_argument("--base", action="store_true", help="also report forms on the base (even coordinates)")
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("verify-paper", parents=[common], help="run the regression suite of published claims")
    p.add_argument("--only", nargs="*", metavar="ID", help="run only these check ids")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
