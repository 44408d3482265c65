"""Command-line interface.

Exit codes: 0 success/accepted, 1 rejected or unsolvable, 2 parse or
coverage error (and invalid group tables), 3 cap exceeded, 4 contract
violation.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from diophgal.algebra.ring import RingDescriptor
from diophgal.encoder import (conjoin_single, encode_automorphism_problem, encode_disequation,
                              encode_galois_set, encode_group_realization,
                              encode_subgroup_problem, parse_system, splice_all)
from diophgal.errors import EXIT_CODES, ContractViolation, DiophError, GroupValidationError
from diophgal.groups import LIBRARY_NAMES, library_group, load_group
from diophgal.groups.table import GroupTable
from diophgal.oracle import (brute_force_enumerate, parse_witness, structured_solve_finite_field,
                             verify_witness)

SINGLE_EQUATION_TERM_CAP = 2_000_000


def read_group(spec: str) -> GroupTable:
    """A group file path, or the name of a bundled table."""
    path = Path(spec)
    if path.exists():
        return load_group(path)
    if spec in LIBRARY_NAMES:
        return library_group(spec)
    raise FileNotFoundError(f"no group file {spec!r} and no bundled group of that name")


def single_equation(system, cap: int):
    out = splice_all(encode_disequation(system))
    z = conjoin_single(out, waive_predicates=True, cap=cap)
    out.equations.append(z)
    out.provenance.append("conjoin-single")
    return out


def build_system(args):
    ring = RingDescriptor.parse(args.ring)
    groups = [read_group(g) for g in args.groups]
    problem = args.problem
    lowering = args.lowering
    if problem == "galois-set":
        if args.degree is None or groups:
            raise ContractViolation("galois-set takes --degree and no group files")
        return encode_galois_set(ring, args.degree, lowering=lowering)
    if problem == "igp":
        _arity(groups, 1, "igp needs one group file")
        return encode_group_realization(ring, groups[0], lowering=lowering)
    if problem == "subgroup":
        _arity(groups, 2, "subgroup needs the files of G and H")
        kwargs = {} if args.cap is None else {"max_group_order": args.cap}
        return encode_subgroup_problem(ring, groups[0], groups[1], lowering=lowering, **kwargs)
    _arity(groups, 1, "automorphism needs the file of H")
    if args.degree is None:
        raise ContractViolation("automorphism needs --degree n")
    kwargs = {} if args.cap is None else {"max_degree": args.cap}
    return encode_automorphism_problem(ring, groups[0], args.degree, **kwargs)


def _arity(groups, k: int, message: str) -> None:
    if len(groups) != k:
        raise ContractViolation(message)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- subcommands

def cmd_validate_group(args) -> int:
    status = 0
    for spec in args.groups:
        try:
            g = read_group(spec)
        except GroupValidationError as exc:
            print(f"{spec}: invalid ({exc.axiom} at {list(exc.indices)}): {exc}")
            status = max(status, exc.exit_code)
            continue
        print(f"{spec}: valid group {g.name} of order {g.order}")
    return status


def cmd_encode(args) -> int:
    system = build_system(args)
    if args.single_equation:
        system = single_equation(system, args.term_cap)
    _emit(system.to_text(), args.output)
    print(system.summary(), file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    system = parse_system(Path(args.system).read_text())
    witness = parse_witness(Path(args.witness).read_text(), system.domain)
    report = verify_witness(system, witness)
    _emit(report.to_text(), args.output)
    return 0 if report.accepted else EXIT_CODES["rejected"]


def cmd_brute_force(args) -> int:
    system = parse_system(Path(args.system).read_text())
    cap = args.cap if args.cap is not None else 10 ** 6
    report = brute_force_enumerate(system, cap)
    text = report.to_text()
    if report.witnesses:
        order = system.variables
        text = text.split("witness v1")[0] + report.witnesses[0].to_text(order)
    _emit(text, args.output)
    return 0 if report.solvable else EXIT_CODES["rejected"]


@dataclass(frozen=True)
class Scenario:
    group: str
    ring: str
    witness: str
    accept: bool


SCENARIOS = (
    Scenario("C2", "Q", "C2_Q_x2-2.wit", True),
    Scenario("C2", "Q", "C2_Q_x2-4.wit", False),
    Scenario("C3", "Q", "C3_Q_x3-3x+1.wit", True),
    Scenario("C4", "Q", "C4_Q_cyclotomic5.wit", True),
    Scenario("C2", "Fp p=5", "C2_F5_x2+2.wit", True),
)


def scenario_witness_text(name: str) -> str:
    return resources.files("diophgal.data.witnesses").joinpath(name).read_text()


def run_scenario(sc: Scenario, outdir: Path | None = None):
    system = encode_group_realization(RingDescriptor.parse(sc.ring), library_group(sc.group))
    text = system.to_text()
    wtext = scenario_witness_text(sc.witness)
    if outdir is not None:
        stem = Path(sc.witness).stem
        (outdir / f"{stem}.sys").write_text(text)
        (outdir / f"{stem}.wit").write_text(wtext)
    reparsed = parse_system(text)
    return verify_witness(reparsed, parse_witness(wtext, reparsed.domain))


def cmd_demo(args) -> int:
    outdir = Path(args.output) if args.output else None
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    ok = True
    for sc in SCENARIOS:
        report = run_scenario(sc, outdir)
        good = report.accepted == sc.accept
        ok &= good
        verdict = "accepted" if report.accepted else "rejected"
        print(f"[{'ok' if good else 'MISMATCH'}] {sc.group} over {sc.ring} with {sc.witness}: {verdict}")
        for line in report.failures():
            print(f"      {line}")
        if sc.accept and report.accepted:
            # perturb one coordinate; the equations should notice
            system = parse_system(encode_group_realization(
                RingDescriptor.parse(sc.ring), library_group(sc.group)).to_text())
            w = parse_witness(scenario_witness_text(sc.witness), system.domain)
            name = rng.choice(sorted(w.values))
            w.values[name] = system.domain.coerce(w.values[name] + 1)
            moved = verify_witness(system, w)
            print(f"      perturbed {name}: {'accepted' if moved.accepted else 'rejected'}")
    ring = RingDescriptor.parse("Fp p=5")
    for name in ("C2", "C4", "C2xC2"):
        g = library_group(name)
        rep = structured_solve_finite_field(ring, g, system=encode_group_realization(ring, g))
        print(f"[info] structured F_5 search for {name}: {rep.status}")
    return 0 if ok else EXIT_CODES["rejected"]


# ---------------------------------------------------------------- parser

def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diophgal", description="Encode group realizability questions as polynomial systems and check witnesses.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-group", help="check group table files")
    p.add_argument("groups", nargs="+")
    p.set_defaults(func=cmd_validate_group)

    p = sub.add_parser("encode", help="emit a diophsys v1 file")
    p.add_argument("groups", nargs="*", help="group files or bundled names (igp: G; subgroup: G H; "
                                             "automorphism: H)")
    p.add_argument("--problem", choices=("igp", "subgroup", "automorphism", "galois-set"),
                   default="igp")
    p.add_argument("--ring", default="Q", help='"Q", "Z", "Fp p=<prime>" or '
                                               '"numberfield minpoly=<c_n,...,c_0>"')
    p.add_argument("--degree", type=int, help="n for automorphism, d for galois-set")
    p.add_argument("--single-equation", action="store_true",
                   help="also append the single conjoined polynomial")
    p.add_argument("--cap", type=int, help="override the size cap (|G| for subgroup, n for automorphism)")
    p.add_argument("--term-cap", type=int, default=SINGLE_EQUATION_TERM_CAP,
                   help="term bound for --single-equation")
    p.add_argument("--lowering", choices=("auto", "expand", "aux"), default="auto")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("verify", help="check a witness against a system")
    p.add_argument("system")
    p.add_argument("witness")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("brute-force", help="exhaust a system over F_p")
    p.add_argument("system")
    p.add_argument("--cap", type=int, help="maximum number of assignments (default 10^6)")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_brute_force)

    p = sub.add_parser("demo", help="encode and verify the bundled scenarios")
    p.add_argument("--output", "-o", help="directory for the emitted systems and witnesses")
    p.add_argument("--seed", type=int, default=0, help="seed for the perturbation spot checks")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except DiophError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES["parse"]


if __name__ == "__main__":
    sys.exit(main())
