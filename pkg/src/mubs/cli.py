"""
Command line: mubs gen | verify | pauli | sim | bounds.

Exit codes are 0 on success, 1 when a verification finds a violation and 2 for usage,
parse or precondition errors. Logs go to stderr so stdout stays machine-readable.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classes import MubError, PreconditionError
from .constructions import construct
from .cyclo import CycloMatrix
from .export import amplitude_renderer, from_json, render_pretty, render_report, report_to_json, to_csv, to_json
from .pauli import commuting_classes, group_check, pauli_table
from .qudits import StateVector, bell, bloch_angles, bloch_coords, concurrence, deutsch_jozsa, measure, teleport
from .verify import VerifyOptions, check_mub_set, is_prime_power, mub_bounds

log = logging.getLogger(__name__)

METHODS = ("master", "alternative", "gf", "gr", "w4")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _amplitudes(text: str) -> list[complex]:
    try:
        return [complex(t.strip().replace("i", "j")) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated amplitudes, got {text!r}") from None


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")
        log.info("wrote %s", out)


def _gen_params(args: argparse.Namespace) -> tuple[int, ...]:
    match args.method:
        case "master":
            wanted = (args.d,)
        case "alternative":
            wanted = (args.p if args.p is not None else args.d,)
        case "gf":
            wanted = (args.p, args.m or 1)
        case "gr":
            wanted = (args.m,)
        case _:
            wanted = ()
    if None in wanted:
        raise PreconditionError(f"missing parameter for {args.method}")
    return wanted


def cmd_gen(args: argparse.Namespace) -> int:
    S = construct(args.method, *_gen_params(args), modulus=args.modulus)
    match args.format:
        case "json":
            text = to_json(S)
        case "csv":
            text = to_csv(S, numeric=args.numeric)
        case "pretty":
            text = render_pretty(S)
    _emit(text, args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.input is not None:
        S = from_json(args.input.read_text(encoding="utf-8"))
    else:
        method, *params = args.gen
        if method not in METHODS:
            raise PreconditionError(f"unknown method {method!r}")
        try:
            numbers = [int(x) for x in params]
        except ValueError:
            raise PreconditionError(f"parameters must be integers, got {params}") from None
        S = construct(method, *numbers, modulus=args.modulus)
    options = VerifyOptions(args.mode, args.tol, workers=args.workers)
    report = check_mub_set(S, options)
    _emit(report_to_json(report) if args.format == "json" else render_report(report), args.out)
    return 0 if report.claims_verified else 1


def _render_matrix(M: CycloMatrix) -> list[str]:
    render, _ = amplitude_renderer(M.conductor)
    rows = []
    for i in range(M.shape[0]):
        cells = []
        for j in range(M.shape[1]):
            counts = M.raw[i, j]
            support = np.flatnonzero(counts)
            if len(support) == 0:
                cells.append("0")
            elif len(support) == 1 and counts[support[0]] == 1:
                cells.append(render(int(support[0])) or "1")
            else:
                cells.append(f"{complex(M.entry(i, j)):.4g}")
        rows.append("  [" + " ".join(f"{c:>4}" for c in cells) + "]")
    return rows


def cmd_pauli(args: argparse.Namespace) -> int:
    d = args.d
    match args.action:
        case "table":
            _, header = amplitude_renderer(d)
            print(f"# U_ab = X^a Z^b, d = {d}, {header}")
            for label, M in pauli_table(d):
                print(f"U_{label}:")
                print("\n".join(_render_matrix(M)))
        case "classes":
            for c in commuting_classes(d):
                print(c)
        case "group-check":
            check = group_check(d)
            print(f"|P_{d}| = {check.order} (d^3 = {d**3})")
            for name in ("closure", "associative", "identity", "inverses", "commutator_central"):
                print(f"{name}: {'ok' if getattr(check, name) else 'FAILED'}")
            print(f"lower central series: {list(check.series_lengths)}")
            return 0 if check.ok else 1
    return 0


def _fmt(x: float) -> str:
    return f"{round(x, 12) + 0.0:g}"


def cmd_sim(args: argparse.Namespace) -> int:
    match args.action:
        case "teleport":
            branches = teleport(args.state, args.mode, args.seed)
            for b in branches if isinstance(branches, list) else [branches]:
                bits = "".join(map(str, b.bits))
                print(f"outcome {bits}: probability {b.probability:.6f}, fidelity {b.fidelity:.6f}")
        case "dj":
            print(deutsch_jozsa(args.f))
        case "bell":
            state = bell(args.x, args.y)
            amplitudes = ", ".join(_fmt(a.real) for a in state.amplitudes)
            print(f"beta_{args.x}{args.y} = ({amplitudes})")
            print(f"concurrence {_fmt(concurrence(state))}")
        case "bloch":
            print("(" + ", ".join(_fmt(c) for c in bloch_coords(args.state)) + ")")
            theta, phi = bloch_angles(args.state)
            print(f"theta {_fmt(theta)}, phi {_fmt(phi)}")
        case "measure":
            n = len(args.state).bit_length() - 1
            if len(args.state) != 2**n or n < 1:
                raise PreconditionError("measure needs 2^n amplitudes")
            state = StateVector(args.state, (2,) * n).normalized()
            records = measure(state, args.qubit, args.mode, args.seed)
            for r in records if isinstance(records, list) else [records]:
                outcome = "".join(map(str, r.outcome))
                print(f"outcome {outcome}: probability {r.probability:.6f}")
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    lower, upper = mub_bounds(args.d)
    if lower == upper:
        print(f"N({args.d}) = {upper}")
    else:
        print(f"{lower} ≤ N({args.d}) ≤ {upper}")
    print(f"prime power: {'yes' if is_prime_power(args.d) else 'no'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mubs", description="Exact mutually unbiased bases.")
    parser.add_argument("--version", action="version", version="%(prog)s " + ".".join(map(str, __version__)))
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug (stderr)")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a MUB set")
    gen.add_argument("method", choices=METHODS)
    gen.add_argument("--d", type=int)
    gen.add_argument("--p", type=int)
    gen.add_argument("--m", type=int)
    gen.add_argument("--modulus", type=_int_list, help="GF modulus coefficients, lowest degree first")
    gen.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    gen.add_argument("--numeric", action="store_true", help="csv with re/im columns")
    gen.add_argument("--out", type=Path)
    gen.set_defaults(run=cmd_gen)

    verify = sub.add_parser("verify", help="verify a MUB set exactly or numerically")
    source = verify.add_mutually_exclusive_group(required=True)
    source.add_argument("--in", dest="input", type=Path, help="exported JSON file")
    source.add_argument("--gen", nargs="+", metavar="ARG", help="method followed by its parameters")
    verify.add_argument("--modulus", type=_int_list)
    verify.add_argument("--mode", choices=("exact", "float"), default="exact")
    verify.add_argument("--tol", type=float, default=1e-10)
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--format", choices=("json", "text"), default="json")
    verify.add_argument("--out", type=Path)
    verify.set_defaults(run=cmd_verify)

    pauli = sub.add_parser("pauli", help="Weyl-Pauli tables, commuting classes, group axioms")
    pauli.add_argument("--d", type=int, required=True)
    pauli.add_argument("action", choices=("table", "classes", "group-check"))
    pauli.set_defaults(run=cmd_pauli)

    sim = sub.add_parser("sim", help="qubit simulator demos")
    sim.add_argument("action", choices=("teleport", "dj", "bell", "bloch", "measure"))
    sim.add_argument("--state", type=_amplitudes, default=[1, 0], help="amplitudes, e.g. 0.6,0.8")
    sim.add_argument("--f", type=_int_list, default=[0, 1], help="truth table, e.g. 0,1")
    sim.add_argument("--x", type=int, default=0)
    sim.add_argument("--y", type=int, default=0)
    sim.add_argument("--qubit", type=int, default=0, help="subsystem to measure")
    sim.add_argument("--mode", choices=("enumerate", "sampled"), default="enumerate")
    sim.add_argument("--seed", type=int)
    sim.set_defaults(run=cmd_sim)

    bounds = sub.add_parser("bounds", help="known bounds on the number of MUBs")
    bounds.add_argument("--d", type=int, required=True)
    bounds.set_defaults(run=cmd_bounds)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else (0 if e.code is None else 2)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.run(args)
    except (MubError, OSError) as e:
        print(f"mubs: error: {e}", file=sys.stderr)
        return 2
