"""Command-line entry point: ``flatpoly <subcommand> [flags]``.

Exit codes: 0 success, 2 invalid input, 1 internal error. Without ``--out``
the report goes to stdout; with ``--out DIR`` it is written to
``DIR/<subcommand>/<timestamp>-<confighash>/`` next to a manifest and, for
trend tables, one plot-data file per series.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

from . import concentration, constants, families, harness, norms, reports, search
from .polycore import BinarySequence, SignSequence, dirichlet, from_bits, from_signs, split_littlewood, to_record

SUBCOMMANDS = ("gen", "norm", "flat", "split", "dirichlet", "constants", "mz", "conc", "search", "harness")
HARNESS_MODES = ("dirichlet", "density", "witness", "zero-density", "tail", "l4")
CONC_MODES = ("mass", "witness", "search")


class UsageError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--signs", help="sign string, e.g. '+-++'")
    common.add_argument("--bits", help="bit string, e.g. '0110'")
    common.add_argument("--family", choices=families.FAMILY_KINDS + ("all_plus",))
    common.add_argument("--q", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--prime", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--alpha", type=float)
    common.add_argument("--p", type=float)
    common.add_argument("--c", type=float, default=1.0)
    common.add_argument("--delta", type=float)
    common.add_argument("--grid", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="results directory")
    common.add_argument("--n", type=_int_list, help="comma-separated sizes")
    common.add_argument("--density", type=float)
    common.add_argument("--budget", type=int)
    common.add_argument("--schedule", help="t0:cool:steps")

    parser = argparse.ArgumentParser(prog="flatpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "harness":
            sp.add_argument("mode", choices=HARNESS_MODES)
        elif name == "conc":
            sp.add_argument("mode", choices=CONC_MODES)
        elif name == "constants":
            sp.add_argument("--delta-p", type=float, dest="delta_p", default=4.0)
    return parser


# input helpers ------------------------------------------------------------


def _need(args, name: str, constraint: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required ({constraint})")
    return value


def _sequence(args) -> SignSequence | BinarySequence:
    if args.signs is not None:
        return SignSequence.parse(args.signs)
    if args.bits is not None:
        return BinarySequence.parse(args.bits)
    if args.family is not None:
        return _family(args).build()
    raise UsageError("one of --signs, --bits or --family is required")


def _family(args) -> families.FamilySpec:
    kind = args.family
    if kind == "all_plus":
        kind = "dirichlet"
    randomized = kind in ("random_sign", "binary_random")
    return families.FamilySpec(
        kind=kind,
        q=args.q,
        k=args.k,
        p=args.prime,
        seed=(args.seed if args.seed is not None else 0) if randomized else None,
        density=args.density,
        text=args.signs or args.bits,
    )


def _normalizing_scale(seq) -> float:
    """1/sqrt(q) for signs, 1/sqrt(|S|) for bits: unit L^2 norm."""
    weight = len(seq) if isinstance(seq, SignSequence) else seq.weight
    if weight == 0:
        raise UsageError("the all-zero bit string has no normalization")
    return 1 / math.sqrt(weight)


def _poly(seq):
    return from_signs(seq) if isinstance(seq, SignSequence) else from_bits(seq)


def _grid(args):
    return "auto" if args.grid is None else args.grid


# subcommands --------------------------------------------------------------


def cmd_gen(args):
    spec = _family(args) if args.family else None
    seq = spec.build() if spec else _sequence(args)
    return {"family": spec.to_dict() if spec else None, "polynomial": to_record(seq), "string": str(seq)}


def cmd_norm(args):
    seq = _sequence(args)
    scale = _normalizing_scale(seq)
    if args.p is not None and args.alpha is None:
        if not float(args.p).is_integer() or args.p < 1:
            raise UsageError("--p must be a positive integer for the exact even norm")
        return norms.exact_even_norm(_poly(seq), int(args.p), scale)
    alpha = _need(args, "alpha", "alpha > 0")
    return norms.grid_norm(_poly(seq), norms.NormQuery(alpha, scale, _grid(args)))


def cmd_flat(args):
    seq = _sequence(args)
    alpha = _need(args, "alpha", "alpha > 0")
    return norms.flatness_deviation(_poly(seq), args.c, norms.NormQuery(alpha, _normalizing_scale(seq), _grid(args)))


def cmd_split(args):
    if args.signs is None and args.family is None:
        raise UsageError("--signs (or --family) is required (a sign sequence)")
    seq = _sequence(args)
    if not isinstance(seq, SignSequence):
        raise UsageError("split needs a sign sequence")
    eta, eta_prime = split_littlewood(seq)
    D = dirichlet(len(seq))
    P = from_signs(seq)
    return {
        "signs": str(seq),
        "eta": to_record(eta),
        "eta_prime": to_record(eta_prime),
        "identity_2Q_minus_D": (2 * from_bits(eta) - D) == P,
        "identity_D_minus_2Qprime": (D - 2 * from_bits(eta_prime)) == P,
    }


def cmd_dirichlet(args):
    Ns = args.n or ([args.q] if args.q else None)
    if not Ns:
        raise UsageError("--n (or --q) is required (positive sizes)")
    out = []
    for N in Ns:
        rec = {"N": N, "polynomial": to_record(dirichlet(N))}
        if args.p is not None:
            rec["norm_power_over_N"] = harness.dirichlet_power_norm(N, args.p)[0]
        out.append(rec)
    return out


def cmd_constants(args):
    alpha = args.alpha if args.alpha is not None else 4.0
    half = int(args.p) if args.p is not None else 2
    return constants.constants_report(
        p=args.delta_p, alpha=alpha, two_k=2 * half, tol=args.tol if args.tol else constants.DEFAULT_TOL
    )


def cmd_mz(args):
    seq = _sequence(args)
    alpha = _need(args, "alpha", "alpha >= 1")
    return norms.mz_check(_poly(seq), alpha, _normalizing_scale(seq))


def cmd_conc(args):
    alpha = args.alpha if args.alpha is not None else (args.p if args.p is not None else 4.0)
    delta = _need(args, "delta", "arc half-width in turns, in (0, 1/2]")
    if args.mode == "mass":
        arc = concentration.Arc.centered(delta)
        seq = _sequence(args)
        return concentration.arc_mass(_poly(seq), alpha, arc, args.grid, polynomial_id=str(seq)[:64])
    M = args.k
    arc = concentration.Arc.around([1 / M], delta) if M else concentration.Arc.centered(delta)
    if args.mode == "witness":
        M = _need(args, "k", "dilation M >= 2")
        N = args.n[0] if args.n else 4096
        return concentration.dilated_dirichlet_witness(M, N, arc, alpha, args.grid)
    return concentration.concentration_search(
        arc, alpha, args.budget or 64, args.seed or 0, args.grid or (1 << 15)
    )


def cmd_search(args):
    q = _need(args, "q", "sequence length")
    alpha = args.alpha if args.alpha is not None else 4.0
    if args.schedule:
        return search.anneal(q, alpha, args.c, args.schedule, args.seed or 0, m=args.grid)
    return search.flattest_exhaustive(q, alpha, args.c, m=args.grid)


def cmd_harness(args):
    mode = args.mode
    if mode == "dirichlet":
        p = _need(args, "p", "p > 1")
        Ns = _need(args, "n", "increasing sizes")
        return harness.dirichlet_asymptotics(p, Ns, args.tol or harness.HARNESS_TOL)
    if mode == "density":
        alpha = _need(args, "alpha", "alpha > 2")
        d = _need(args, "density", "density in (0, 1]")
        qs = _need(args, "n", "sizes q")
        return harness.density_growth(d, alpha, qs, args.budget or 20, args.seed or 0)
    if mode == "witness":
        fam = args.family or "rudin_shapiro"
        p = _need(args, "p", "integer p >= 2")
        if not float(p).is_integer():
            raise UsageError("--p must be an integer >= 2")
        qs = _need(args, "n", "sizes q")
        return harness.flatness_witness(fam, int(p), args.delta or 0.05, qs, args.seed or 0)
    if mode == "zero-density":
        alpha = _need(args, "alpha", "alpha > 2")
        seq = _sequence(args)
        if isinstance(seq, SignSequence):
            seq = split_littlewood(seq)[0]
        return harness.zero_density_bound(seq, alpha, args.c)
    if mode == "tail":
        qs = args.n or [2**k for k in range(4, 13)]
        alphas = (args.alpha,) if args.alpha else (4, 6)
        deltas = (args.delta,) if args.delta else (0.05, 0.1, 0.2)
        return harness.tail_bound_sweep(qs, alphas, deltas)
    q = _need(args, "q", "sequence length")
    law = harness.littlewood_l4_mean(q, args.budget or 500, args.seed or 0)
    return {**reports.jsonable(law), "z": law.z}


COMMANDS = {
    "gen": cmd_gen,
    "norm": cmd_norm,
    "flat": cmd_flat,
    "split": cmd_split,
    "dirichlet": cmd_dirichlet,
    "constants": cmd_constants,
    "mz": cmd_mz,
    "conc": cmd_conc,
    "search": cmd_search,
    "harness": cmd_harness,
}


# output -------------------------------------------------------------------


def _table_of(report):
    if isinstance(report, harness.TrendTable):
        return report
    if isinstance(report, harness.WitnessPanel):
        return report.to_table()
    return None


def render(report, fmt: str) -> str:
    if fmt == "json":
        return reports.dumps(report)
    table = _table_of(report)
    if table is not None:
        return table.to_csv()
    if isinstance(report, search.SearchResult):
        return search.results_to_csv([report])
    raise UsageError("--format csv is available for harness tables and search results only")


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if v is not None and k != "out"}


def write_run(args, report, text: str) -> Path:
    config = _config(args)
    man = reports.manifest(args.subcommand, config)
    stamp = time.strftime("%Y%m%dT%H%M%S", time.gmtime())
    run_dir = Path(args.out) / args.subcommand / f"{stamp}-{man['config_hash']}"
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / f"report.{args.format}").write_text(text)
    (run_dir / "manifest.json").write_text(reports.dumps(man))
    table = _table_of(report)
    if table is not None:
        reports.emit_plotdata(table, table.metrics, run_dir / "plot", provenance=f"flatpoly {args.subcommand}")
    return run_dir


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = COMMANDS[args.subcommand](args)
        text = render(report, args.format)
    except (UsageError, ValueError) as exc:
        print(f"flatpoly {args.subcommand}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"flatpoly {args.subcommand}: internal error: {exc!r}", file=sys.stderr)
        return 1
    if args.out:
        run_dir = write_run(args, report, text)
        print(run_dir)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
