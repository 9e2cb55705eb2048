"""Command-line front end.

Examples::

    machch generate --algorithm ideal-ch --L 2
    machch generate --algorithm ortho-ch --N 4 --avail 0,1,3 --seed 7 --out seq.txt
    machch verify --algorithm ideal-ch --L 3
    machch verify --input seq.txt
    machch simulate --algorithm ortho-ch --N 4 --avail1 0,1,3 --avail2 1,2 --drift 17
    machch sweep --algorithm ortho-ch --N 4 --avail1 0,1,3 --avail2 0,2,3 --seeds 3
    machch ratio --N 1000
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import machseq, orthoch, simulator
from .core import (
    CapabilityError, Certification, ChSequence, MalformedInputError, PreconditionError,
    format_matrix, format_sequence, parse_sequence,
)
from .numtheory import smallest_prime_geq

ALGORITHMS = ("ideal-ch", "ortho-ch", "general-mach")
FORMATS = ("text", "csv", "json")


class UsageError(Exception):
    pass


def parse_channels(text: str) -> list[int]:
    try:
        chans = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated channel list: {text!r}") from None
    if not chans:
        raise argparse.ArgumentTypeError("channel list is empty")
    return sorted(set(chans))


def _size_args(args: argparse.Namespace) -> int:
    """Validate the L-versus-N flag pairing and return the one that applies."""
    if args.algorithm == "ideal-ch":
        if args.N is not None:
            raise UsageError("ideal-ch takes --L, not --N")
        if args.L is None:
            raise UsageError("ideal-ch requires --L")
        return args.L
    if args.L is not None:
        raise UsageError(f"{args.algorithm} takes --N, not --L")
    if args.N is None:
        raise UsageError(f"{args.algorithm} requires --N")
    if args.N < 1:
        raise PreconditionError("N must be >= 1")
    return args.N


def universe(args: argparse.Namespace) -> int:
    size = _size_args(args)
    return size * size if args.algorithm == "ideal-ch" else size


def make_generator(args: argparse.Namespace) -> simulator.Generator:
    size = _size_args(args)
    if args.algorithm == "ideal-ch":
        return simulator.ideal_generator(size)
    if args.algorithm == "general-mach":
        return simulator.general_generator(size)
    return simulator.ortho_generator(size)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands ------------------------------------------------------------------

def cmd_generate(args: argparse.Namespace) -> int:
    n = universe(args)
    avail = args.avail if args.avail is not None else list(range(n))
    gen = make_generator(args)
    seq = gen(avail, args.seed)
    if args.format == "json":
        doc = {"period": seq.period, "N": seq.channel_universe,
               "provenance": seq.provenance, "values": seq.tolist()}
        _emit(json.dumps(doc) + "\n", args.out)
    else:
        _emit(format_sequence(seq), args.out)
    info = f"period={seq.period} N={seq.channel_universe} provenance={seq.provenance}\n"
    (sys.stdout if args.out else sys.stderr).write(info)
    return 0


def _verify_sequence_file(path: str) -> list[Certification]:
    seq = parse_sequence(Path(path).read_text())
    return [machseq.verify_1d_mrd(seq)]


def _verify_construction(args: argparse.Namespace) -> list[Certification]:
    size = _size_args(args)
    if args.algorithm == "ortho-ch":
        p = smallest_prime_geq(size)
        return [orthoch.verify_family(orthoch.build_ortho_family(p))]
    if args.algorithm == "ideal-ch":
        c = machseq.build_mach_matrix(size)
    else:
        c = machseq.build_general_mach_matrix(size)
    seq = machseq.mach_matrix_to_sequence(c)
    return [
        machseq.verify_2d_mrd(c),
        machseq.verify_1d_mrd(seq),
        machseq.verify_aligned_boxes(seq, c.rows),
    ]


def cmd_verify(args: argparse.Namespace) -> int:
    if args.input:
        if args.algorithm is not None:
            raise UsageError("give either --input or --algorithm, not both")
        certs = _verify_sequence_file(args.input)
    else:
        if args.algorithm is None:
            raise UsageError("verify needs --algorithm or --input")
        certs = _verify_construction(args)
    if args.format == "json":
        doc = [{"check": c.check, "pass": c.passed,
                "witness": dict(zip(c.witness_fields, c.witness)) if c.witness else None}
               for c in certs]
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _emit("".join(c.describe() + "\n" for c in certs), args.out)
    return 0 if all(certs) else 1


def cmd_simulate(args: argparse.Namespace) -> int:
    n = universe(args)
    full = list(range(n))
    a1 = args.avail1 if args.avail1 is not None else full
    a2 = args.avail2 if args.avail2 is not None else full
    simulator.common_channels(a1, a2)
    gen = make_generator(args)
    s1, s2 = simulator.user_seeds(args.seed)
    seq1, seq2 = gen(a1, s1), gen(a2, s2)
    rep = simulator.run(seq1, seq2, args.drift, args.horizon, a1, a2, seed=args.seed)
    if args.format == "json":
        _emit(json.dumps(simulator.report_dict(rep), indent=2) + "\n", args.out)
    elif args.format == "csv":
        _emit(simulator.reports_to_csv([rep]), args.out)
    else:
        per = " ".join(f"T_{k}={v if v is not None else 'unmet'}" for k, v in rep.per_channel.items())
        _emit(f"drift={rep.drift} T={rep.ttr} Tsharp={rep.t_sharp} G={rep.G} {per}\n", args.out)
    return 0 if rep.ttr is not None else 1


def _bound(args: argparse.Namespace, seq: ChSequence) -> tuple[str, int]:
    """The guaranteed metric for the algorithm and its bound."""
    if args.algorithm == "ortho-ch":
        return "MTTR", orthoch.mttr_bound(_size_args(args))
    return "MCTTR", seq.period


def cmd_sweep(args: argparse.Namespace) -> int:
    n = universe(args)
    full = list(range(n))
    a1 = args.avail1 if args.avail1 is not None else full
    a2 = args.avail2 if args.avail2 is not None else full
    simulator.common_channels(a1, a2)
    gen = make_generator(args)
    seeds = range(args.seed, args.seed + args.seeds)
    reports = simulator.sweep(gen, gen, a1, a2, seeds, args.horizon)
    mttr, mcttr = simulator.summarize(reports)
    probe = gen(a1, 0)
    metric, bound = _bound(args, probe)
    checked = mttr if metric == "MTTR" else mcttr
    ok = checked.value is not None and checked.value <= bound
    extra = {"algorithm": args.algorithm, "avail1": a1, "avail2": a2, "seeds": list(seeds),
             "MTTR": mttr.value, "MCTTR": mcttr.value}
    if args.trials > 0:
        est = simulator.ettr_estimate(gen, gen, a1, a2, args.trials, args.seed, args.horizon)
        extra["ETTR"] = {"mean": est.mean, "stderr": est.stderr, "trials": est.trials,
                         "drift_model": est.drift_model}
    summary_line = (f"{metric} observed={checked.value} bound={bound} "
                    f"{'PASS' if ok else 'FAIL'} (MTTR={mttr.value} MCTTR={mcttr.value} "
                    f"runs={len(reports)})\n")
    if "ETTR" in extra:
        summary_line += f"ETTR mean={extra['ETTR']['mean']:.4f} stderr={extra['ETTR']['stderr']:.4f}\n"
    if args.format == "json":
        _emit(simulator.summary_document(probe.period, bound, checked, **extra) + "\n", args.out)
    elif args.format == "text":
        _emit(summary_line, args.out)
    else:
        _emit(simulator.reports_to_csv(reports), args.out)
        (sys.stdout if args.out else sys.stderr).write(summary_line)
    return 0 if ok else 1


def cmd_ratio(args: argparse.Namespace) -> int:
    if args.N is None:
        raise UsageError("ratio requires --N")
    rep = machseq.approximation_ratio(args.N)
    if args.format == "json":
        doc = {"N": rep.n_channels, "p": rep.p, "rds_size": rep.rds_size,
               "usable_channels": rep.usable_channels, "period": rep.period,
               "ratio": f"{rep.ratio.numerator}/{rep.ratio.denominator}", "ratio_decimal": float(rep.ratio)}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _emit(f"N={rep.n_channels} p={rep.p} |D|={rep.rds_size} usable={rep.usable_channels} "
              f"period={rep.period} ratio={rep.ratio} ~ {float(rep.ratio):.6f}\n", args.out)
    return 0


def cmd_matrix(args: argparse.Namespace) -> int:
    """Dump the construction's matrix (debugging aid)."""
    size = _size_args(args)
    if args.algorithm == "ideal-ch":
        c = machseq.build_mach_matrix(size)
    elif args.algorithm == "general-mach":
        c = machseq.build_general_mach_matrix(size)
    else:
        avail = args.avail or [1]
        r = next((x for x in avail if x != 0), 1)
        c = orthoch.extended_matrix(smallest_prime_geq(size), r)
    _emit(format_matrix(c.tolist()), args.out)
    return 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algorithm", choices=ALGORITHMS)
    common.add_argument("--L", type=int, help="prime power L (ideal-ch)")
    common.add_argument("--N", type=int, help="number of channels (ortho-ch, general-mach)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=FORMATS, default=None)

    parser = argparse.ArgumentParser(prog="machch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="write a channel-hopping sequence")
    p.add_argument("--avail", type=parse_channels)
    p.set_defaults(func=cmd_generate, default_format="text")

    p = sub.add_parser("verify", parents=[common], help="run the exhaustive certifiers")
    p.add_argument("--input", help="sequence file to check for 1D-MRD")
    p.set_defaults(func=cmd_verify, default_format="text")

    for name, func, fmt in (("simulate", cmd_simulate, "text"), ("sweep", cmd_sweep, "csv")):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--avail1", type=parse_channels)
        p.add_argument("--avail2", type=parse_channels)
        p.add_argument("--horizon", type=int, default=None)
        if name == "simulate":
            p.add_argument("--drift", type=int, default=0)
        else:
            p.add_argument("--seeds", type=int, default=1, help="number of replacement seeds")
            p.add_argument("--trials", type=int, default=0, help="ETTR Monte-Carlo trials (0 = skip)")
        p.set_defaults(func=func, default_format=fmt)

    p = sub.add_parser("ratio", parents=[common], help="approximation ratio of the general construction")
    p.set_defaults(func=cmd_ratio, default_format="text")

    p = sub.add_parser("matrix", parents=[common], help="dump the underlying matrix")
    p.add_argument("--avail", type=parse_channels)
    p.set_defaults(func=cmd_matrix, default_format="text")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except MalformedInputError as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, CapabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
