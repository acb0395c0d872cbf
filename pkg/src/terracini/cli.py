"""Batch command line for the locus computations.

Subcommands: membership, ideal, dimension, range, verify.  Varieties
come from TOML files, point configurations from JSON files, ideals
go out as canonical polynomial text, dimension reports as JSON.  Exit
status 0 on success, 1 when a mathematical precondition fails
(inadmissible r, singular point, degenerate variety, failing suite),
2 on input, parse or file errors.
"""

import argparse
import json
import sys
import time

from .errors import InputError, MathError
from .fields import field_from_tag
from .linalg import ScalarMatrix
from .loci import (
    admissible_r_range,
    load_points,
    locus_dimension,
    membership_ideal,
    membership_param,
    stacked_jacobian,
    terracini_ideal,
)
from .multipoly import polynomial_to_text
from .suites import SUITE_NAMES, run_suite
from .varieties import IdealVariety, ParamMap, load_variety


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="terracini",
        description="Membership, defining ideals and dimensions of Terracini loci.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, points=False, rank=False, groebner=False, out=False):
        p.add_argument("--variety", required=True, metavar="PATH",
                       help="TOML variety file")
        if points:
            p.add_argument("--points", required=True, metavar="PATH",
                           help="JSON point configuration")
        if rank:
            p.add_argument("--r", type=int, required=True,
                           help="number of points r")
        p.add_argument("--field", default=None, metavar="q|fp:<prime>",
                       help="coefficient field (membership: q; ideals: fp:32003)")
        p.add_argument("--seed", type=int, default=0, metavar="U64",
                       help="seed for capped minor sampling")
        if groebner:
            p.add_argument("--max-minors", type=int, default=None, metavar="N",
                           help="cap the minor enumeration (stamps the run capped)")
            p.add_argument("--order", default="degrevlex",
                           choices=["degrevlex"],
                           help="monomial order for the ideal computation")
        if out:
            p.add_argument("--out", default=None, metavar="PATH",
                           help="output file (default: stdout)")

    p = sub.add_parser("membership", help="decide whether a configuration is in the locus")
    common(p, points=True)
    p.add_argument("--r", type=int, default=None,
                   help="expected number of points (checked against the file)")

    p = sub.add_parser("ideal", help="write defining equations of the locus")
    common(p, rank=True, groebner=True, out=True)

    p = sub.add_parser("dimension", help="compute the locus dimension report")
    common(p, rank=True, groebner=True, out=True)

    p = sub.add_parser("range", help="print the admissible range of r")
    common(p)

    p = sub.add_parser("verify", help="replay a named classification suite")
    p.add_argument("--suite", default=None, choices=list(SUITE_NAMES),
                   help="suite name (default: all suites)")
    p.add_argument("--seed", type=int, default=0, metavar="U64")
    p.add_argument("--max-minors", type=int, default=None, metavar="N",
                   help="cap minor enumerations (capped runs cannot certify emptiness)")
    p.add_argument("--parallel", action="store_true",
                   help="run independent suites in separate processes")
    return parser


def _membership_field(args):
    tag = args.field or "q"
    return field_from_tag(tag)


def _groebner_field(args):
    tag = args.field or "fp:32003"
    return field_from_tag(tag)


def cmd_membership(args):
    variety = load_variety(args.variety)
    config = load_points(args.points)
    if args.r is not None and args.r != config.r:
        raise InputError(
            "--r %d does not match the %d points in %s"
            % (args.r, config.r, args.points)
        )
    field = _membership_field(args)

    # ground-truth ranks live over q; both routes validate the points and
    # smoothness through the same stacked Jacobian
    if isinstance(variety, ParamMap):
        member = membership_param(variety, config)
        threshold = min(config.r * variety.ell, variety.target_dim + 1)
    elif isinstance(variety, IdealVariety):
        member = membership_ideal(variety, config)
        threshold = min(config.r * variety.ell, variety.n + 1)
    else:  # pragma: no cover - load_variety only builds the two kinds
        raise InputError("unsupported variety object %r" % (variety,))

    mat = stacked_jacobian(variety, config)
    if field.tag == "q":
        rank = mat.rank()
    else:
        rows = [[field.from_fraction(x) for x in row] for row in mat.rows]
        rank = ScalarMatrix(field, rows).rank()
        member = rank < threshold
        print(
            "note: rank over %s is probabilistic (positive characteristic"
            " can only drop the rank); q is the ground truth" % field.tag,
            file=sys.stderr,
        )

    print("MEMBER" if member else "NON-MEMBER")
    print(
        "stacked Jacobian rank %d over %s; expected rank min(%d*%d, %d) = %d"
        % (rank, field.tag, config.r, variety.ell, mat.ncols, threshold)
    )
    return 0


def _ideal_text(T):
    lines = [
        "field: %s" % T.ring.field.tag,
        "blocks: %s"
        % " ".join("%s:%d" % (name, size) for name, size in T.ring.layout.blocks),
        "order: degrevlex",
    ]
    if T.is_unit():
        lines.append("1")
    else:
        # the reduced basis is canonical for the order, so ideal files
        # written from equal jobs are byte-identical
        lines.extend(polynomial_to_text(g) for g in T.groebner_basis())
    return "\n".join(lines) + "\n"


def _write_or_print(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _cap_warning(T):
    if T.capped:
        print(
            "warning: minor enumeration was capped; the ideal can be too"
            " small and emptiness is not certified",
            file=sys.stderr,
        )


def cmd_ideal(args):
    variety = load_variety(args.variety)
    field = _groebner_field(args)
    T = terracini_ideal(
        variety, args.r, field=field, cap=args.max_minors, seed=args.seed
    )
    _cap_warning(T)
    _write_or_print(_ideal_text(T), args.out)
    return 0


def cmd_dimension(args):
    variety = load_variety(args.variety)
    field = _groebner_field(args)
    t0 = time.monotonic()
    T = terracini_ideal(
        variety, args.r, field=field, cap=args.max_minors, seed=args.seed
    )
    _cap_warning(T)
    generators_path = None
    if args.out is not None:
        generators_path = args.out + ".gens"
        _write_or_print(_ideal_text(T), generators_path)
    report = locus_dimension(
        T,
        wall_ms=int((time.monotonic() - t0) * 1000),
        generators_path=generators_path,
    )
    _write_or_print(report.to_json(), args.out)
    if args.out is not None:
        print("report: %s" % args.out, file=sys.stderr)
        print("generators: %s" % generators_path, file=sys.stderr)
    return 0


def cmd_range(args):
    variety = load_variety(args.variety)
    lo, hi = admissible_r_range(variety)
    if hi < lo:
        print("admissible r range: empty (ambient space too small)")
    else:
        print("admissible r range: [%d, %d]" % (lo, hi))
    return 0


def _print_suite(name, results):
    for res in results:
        print("[%s] %s" % (name, res.message()))
    good = sum(1 for res in results if res.passed)
    print("suite %s: %d/%d checks passed" % (name, good, len(results)))
    return good == len(results)


def cmd_verify(args):
    names = [args.suite] if args.suite else list(SUITE_NAMES)
    all_good = True
    if args.parallel and len(names) > 1:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(
            max_workers=len(names)
        ) as pool:
            futures = [
                pool.submit(run_suite, name, seed=args.seed, cap=args.max_minors)
                for name in names
            ]
            for name, fut in zip(names, futures):
                all_good = _print_suite(name, fut.result()) and all_good
    else:
        for name in names:
            results = run_suite(name, seed=args.seed, cap=args.max_minors)
            all_good = _print_suite(name, results) and all_good
    if not all_good:
        print("verification failed", file=sys.stderr)
        return 1
    return 0


_COMMANDS = {
    "membership": cmd_membership,
    "ideal": cmd_ideal,
    "dimension": cmd_dimension,
    "range": cmd_range,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except MathError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
