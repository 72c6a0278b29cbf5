"""Command-line interface: ``gff <subcommand> ...``.

Exit codes: 0 success or verification passed, 1 verified failure (not a
frame, a residual above its threshold), 2 malformed input.
"""
import argparse
import sys

from gff import __version__
from gff.errors import GFFError, NotAFrame
from gff.gfusion import (
    BESSEL_ONLY,
    CoefficientFamily,
    analysis,
    canonical_dual,
    frame_operator,
    optimal_bounds,
    pair_frame_operator,
    reconstruct,
    synthesis,
    verify_system,
)
from gff.io import (
    complex_list,
    dumps,
    encode_complex,
    load_system,
    matrix_to_json,
    random_system,
    read_json,
    save_system,
    write_json,
)
from gff.linalg import operator_norm_2
from gff.tensor import tensor_system, verify_tensor_identities


class _InputError(Exception):
    pass


def _emit(doc, out):
    if out:
        write_json(doc, out)
    else:
        sys.stdout.write(dumps(doc))


def _int_list(text):
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _float_pair(text):
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo,hi, got {text!r}")
    return lo, hi


def cmd_bounds(args):
    b = optimal_bounds(load_system(args.system))
    print(f"lower={b.lower:.12g} upper={b.upper:.12g} kind={b.kind}")
    return 1 if b.kind == BESSEL_ONLY else 0


def cmd_frame_op(args):
    _emit(matrix_to_json(frame_operator(load_system(args.system))), args.output)
    return 0


def cmd_dual(args):
    save_system(canonical_dual(load_system(args.system)), args.output)
    return 0


def cmd_pair(args):
    s = pair_frame_operator(load_system(args.a), load_system(args.b))
    _emit({"operator": matrix_to_json(s), "norm": operator_norm_2(s)}, args.output)
    return 0


def cmd_tensor(args):
    ts = tensor_system(load_system(args.left), load_system(args.right))
    save_system(ts.product, args.output)
    return 0


def _report(report, args):
    for line in report.summary_lines():
        print(line)
    if args.json:
        write_json(report.to_json_dict(__version__), args.json)
    return 0 if report.passed else 1


def cmd_verify(args):
    sys_ = load_system(args.system)
    return _report(verify_system(sys_, trials=args.trials, tol=args.tol, seed=args.seed), args)


def cmd_verify_tensor(args):
    if (args.lp is None) != (args.rp is None):
        raise _InputError("--lp and --rp must be given together")
    ts = tensor_system(load_system(args.left), load_system(args.right))
    primed = None
    if args.lp is not None:
        primed = tensor_system(load_system(args.lp), load_system(args.rp))
    is_frame = optimal_bounds(ts.product).kind != BESSEL_ONLY
    report = verify_tensor_identities(
        ts, trials=args.trials, tol=args.tol, seed=args.seed, primed=primed, check_dual=is_frame
    )
    return _report(report, args)


def cmd_random(args):
    sys_ = random_system(
        args.seed, args.dim, args.components, args.local_dims,
        weight_range=args.weights, ranks=args.ranks,
    )
    save_system(sys_, args.output)
    return 0


def cmd_apply(args):
    sys_ = load_system(args.system)
    raw = read_json(args.vector)
    if args.op == "synthesis":
        if not isinstance(raw, list):
            raise _InputError("synthesis expects an array of coefficient blocks")
        blocks = [complex_list(b, f"blocks[{k}]") for k, b in enumerate(raw)]
        _emit({"vector": encode_complex(synthesis(sys_, CoefficientFamily(tuple(blocks))))}, args.output)
        return 0
    f = complex_list(raw, "vector")
    if args.op == "analysis":
        doc = {"blocks": [encode_complex(b) for b in analysis(sys_, f).blocks]}
    elif args.op == "frame-op":
        doc = {"vector": encode_complex(frame_operator(sys_) @ f)}
    else:
        f_rec, err = reconstruct(sys_, f)
        doc = {"vector": encode_complex(f_rec), "rel_err": err}
    _emit(doc, args.output)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="gff", description="g-fusion frames and their tensor products")
    p.add_argument("--version", action="version", version=f"gff {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bounds", help="optimal frame bounds and classification")
    s.add_argument("system")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("frame-op", help="dense frame operator")
    s.add_argument("system")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_frame_op)

    s = sub.add_parser("dual", help="write the canonical dual system")
    s.add_argument("system")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("pair", help="frame operator of a pair of systems")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("tensor", help="write the tensor product system")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_tensor)

    def verify_opts(s):
        s.add_argument("--tol", type=float, default=1e-8)
        s.add_argument("--trials", type=int, default=20)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--json", metavar="REPORT")

    s = sub.add_parser("verify", help="single-system identity checks")
    s.add_argument("system")
    verify_opts(s)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("verify-tensor", help="tensor-product identity checks")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--lp", help="primed left system")
    s.add_argument("--rp", help="primed right system")
    verify_opts(s)
    s.set_defaults(func=cmd_verify_tensor)

    s = sub.add_parser("random", help="write a seeded random system")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--components", type=int, required=True)
    s.add_argument("--local-dims", type=_int_list, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--weights", type=_float_pair, default=(0.5, 2.0), metavar="LO,HI")
    s.add_argument("--ranks", type=_int_list, default=None)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("apply", help="apply an operator of the system to a vector")
    s.add_argument("system")
    s.add_argument("--vector", required=True)
    s.add_argument("--op", choices=["analysis", "synthesis", "frame-op", "reconstruct"],
                   default="frame-op")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_apply)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; keep --help/--version at 0
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NotAFrame as exc:
        print(f"NotAFrame: {exc}", file=sys.stderr)
        return 1
    except (GFFError, _InputError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"IoError: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
