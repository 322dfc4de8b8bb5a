import argparse
import sys

from satsync.cli.commands import cmd_certify, cmd_reproduce, cmd_simulate, cmd_zone
from satsync.errors import (
    CertificateError,
    ConsistencyError,
    DivergenceError,
    GainError,
    GraphError,
    UnstableMatrixError,
    ValidationError,
)
from satsync.sim import CASES, COUPLINGS

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DIVERGED = 4


def build_parser():
    parser = argparse.ArgumentParser(prog="satsync", description="Scale-free synchronization of saturated double integrators.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zone", help="check a gain pair against the solvable zone")
    p.add_argument("k1", type=float, nargs="?")
    p.add_argument("k2", type=float, nargs="?")
    p.add_argument("--allow-boundary", action="store_true")
    p.add_argument("--grid", action="store_true", help="sample the zone over (0,1)x(0,3) as CSV")
    p.add_argument("--resolution", type=int, default=200)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_zone)

    p = sub.add_parser("certify", help="build the Lyapunov certificate of a config")
    p.add_argument("config", type=str, nargs="?")
    p.add_argument("--case", choices=CASES)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("simulate", help="run one closed-loop simulation")
    p.add_argument("config", type=str, nargs="?")
    p.add_argument("--case", choices=CASES)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--coupling", choices=COUPLINGS, default=None)
    p.add_argument("--record-lyapunov", action="store_true")
    p.add_argument("--summary", action="store_true", help="write TensorBoard scalars under OUT/summary")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reproduce", help="run a reference case over a set of seeds")
    p.add_argument("case", choices=CASES)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--seeds", type=int, nargs="+", default=None)
    p.add_argument("--coupling", choices=COUPLINGS, default=None)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        return args.func(args)
    except DivergenceError as e:
        print(f"satsync: diverged: {e}", file=sys.stderr)
        return EXIT_DIVERGED
    except (GainError, GraphError, CertificateError, UnstableMatrixError, ConsistencyError) as e:
        print(f"satsync: error: {e}", file=sys.stderr)
        return EXIT_REJECTED
    except ValidationError as e:
        print(f"satsync: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"satsync: I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
