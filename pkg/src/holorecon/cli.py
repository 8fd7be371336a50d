"""``holorecon`` command line: simulate, reconstruct, metrics, sweep, selftest.

Exit codes: 0 success, 1 usage error, 2 runtime or domain error.
"""

import argparse
import sys
from pathlib import Path

from holorecon import io
from holorecon.exceptions import GridParseError, ScenarioParseError
from holorecon.experiments import SweepConfig, run_sweep, summarize
from holorecon.grid import ComplexField, ScalarGrid
from holorecon.metrics import loss_report
from holorecon.propagation import EvanescentPolicy, KernelMode, KernelVariant, reconstruct
from holorecon.selftest import run_checks
from holorecon.simulate import simulate

EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sizes(text):
    try:
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def build_parser():
    parser = _Parser(prog="holorecon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("simulate", help="simulate a hologram from a scenario file")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--image")

    p = sub.add_parser("reconstruct", help="back-propagate a hologram to one depth")
    p.add_argument("--hologram", required=True)
    p.add_argument("--depth", type=float, required=True, help="meters below the scan plane")
    p.add_argument("--mode", choices=[v.value for v in KernelVariant], default="OneWay")
    p.add_argument("--evanescent", choices=[v.value for v in EvanescentPolicy], default="Zero")
    p.add_argument("--no-dc-suppress", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--image")

    p = sub.add_parser("metrics", help="score a reconstructed slice against a truth mask")
    p.add_argument("--truth", required=True)
    p.add_argument("--slice", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sweep", help="aperture-size error sweep")
    p.add_argument("--scenario", required=True)
    p.add_argument("--sizes", type=_sizes, required=True)
    p.add_argument("--depth", type=float, required=True)
    p.add_argument("--mode", choices=[v.value for v in KernelVariant],
                   help="reconstruction kernel (default: the scenario's)")
    p.add_argument("--no-dc-suppress", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--summary", action="store_true")

    p = sub.add_parser("selftest", help="run the embedded invariant checks")
    p.add_argument("--inject-fault", choices=["kernel-sign"], help=argparse.SUPPRESS)
    return parser


def _cmd_simulate(args):
    sc = io.read_scenario(args.scenario)
    hologram = simulate(sc)
    io.write_grid(args.out, hologram)
    if args.image:
        io.write_image(args.image, hologram)
    print(f"wrote {hologram.nx}x{hologram.ny} hologram to {args.out}")
    return 0


def _cmd_reconstruct(args):
    hologram = io.read_grid(args.hologram)
    if isinstance(hologram, ComplexField):
        raise ValueError("reconstruct expects a real hologram grid")
    mode = KernelMode(args.mode, args.evanescent)
    slice_ = reconstruct(hologram, args.depth, mode=mode, dc_suppress=not args.no_dc_suppress)
    io.write_grid(args.out, slice_)
    if args.image:
        io.write_image(args.image, slice_.magnitude())
    print(f"wrote {slice_.nx}x{slice_.ny} slice at z={args.depth} m to {args.out}")
    return 0


def _cmd_metrics(args):
    truth = io.read_grid(args.truth)
    if not isinstance(truth, ScalarGrid):
        raise ValueError("truth must be a real grid")
    slice_ = io.read_grid(args.slice)
    if isinstance(slice_, ScalarGrid):
        slice_ = slice_.to_complex()
    report = loss_report(truth, slice_)
    Path(args.out).write_text(io.format_loss_csv(report), encoding="ascii", newline="\n")
    return 0


def _cmd_sweep(args):
    sc = io.read_scenario(args.scenario)
    mode = KernelMode(args.mode, sc.kernel_mode.evanescent_policy) if args.mode else sc.kernel_mode
    try:
        cfg = SweepConfig(sc, args.sizes, args.depth, mode, not args.no_dc_suppress)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = run_sweep(cfg)
    io.write_sweep_csv(args.out, result)
    if args.summary:
        print(summarize(result))
    return 0


def _cmd_selftest(args):
    results = run_checks(fault=args.inject_fault)
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'} {name} ({detail})")
    return 0 if all(p for _, p, _ in results) else EXIT_RUNTIME


COMMANDS = {
    "simulate": _cmd_simulate,
    "reconstruct": _cmd_reconstruct,
    "metrics": _cmd_metrics,
    "sweep": _cmd_sweep,
    "selftest": _cmd_selftest,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"holorecon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GridParseError, ScenarioParseError, ValueError, OSError) as exc:
        print(f"holorecon {args.command}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
