"""Command-line front end: ``eulerbc {riemann,nozzle,region}``.

Every run writes its artifacts plus a ``manifest.json`` holding the fully
resolved configuration into ``--out``.  A JSON config file (``--config``)
supplies defaults for the chosen subcommand; command-line flags win.

Exit codes: 0 success, 2 not converged, 3 physical failure, 64 usage.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, kernels
from .boundary_sets import (
    Axis,
    burgers_E_closed,
    burgers_E_kruzkov,
    make_grid,
    sample_V_region,
)
from .errors import EulerBCError, NotConverged
from .gas import GasModel, PrimState, sound_speed
from .riemann import sample, solve_exact
from .solver import (
    exact_nozzle_steady,
    mach_profile,
    nozzle_config,
    run_to_steady,
    write_report_json,
    write_snapshot_csv,
)

EXIT_OK = 0
EXIT_NOT_CONVERGED = 2
EXIT_PHYSICAL = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def parse_triple(text: str) -> tuple[float, float, float]:
    try:
        vals = tuple(float(v) for v in str(text).split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected rho,u,p, got {text!r}") from None
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated values, got {text!r}")
    return vals


def parse_range(text: str) -> tuple[float, float, float]:
    try:
        start, stop, step = (float(v) for v in str(text).split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}") from None
    if not (step > 0.0 and stop >= start):
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return start, stop, step


def parse_plane(text: str) -> tuple[str, str]:
    from .boundary_sets import PLANES

    plane = tuple(str(text).split(","))
    if plane not in PLANES:
        raise argparse.ArgumentTypeError(f"plane must be one of {sorted(','.join(p) for p in PLANES)}")
    return plane


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eulerbc", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with defaults for the subcommand")
    parser.add_argument("--out", default="out", help="output directory (default: out)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("riemann", help="solve one Riemann problem exactly")
    p.add_argument("--left", type=parse_triple, help="left state rho,u,p")
    p.add_argument("--right", type=parse_triple, help="right state rho,u,p")
    p.add_argument("--gamma", type=float, default=1.4)
    p.add_argument("--t", type=float, default=0.2, help="time of the sampled profile")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--xrange", type=float, nargs=2, default=(-0.5, 0.5))

    p = sub.add_parser("nozzle", help="divergent nozzle start-up experiment")
    p.add_argument("--cells", type=int, default=80)
    p.add_argument("--cfl", type=float, default=0.9)
    p.add_argument("--inlet-bc", choices=["riemann", "prescribed-flux"], default="riemann")
    p.add_argument("--outlet-bc", choices=["riemann", "extrapolation"], default="riemann")
    p.add_argument("--max-steps", type=int, default=20000)
    p.add_argument("--threshold", type=float, default=1e-8, help="relative residual threshold")
    p.add_argument("--flux", choices=sorted(kernels.SWEEPS), default="osher")
    p.add_argument("--gamma", type=float, default=1.4)
    p.add_argument("--snapshot-every", type=int, default=0, help="write a field CSV every N steps")
    p.add_argument("--compare-exact", action="store_true")

    p = sub.add_parser("region", help="sample admissible boundary sets")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--burgers", action="store_true")
    mode.add_argument("--euler", action="store_true")
    p.add_argument("--w0", help="boundary datum: a number (Burgers) or rho,u,p (Euler)")
    p.add_argument("--range", type=parse_range, help="Burgers: w range start:stop:step")
    p.add_argument("--plane", type=parse_plane, default=("u", "c"))
    p.add_argument("--range1", type=parse_range, help="Euler: first plane coordinate start:stop:step")
    p.add_argument("--range2", type=parse_range, help="Euler: second plane coordinate start:stop:step")
    p.add_argument("--gamma", type=float, default=1.4)
    p.add_argument("--tol", type=float, default=1e-9)
    return parser


def _subparser(parser, name):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[name]
    raise KeyError(name)


def resolve_args(argv) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            config = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config {args.config}: {exc}")
        sp = _subparser(parser, args.command)
        known = {a.dest: a for a in sp._actions if a.dest != "help"}
        unknown = sorted(set(config) - set(known))
        if unknown:
            parser.error(f"unknown config keys for {args.command}: {', '.join(unknown)}")
        defaults = {}
        for key, value in config.items():
            action = known[key]
            if action.type is not None and isinstance(value, str):
                try:
                    value = action.type(value)
                except argparse.ArgumentTypeError as exc:
                    parser.error(f"config key {key}: {exc}")
            elif action.type is not None and isinstance(value, list) and action.nargs is None:
                value = action.type(",".join(str(v) for v in value))
            defaults[key] = value
        sp.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def _jsonable(value):
    if isinstance(value, tuple):
        return list(value)
    return value


def write_manifest(out: Path, args: argparse.Namespace) -> None:
    manifest = {
        "version": __version__,
        "kernel_backend": kernels.BACKEND,
        "command": args.command,
        "config": {k: _jsonable(v) for k, v in sorted(vars(args).items())},
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True))


def cmd_riemann(args, out: Path) -> int:
    if args.left is None or args.right is None:
        raise UsageError("riemann needs --left and --right")
    if args.samples < 2 or args.t <= 0.0:
        raise UsageError("need --samples >= 2 and --t > 0")
    gas = GasModel(args.gamma)
    wl, wr = PrimState(*args.left), PrimState(*args.right)
    sol = solve_exact(wl, wr, gas)
    summary = {
        "p_star": sol.p_star,
        "u_star": sol.u_star,
        "star_left": sol.star_left.as_tuple(),
        "star_right": sol.star_right.as_tuple(),
        "pattern": sol.pattern(),
        "waves": [
            {"family": w.family, "kind": w.kind.value, "left_speed": w.left_speed,
             "right_speed": w.right_speed, "strength": w.strength, "degenerate": w.degenerate}
            for w in sol.waves
        ],
    }
    (out / "riemann.json").write_text(json.dumps(summary, indent=1))
    x = np.linspace(args.xrange[0], args.xrange[1], args.samples)
    prim = np.array([sample(sol, float(xi) / args.t).as_tuple() for xi in x])
    write_snapshot_csv(out / "riemann_profile.csv", x, prim, gas)
    return EXIT_OK


def cmd_nozzle(args, out: Path) -> int:
    if args.cells < 2 or args.max_steps < 1:
        raise UsageError("need --cells >= 2 and --max-steps >= 1")
    try:
        cfg = nozzle_config(args.cells, args.inlet_bc, args.outlet_bc, gas=GasModel(args.gamma),
                            cfl=args.cfl, max_steps=args.max_steps,
                            residual_threshold=args.threshold, flux=args.flux)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    snaps = range(0, args.max_steps + 1, args.snapshot_every) if args.snapshot_every > 0 else ()
    status = EXIT_OK
    try:
        report = run_to_steady(cfg, snapshot_steps=snaps)
    except NotConverged as exc:
        report = exc.report
        status = EXIT_NOT_CONVERGED
    x = cfg.mesh.centers
    prim = report.final.primitive(cfg.gas)
    write_snapshot_csv(out / "final.csv", x, prim, cfg.gas)
    for n, snap in sorted(report.snapshots.items()):
        write_snapshot_csv(out / f"snapshot_{n:06d}.csv", x, snap, cfg.gas)
    extra = {"exit_mach": float(mach_profile(prim, cfg.gas)[-1])}
    if args.compare_exact:
        exact = np.array([exact_nozzle_steady(float(xj), gas=cfg.gas).as_tuple() for xj in x])
        write_snapshot_csv(out / "exact.csv", x, exact, cfg.gas)
        m_num, m_ex = mach_profile(prim, cfg.gas), mach_profile(exact, cfg.gas)
        extra["mach_l1_rel_error"] = float(np.abs(m_num - m_ex).sum() / np.abs(m_ex).sum())
        extra["mach_linf_error"] = float(np.abs(m_num - m_ex).max())
    write_report_json(out / "report.json", report, **extra)
    return status


def cmd_region(args, out: Path) -> int:
    if args.w0 is None:
        raise UsageError("region needs --w0")
    if args.burgers or not args.euler and "," not in str(args.w0):
        if args.range is None:
            raise UsageError("Burgers mode needs --range")
        try:
            w0 = float(args.w0)
        except ValueError:
            raise UsageError(f"Burgers --w0 must be a number, got {args.w0!r}") from None
        ws = np.round(Axis("w", *args.range).values(), 12)
        lines = ["w,closed,kruzkov"]
        for w in ws:
            w = float(w)
            lines.append(f"{w:.17g},{int(burgers_E_closed(w0, w))},{int(burgers_E_kruzkov(w0, w))}")
        (out / "region.csv").write_text("\n".join(lines) + "\n")
        return EXIT_OK
    try:
        w0 = PrimState(*parse_triple(args.w0))
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from None
    gas = GasModel(args.gamma)
    plane = tuple(args.plane)
    # default window: a box around w0 in the chosen plane
    coords = {"u": w0.u, "c": sound_speed(w0, gas), "rho": w0.rho, "p": w0.p}
    r1 = args.range1 or _default_range(plane[0], coords[plane[0]])
    r2 = args.range2 or _default_range(plane[1], coords[plane[1]])
    grid = sample_V_region(w0, make_grid(w0, plane, r1, r2, gas), gas, args.tol)
    grid.write_csv(out / "region.csv")
    return EXIT_OK


def _default_range(name, center):
    if name == "u":
        return (center - 6.0, center + 2.0, 0.1)
    return (center / 4.0, center * 3.0, center / 20.0)


COMMANDS = {"riemann": cmd_riemann, "nozzle": cmd_nozzle, "region": cmd_region}


def main(argv=None) -> int:
    args = resolve_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_manifest(out, args)
    try:
        status = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"eulerbc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EulerBCError, ValueError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        for attr in ("interface", "cell"):
            if getattr(exc, attr, None) is not None:
                err[attr] = getattr(exc, attr)
        text = json.dumps(err)
        (out / "error.json").write_text(text)
        print(text)
        return EXIT_PHYSICAL
    return status


if __name__ == "__main__":
    sys.exit(main())
