"""Command-line front end.

    wellnet simulate NETWORK.json
    wellnet sweep --builder chain3 --param k --grid 0.2 1.4 7 --target n3
    wellnet gate and --inputs on,off
    wellnet conv IMAGE.txt

Exit codes: 0 success, 1 input or validation error, 2 runtime failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import builders
from .exceptions import ValidationError
from .network import SCHEMA_VERSION, load_network, modulate, serialize_network, with_lattice
from .sampler import SamplerConfig, run_simulation
from .sweep import PARAMETERS, SweepPlan, grid, run_sweep, sweep_csv

HIGH = 0.6
LOW = 0.3
CONV_THRESHOLD = 0.5

SWEEP_BUILDERS = {
    "pair": builders.build_pair,
    "chain3": builders.build_chain3,
    "not": builders.build_not,
    "and": builders.build_and,
    "or": builders.build_or,
}


def _common(p):
    p.add_argument("--preset", choices=["desk", "paper"], default="desk")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--therm", type=int, help="thermalization sweeps (overrides preset)")
    p.add_argument("--sweeps", type=int, help="measurement sweeps (overrides preset)")
    p.add_argument("--measure-every", type=int)
    p.add_argument("--nt", type=int, help="number of time slices")
    p.add_argument("--T", type=float, dest="extent", help="Euclidean time extent")
    p.add_argument("-v", "--verbose", action="store_true")


def make_parser():
    parser = argparse.ArgumentParser(prog="wellnet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one network file")
    p.add_argument("network")
    _common(p)

    p = sub.add_parser("sweep", help="sweep k, lambda or eps_inh_k")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--network")
    src.add_argument("--builder", choices=sorted(SWEEP_BUILDERS))
    p.add_argument("--param", choices=PARAMETERS, required=True)
    vals = p.add_mutually_exclusive_group(required=True)
    vals.add_argument("--values", help="comma separated list")
    vals.add_argument("--grid", nargs=3, metavar=("FROM", "TO", "STEPS"))
    p.add_argument("--target", required=True)
    p.add_argument("--jobs", type=int, default=1)
    _common(p)

    p = sub.add_parser("gate", help="run a logic gate")
    p.add_argument("gate")
    p.add_argument("--inputs", default="on,on")
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--export", help="also write the built network JSON here")
    _common(p)

    p = sub.add_parser("conv", help="run the 4x4 vertical-line detector")
    p.add_argument("image")
    p.add_argument("--threshold", type=float, default=CONV_THRESHOLD)
    p.add_argument("--export")
    _common(p)
    return parser


def sampler_from_args(args) -> SamplerConfig:
    overrides = {"rng_seed": args.seed}
    if args.therm is not None:
        overrides["thermalization_sweeps"] = args.therm
    if args.sweeps is not None:
        overrides["measurement_sweeps"] = args.sweeps
    if args.measure_every is not None:
        overrides["measure_every"] = args.measure_every
    return SamplerConfig.from_preset(args.preset, **overrides)


def _lattice_overrides(net, args):
    if args.nt is None and args.extent is None:
        return net
    return with_lattice(net, args.extent, args.nt)


def _write(out_dir: Path, name: str, text: str):
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / name).write_text(text, encoding="utf-8")


def _csv_header(report) -> str:
    m = report.metadata
    return "".join(f"# {k}: {m[k]}\n" for k in ("schema_version", "preset", "seed", "rng"))


def write_report(report, out_dir: Path):
    _write(out_dir, "report.json", report.to_json())
    for r in report.per_neuron:
        _write(out_dir, f"trace_{r.id}.csv", _csv_header(report) + report.trace_csv(r.id))


def _verdict(a):
    if a > HIGH:
        return "On"
    if a < LOW:
        return "Off"
    return "undetermined"


def cmd_simulate(args) -> int:
    net = _lattice_overrides(load_network(args.network), args)
    report = run_simulation(net, sampler_from_args(args))
    write_report(report, Path(args.out_dir))
    for r in report.per_neuron:
        print(f"{r.id:>8s}  activity {r.activity_mean:.4f} +- {r.activity_err:.4f}  "
              f"kinks {r.kink_count_mean:.2f}")
    return 0


def cmd_sweep(args) -> int:
    if args.network:
        base = load_network(args.network)
    else:
        base = SWEEP_BUILDERS[args.builder]()
    base = _lattice_overrides(base, args)
    if args.values:
        try:
            values = [float(v) for v in args.values.split(",")]
        except ValueError:
            raise ValidationError(f"cannot parse --values {args.values!r}") from None
    else:
        try:
            values = grid(float(args.grid[0]), float(args.grid[1]), int(args.grid[2]))
        except ValueError:
            raise ValidationError(f"cannot parse --grid {args.grid}") from None
    sampler = sampler_from_args(args)
    plan = SweepPlan(args.param, values, base, sampler, args.target)
    rows, _ = run_sweep(plan, n_jobs=args.jobs)
    meta = {"schema_version": SCHEMA_VERSION, "preset": sampler.preset, "seed": sampler.rng_seed,
            "parameter": args.param, "target": args.target}
    _write(Path(args.out_dir), "sweep.csv", sweep_csv(rows, meta))
    for r in rows:
        print(f"{args.param}={r.parameter_value:<10.4g} activity {r.activity_mean:.4f} "
              f"+- {r.activity_err:.4f}")
    return 0


def cmd_gate(args) -> int:
    gate = args.gate.lower()
    if gate == "and":
        net = builders.build_and(builders.parse_inputs(args.inputs))
    elif gate == "or":
        net = builders.build_or(builders.parse_inputs(args.inputs))
    elif gate == "not":
        net = builders.build_not()
    else:
        raise ValidationError(f"unknown gate {args.gate!r}; choose and, or, not")
    net = _lattice_overrides(modulate(net, args.k), args)
    if args.export:
        Path(args.export).write_text(serialize_network(net), encoding="utf-8")
    report = run_simulation(net, sampler_from_args(args))
    write_report(report, Path(args.out_dir))
    outputs = ["n1", "n2"] if gate == "not" else ["n3"]
    state = "-" if gate == "not" else args.inputs
    print(f"gate {gate.upper()}  k={args.k:g}  inputs {state}")
    for nid in outputs:
        a = report.neuron(nid).activity_mean
        print(f"  {nid}: activity {a:.4f}  -> {_verdict(a)}")
    return 0


def cmd_conv(args) -> int:
    try:
        text = Path(args.image).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read image: {exc}") from None
    image = builders.parse_image(text)
    net = _lattice_overrides(builders.build_conv(image), args)
    if args.export:
        Path(args.export).write_text(serialize_network(net), encoding="utf-8")
    report = run_simulation(net, sampler_from_args(args))
    write_report(report, Path(args.out_dir))
    a = report.neuron("out").activity_mean
    label = "line" if a > args.threshold else "no-line"
    print(f"output activity {a:.4f}  -> {label}")
    return 0


COMMANDS = {"simulate": cmd_simulate, "sweep": cmd_sweep, "gate": cmd_gate, "conv": cmd_conv}


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ValidationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
