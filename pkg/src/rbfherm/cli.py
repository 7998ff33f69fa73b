"""Command-line front end for the experiment runners.

Exit codes: 0 on success, 1 for input problems (bad flags, unreadable or
malformed files, invalid config values), 2 for unexpected internal errors.
Settings resolve in three layers: built-in experiment defaults, then a TOML
config file (``--config``), then command-line flags.
"""

import argparse
import dataclasses
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .experiments import (
    CSV_COLUMNS,
    ExperimentConfig,
    default_config,
    run_experiment,
    write_records,
)
from .nodes import NodeSet, cost_node_set, disk_node_set
from .plotting import PlotError, emit_plot

_SUBCOMMANDS = {
    "sweep-eps-n": "eps_n_sweep",
    "poly-compare": "poly_compare",
    "method-compare": "method_compare",
    "radius-scaling": "radius_scaling",
    "cost-study": "cost_study",
}


class CLIError(Exception):
    """Bad command line or config input."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; those are input errors
    # under this tool's contract, so surface them as CLIError instead.
    def error(self, message):
        raise CLIError(f"{self.prog}: {message}")


def _float_list(text):
    return tuple(float(part) for part in text.split(","))


def _int_list(text):
    return tuple(int(part) for part in text.split(","))


def _poly_list(text):
    return tuple(
        None if part.strip().lower() == "none" else int(part)
        for part in text.split(",")
    )


def build_parser():
    parser = _Parser(
        prog="rbfherm",
        description="Run RBF interpolation accuracy experiments.",
        epilog="CSV columns: " + ",".join(CSV_COLUMNS),
    )
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="TOML config file")
    common.add_argument("--seed", type=int, help="node layout seed")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--function", choices=("trig", "camelback"))
    common.add_argument("--kernel", choices=("ga", "mq", "imq", "iq", "phs"))
    common.add_argument(
        "--eps", type=_float_list, metavar="LIST",
        help="comma-separated shape parameters",
    )
    common.add_argument(
        "--n", type=_int_list, metavar="LIST",
        help="comma-separated monomial degrees",
    )
    common.add_argument(
        "--poly", type=_poly_list, metavar="LIST",
        help="comma-separated augmentation degrees; 'none' disables",
    )
    common.add_argument(
        "--nodes", metavar="PATH", help="load the node layout from a CSV"
    )
    common.add_argument(
        "--plot", action="store_true", help="also render the CSV as SVG"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, experiment in _SUBCOMMANDS.items():
        sub.add_parser(
            name,
            parents=[common],
            help=f"run the {experiment} experiment",
            epilog="CSV columns: " + ",".join(CSV_COLUMNS),
        )
    gen = sub.add_parser("gen-nodes", help="generate and save a node layout")
    gen.add_argument("--kind", choices=("disk", "cost"), default="disk")
    gen.add_argument("--count", type=int, help="number of data nodes")
    gen.add_argument("--eval-count", type=int, help="number of evaluation nodes")
    gen.add_argument("--radius", type=float, default=None)
    gen.add_argument("--seed", type=int, default=1)
    gen.add_argument("--out", metavar="DIR", default=".")
    plot = sub.add_parser("plot", help="render a runner CSV as SVG")
    plot.add_argument("csv", metavar="CSV")
    plot.add_argument(
        "--out", metavar="PATH",
        help="output SVG file or directory (default: CSV path with .svg)",
    )
    return parser


_CONFIG_KEYS = {f.name for f in dataclasses.fields(ExperimentConfig)} - {"experiment"}
_GRID_KEYS = ("eps_grid", "n_grid", "poly_degrees", "radius_grid")


def load_config_file(path):
    """Read override values from a TOML file; keys mirror the config fields.

    Grid keys accept a scalar or an array; ``poly_degrees`` entries may be
    the string "none" for an unaugmented fit.
    """
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise ValueError(
            f"{path}: unknown config keys {unknown}; expected "
            f"{sorted(_CONFIG_KEYS)}"
        )
    for key in _GRID_KEYS:
        if key in data and not isinstance(data[key], list):
            data[key] = [data[key]]
    if "poly_degrees" in data:
        data["poly_degrees"] = [
            None if (isinstance(l, str) and l.lower() == "none") else l
            for l in data["poly_degrees"]
        ]
    return data


def _flag_overrides(args):
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out is not None:
        overrides["out_dir"] = args.out
    if args.function is not None:
        overrides["function"] = args.function
    if args.kernel is not None:
        overrides["kernel"] = args.kernel
    if args.eps is not None:
        overrides["eps_grid"] = args.eps
    if args.n is not None:
        overrides["n_grid"] = args.n
    if args.poly is not None:
        overrides["poly_degrees"] = args.poly
    return overrides


def _run_experiment_command(args):
    experiment = _SUBCOMMANDS[args.command]
    overrides = load_config_file(args.config) if args.config else {}
    overrides.update(_flag_overrides(args))
    config = default_config(experiment, **overrides)
    node_set = NodeSet.load(args.nodes) if args.nodes else None
    records = run_experiment(config, node_set=node_set)
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{experiment}.csv"
    write_records(
        csv_path,
        records,
        metadata={
            "experiment": experiment,
            "function": config.function,
            "kernel": config.kernel,
            "seed": config.seed,
        },
    )
    print(csv_path)
    if args.plot:
        svg_path = csv_path.with_suffix(".svg")
        emit_plot(csv_path, svg_path)
        print(svg_path)
    return 0


def _gen_nodes_command(args):
    if args.kind == "disk":
        node_set = disk_node_set(
            n_data=args.count if args.count is not None else 56,
            n_eval=args.eval_count if args.eval_count is not None else 60,
            radius=args.radius if args.radius is not None else 0.1,
            seed=args.seed,
        )
    else:
        node_set = cost_node_set(
            n_data=args.count if args.count is not None else 104,
            n_eval=args.eval_count if args.eval_count is not None else 249,
            radius=args.radius if args.radius is not None else 1.0,
            seed=args.seed,
        )
    if not node_set.converged:
        print("warning: node energy descent hit its iteration cap", file=sys.stderr)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{args.kind}_nodes.csv"
    node_set.save(path)
    print(path)
    return 0


def _plot_command(args):
    csv_path = Path(args.csv)
    if args.out is None:
        out_path = csv_path.with_suffix(".svg")
    else:
        out = Path(args.out)
        out_path = out / (csv_path.stem + ".svg") if out.is_dir() else out
    emit_plot(csv_path, out_path)
    print(out_path)
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command in _SUBCOMMANDS:
            return _run_experiment_command(args)
        if args.command == "gen-nodes":
            return _gen_nodes_command(args)
        return _plot_command(args)
    except (CLIError, PlotError, ValueError, OSError) as exc:
        print(f"rbfherm: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"rbfherm: internal error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
