"""Command-line front end.

Exit status: 0 success, 1 usage or configuration error, 2 numeric failure,
3 oracle check failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings

from . import figures, oracles
from .config import RunConfig, load_config
from .errors import ConfigError, DegenerateInputError, NumericFailure, TruncationError
from .nlo_phase import phases_quasistatic
from .output import provenance, render_csv, render_json
from .spectra import evaluate, optimal_phase, spectrum_optimal, sweep_table

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_ORACLE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def worker_count() -> int:
    """Worker cap from ``KERRSQ_THREADS``, else the available parallelism."""
    raw = os.environ.get("KERRSQ_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"KERRSQ_THREADS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ConfigError("KERRSQ_THREADS must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration document")
    common.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="PATH=VALUE", help="override one config leaf, e.g. spectra.Omega0=0.5")
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    parser = _Parser(prog="kerrsq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("spectrum", parents=[common], help="S_X and S_Y on a frequency grid")
    sub.add_parser("optimal-phase", parents=[common], help="optimal probe phase and anchor spectra")
    sub.add_parser("sweep", parents=[common], help="spectra across one parameter axis")
    fig = sub.add_parser("figure", parents=[common], help="preset figure family")
    fig.add_argument("number", type=int, help="figure number, 1..7")
    orc = sub.add_parser("oracle", parents=[common], help="run a verification oracle")
    orc.add_argument("kind", choices=("dft", "convolution", "fock"))
    return parser


def _shapes(cfg: RunConfig) -> str:
    return f"pulse1={cfg.pulse1.shape},pulse2={cfg.pulse2.shape}"


def _warn(notes) -> None:
    for note in notes:
        print(f"kerrsq: warning: {note}", file=sys.stderr)


def cmd_spectrum(cfg: RunConfig, fmt: str, workers: int) -> tuple:
    result = evaluate(cfg.spectrum_request())
    _warn(result.warnings)
    header = provenance(cfg.model_dump(), _shapes(cfg), linear_phase=result.linear_phase,
                        warnings=result.warnings)
    if fmt == "json":
        payload = {"Omega": result.Omega.tolist(), "S_X": result.S_X.tolist(),
                   "S_Y": result.S_Y.tolist(), "linear_phase": result.linear_phase}
        return render_json(payload, header), EXIT_OK
    return render_csv(("Omega", "S_X", "S_Y"), result.rows(), header), EXIT_OK


def cmd_optimal_phase(cfg: RunConfig, fmt: str, workers: int) -> tuple:
    request = cfg.spectrum_request()
    phases = phases_quasistatic(request.params, request.pulse1, request.pulse2, request.t,
                                warn=False)
    try:
        phase = optimal_phase(phases, request.anchor, request.kernel)
    except DegenerateInputError as exc:
        raise ConfigError(str(exc)) from exc
    s0_x, s0_y = spectrum_optimal(phases, request.anchor, request.kernel)
    row = (request.anchor, phase, s0_x, s0_y)
    header = provenance(cfg.model_dump(), _shapes(cfg))
    columns = ("Omega0", "linear_phase", "S0_X", "S0_Y")
    if fmt == "json":
        return render_json(dict(zip(columns, row)), header), EXIT_OK
    return render_csv(columns, [row], header), EXIT_OK


def cmd_sweep(cfg: RunConfig, fmt: str, workers: int) -> tuple:
    axis = cfg.sweep.axis
    rows = sweep_table(cfg.spectrum_request(), axis, cfg.sweep_values(), workers)
    header = provenance(cfg.model_dump(), _shapes(cfg))
    columns = (axis, "Omega", "S_X", "S_Y")
    if fmt == "json":
        return render_json({"columns": list(columns), "rows": rows}, header), EXIT_OK
    return render_csv(columns, rows, header), EXIT_OK


def cmd_figure(number: int, fmt: str, workers: int) -> tuple:
    spec = figures.preset(number)
    rows = figures.figure_rows(number, workers)
    header = provenance(spec.as_dict(), "gaussian")
    columns = ("curve_label", "x", "S_X")
    if fmt == "json":
        return render_json({"columns": list(columns), "rows": rows}, header), EXIT_OK
    return render_csv(columns, rows, header), EXIT_OK


def cmd_oracle(kind: str, cfg: RunConfig, fmt: str) -> tuple:
    if kind == "dft":
        rep = oracles.run_dft(**cfg.dft.model_dump())
    elif kind == "convolution":
        rep = oracles.run_convolution(**cfg.convolution.model_dump())
    else:
        rep = oracles.run_fock(**cfg.lattice.model_dump())
    section = {"dft": cfg.dft, "convolution": cfg.convolution, "fock": cfg.lattice}[kind]
    header = provenance({kind: section.model_dump()})
    status = EXIT_OK if rep["pass"] else EXIT_ORACLE
    if fmt == "csv":
        columns = ("name", "observed", "expected", "tolerance", "pass")
        rows = [tuple(c[k] for k in columns) for c in rep["checks"]]
        return render_csv(columns, rows, header), status
    return render_json(rep, header), status


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        workers = worker_count()
        if args.command == "figure":
            figures.preset(args.number)
        fmt = args.format or ("json" if args.command == "oracle" else "csv")
        with warnings.catch_warnings():
            # regime problems are reported as structured metadata instead
            warnings.simplefilter("ignore")
            cfg = load_config(args.config, args.overrides)
            if args.command == "spectrum":
                text, status = cmd_spectrum(cfg, fmt, workers)
            elif args.command == "optimal-phase":
                text, status = cmd_optimal_phase(cfg, fmt, workers)
            elif args.command == "sweep":
                text, status = cmd_sweep(cfg, fmt, workers)
            elif args.command == "figure":
                text, status = cmd_figure(args.number, fmt, workers)
            else:
                text, status = cmd_oracle(args.kind, cfg, fmt)
    except ConfigError as exc:
        print(f"kerrsq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericFailure, TruncationError) as exc:
        print(f"kerrsq: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
