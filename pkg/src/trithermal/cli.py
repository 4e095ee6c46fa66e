"""Command-line driver: parameter sweeps, critical-point reports and figure rendering.

Outputs are static files.  Sweeps write one CSV with a `# key=value` metadata
header, a column header row and one row per time-grid point; `plot` renders
any such CSV to a deterministic SVG line chart, one line per data column.
Exit codes: 0 success, 2 invalid input, 3 filesystem failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .analysis import (
    bell_death_time,
    fidelity_critical_time,
    negativity_death_time,
    reservoir_at,
)
from .bell import maximize_violation
from .channel import apply_channel
from .measures import tripartite_negativity
from .states import check_density_matrix, ghz_state, w_state
from .teleport import fidelity_ghz, fidelity_w

QUANTITIES = (
    "negativity",
    "fidelity",
    "svetlichny",
    "wwzb_P1",
    "wwzb_P2",
    "wwzb_P3",
    "wwzb_P4",
    "wwzb_P5",
)

_BELL_NAME = {
    "svetlichny": "S",
    "wwzb_P1": "P1",
    "wwzb_P2": "P2",
    "wwzb_P3": "P3",
    "wwzb_P4": "P4",
    "wwzb_P5": "P5",
}

_CRITICAL_COLUMNS = (
    "tau_S",
    "tau_B_P2",
    "tau_B_P3",
    "tau_B_P4",
    "tau_B_P5",
    "tau_T",
    "tau_E",
    "N_c",
)


class CliError(Exception):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _fmt(value: float) -> str:
    if math.isinf(value):
        return "inf"
    return format(value, ".17g")


def _parse_nbar(text: str) -> float:
    if text.strip().lower() == "inf":
        return math.inf
    try:
        value = float(text)
    except ValueError:
        raise CliError(f"invalid nbar value {text!r}", 2) from None
    if value < 0.0 or math.isnan(value):
        raise CliError(f"nbar must be >= 0 or 'inf', got {text!r}", 2)
    return value


@dataclass(frozen=True)
class SweepSpec:
    """Validated sweep request: branch, temperatures, time grid and quantities."""

    branch: str
    nbar: tuple[float, ...]
    gamma_t_max: float
    steps: int
    quantities: tuple[str, ...] = field(default=("negativity", "fidelity"))

    def __post_init__(self):
        if self.branch not in ("ghz", "w"):
            raise CliError(f"branch must be 'ghz' or 'w', got {self.branch!r}", 2)
        if not self.nbar:
            raise CliError("at least one nbar value is required", 2)
        if not (self.gamma_t_max > 0.0):
            raise CliError(f"tmax must be > 0, got {self.gamma_t_max!r}", 2)
        if self.steps < 2:
            raise CliError(f"steps must be >= 2, got {self.steps}", 2)
        if not self.quantities:
            raise CliError("at least one quantity is required", 2)
        for q in self.quantities:
            if q not in QUANTITIES:
                raise CliError(f"unknown quantity {q!r}; choose from {QUANTITIES}", 2)
        finite = [n for n in self.nbar if not math.isinf(n)]
        if finite and len(finite) != len(self.nbar):
            raise CliError("nbar=inf cannot be mixed with finite nbar in one sweep", 2)

    @property
    def infinite(self) -> bool:
        return math.isinf(self.nbar[0])


def run_sweep(spec: SweepSpec) -> tuple[list[str], np.ndarray]:
    """Evaluate the sweep grid; returns (column names, data of shape (steps, 1+columns))."""
    rho0 = ghz_state() if spec.branch == "ghz" else w_state()
    check_density_matrix(rho0)
    fid = fidelity_ghz if spec.branch == "ghz" else fidelity_w
    axis = "YX" if spec.branch == "ghz" else "ZX"
    grid = np.linspace(0.0, spec.gamma_t_max, spec.steps)

    columns = [
        f"{q}[nbar={_fmt(n) if math.isinf(n) else format(n, 'g')}]"
        for n in spec.nbar
        for q in spec.quantities
    ]

    def row(gamma_t: float) -> list[float]:
        values = [gamma_t]
        for nbar in spec.nbar:
            rho = apply_channel(rho0, reservoir_at(nbar, gamma_t), validate=False)
            for q in spec.quantities:
                if q == "negativity":
                    values.append(tripartite_negativity(rho).tripartite)
                elif q == "fidelity":
                    values.append(fid(rho).f_av)
                else:
                    values.append(maximize_violation(rho, _BELL_NAME[q], axis).violation)
        return values

    with ThreadPoolExecutor(max_workers=4) as pool:
        rows = list(pool.map(row, grid))
    return columns, np.asarray(rows)


def run_critical(branch: str, nbars: tuple[float, ...], tmax: float) -> np.ndarray:
    """Critical times and critical negativity, one row per nbar."""
    if branch not in ("ghz", "w"):
        raise CliError(f"branch must be 'ghz' or 'w', got {branch!r}", 2)
    if not (tmax > 0.0):
        raise CliError(f"tmax must be > 0, got {tmax!r}", 2)
    window = (0.0, tmax)

    def row(nbar: float) -> list[float]:
        taus = [
            bell_death_time(branch, q, nbar, window=window).tau_gamma
            for q in ("S", "P2", "P3", "P4", "P5")
        ]
        fid = fidelity_critical_time(branch, nbar, window=window)
        tau_e = negativity_death_time(branch, nbar, window=window).tau_gamma
        n_c = fid.n_at_tau if fid.exists else math.nan
        return [nbar, *taus, fid.tau_gamma, tau_e, n_c]

    with ThreadPoolExecutor(max_workers=4) as pool:
        rows = list(pool.map(row, nbars))
    return np.asarray(rows)


def _write_csv(path: str, metadata: dict[str, str], header: list[str], rows: np.ndarray) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for key, value in metadata.items():
                fh.write(f"# {key}={value}\n")
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(float(v)) for v in row) + "\n")
    except OSError as exc:
        raise CliError(f"cannot write {path!r}: {exc}", 3) from exc


def read_csv(path: str) -> tuple[dict[str, str], list[str], np.ndarray]:
    """Parse a sweep or critical CSV; 'inf' cells become math.inf."""
    metadata: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[list[float]] = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    body = line[1:].strip()
                    if "=" in body:
                        key, _, value = body.partition("=")
                        metadata[key.strip()] = value.strip()
                    continue
                cells = line.split(",")
                if header is None:
                    header = [c.strip() for c in cells]
                    continue
                try:
                    rows.append([float(c) for c in cells])
                except ValueError:
                    raise CliError(f"non-numeric data row in {path!r}: {line!r}", 2) from None
    except OSError as exc:
        raise CliError(f"cannot read {path!r}: {exc}", 2) from exc
    if header is None or not rows:
        raise CliError(f"{path!r} has no data rows", 2)
    if any(len(r) != len(header) for r in rows):
        raise CliError(f"{path!r} has rows of inconsistent width", 2)
    return metadata, header, np.asarray(rows)


def render_plot(csv_path: str, out_path: str) -> None:
    """Render a CSV to a self-contained SVG, one line per data column.

    Identical inputs produce byte-identical SVGs: the id hash salt is pinned
    and no creation date is embedded.
    """
    metadata, header, data = read_csv(csv_path)
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    # library defaults, not the user's matplotlibrc: output must not depend on
    # the environment
    plt.style.use("default")
    plt.rcParams["svg.hashsalt"] = "trithermal"
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    x = data[:, 0]
    for j, name in enumerate(header[1:], start=1):
        y = np.where(np.isfinite(data[:, j]), data[:, j], np.nan)
        (line,) = ax.plot(x, y, lw=1.4)
        line.set_gid(f"quantity-{name}")
        line.set_label(name)
    ax.set_xlabel(header[0])
    ax.set_ylabel("value")
    title = " ".join(
        f"{k}={metadata[k]}" for k in ("kind", "branch") if k in metadata
    )
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8, frameon=False)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    try:
        fig.savefig(out_path, format="svg", metadata={"Date": None})
    except OSError as exc:
        raise CliError(f"cannot write {out_path!r}: {exc}", 3) from exc
    finally:
        plt.close(fig)


def _base_metadata(kind: str, branch: str, nbars: tuple[float, ...], infinite: bool) -> dict[str, str]:
    return {
        "artifact": "trithermal",
        "version": __version__,
        "kind": kind,
        "branch": branch,
        "nbar": ",".join("inf" if math.isinf(n) else format(n, "g") for n in nbars),
        "time_axis": "nbar*gamma*t" if infinite else "gamma*t",
        "basis": "|abc>, index 4a+2b+c, qubit A most significant",
    }


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = SweepSpec(
        branch=args.branch,
        nbar=tuple(_parse_nbar(n) for n in args.nbar),
        gamma_t_max=args.tmax,
        steps=args.steps,
        quantities=tuple(args.quantity or ("negativity", "fidelity")),
    )
    columns, rows = run_sweep(spec)
    metadata = _base_metadata("sweep", spec.branch, spec.nbar, spec.infinite)
    metadata["tmax"] = format(spec.gamma_t_max, "g")
    metadata["steps"] = str(spec.steps)
    metadata["quantities"] = ",".join(spec.quantities)
    metadata["bell_columns"] = "violation max(|<op>|-threshold, 0) maximized over frame angles"
    time_name = "nbar_gamma_t" if spec.infinite else "gamma_t"
    _write_csv(args.out, metadata, [time_name] + columns, rows)
    if args.plot:
        render_plot(args.out, args.plot)
    return 0


def cmd_critical(args: argparse.Namespace) -> int:
    nbars = tuple(_parse_nbar(n) for n in args.nbar)
    rows = run_critical(args.branch, nbars, args.tmax)
    infinite = any(math.isinf(n) for n in nbars)
    metadata = _base_metadata("critical", args.branch, nbars, infinite)
    metadata["tmax"] = format(args.tmax, "g")
    metadata["note"] = (
        "times in gamma*t units (nbar*gamma*t for nbar=inf rows); "
        "inf marks no crossing inside the search window"
    )
    _write_csv(args.out, metadata, ["nbar", *_CRITICAL_COLUMNS], rows)
    if args.plot:
        render_plot(args.out, args.plot)
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    render_plot(args.csv, args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trithermal",
        description="Three decaying qubits: entanglement, Bell violation and teleportation sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="tabulate quantities on a gamma*t grid")
    sweep.add_argument("--branch", required=True, choices=("ghz", "w"))
    sweep.add_argument("--nbar", action="append", required=True, help="repeatable; accepts 'inf'")
    sweep.add_argument("--tmax", type=float, required=True, help="largest gamma*t")
    sweep.add_argument("--steps", type=int, required=True, help="number of grid points (>= 2)")
    sweep.add_argument("--quantity", action="append", choices=QUANTITIES, help="repeatable")
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.add_argument("--plot", help="also render the CSV to this SVG path")
    sweep.set_defaults(func=cmd_sweep)

    critical = sub.add_parser("critical", help="death times and critical negativities per nbar")
    critical.add_argument("--branch", required=True, choices=("ghz", "w"))
    critical.add_argument("--nbar", action="append", required=True, help="repeatable; accepts 'inf'")
    critical.add_argument("--tmax", type=float, default=20.0, help="search window end (default 20)")
    critical.add_argument("--out", required=True, help="output CSV path")
    critical.add_argument("--plot", help="also render the CSV to this SVG path")
    critical.set_defaults(func=cmd_critical)

    plot = sub.add_parser("plot", help="render a sweep/critical CSV to SVG")
    plot.add_argument("csv", help="input CSV produced by sweep or critical")
    plot.add_argument("--out", required=True, help="output SVG path")
    plot.set_defaults(func=cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
