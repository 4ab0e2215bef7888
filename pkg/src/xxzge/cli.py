"""Command line front end.

Exit codes: 0 success, 1 usage or invalid input, 2 I/O failure,
3 a requested transition feature was not found.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoCrossingError, NoJumpError
from .ge import SweepOptions, max_overlap
from .scan import (
    COLUMNS,
    DecayModel,
    apply_decay,
    beta_scan,
    crossing_from_table,
    default_grid,
    detect_jump,
    field_for,
    gamma_scan,
    rescale,
)
from .spin import build_xxz, ground_state

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NOT_FOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n_sites: int = 4
    gamma_min: float = -2.0
    gamma_max: float = 3.0
    gamma_step: float = 0.05
    gamma: float | None = None
    beta_steps: int = 64
    decay2: float | None = None
    decay3: float | None = None
    seed: int = 0
    output_path: str = "-"
    format: str = "csv"

    def sweep_options(self) -> SweepOptions:
        return SweepOptions(rng_seed=self.seed)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    return f"{x:.12g}"


def fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


@contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_rows(cfg: RunConfig, header, rows) -> None:
    delim = "\t" if cfg.format == "tsv" else ","
    with _open_out(cfg.output_path) as fh:
        w = csv.writer(fh, delimiter=delim, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def _grid(cfg: RunConfig) -> np.ndarray:
    grid, offset = default_grid(cfg.gamma_min, cfg.gamma_max, cfg.gamma_step)
    if offset:
        print(
            f"note: gamma=-1 replaced by {fmt(-1 - cfg.gamma_step / 2)} and "
            f"{fmt(-1 + cfg.gamma_step / 2)}",
            file=sys.stderr,
        )
    return grid


def _require_gamma(cfg: RunConfig) -> float:
    if cfg.gamma is None:
        raise UsageError(f"{cfg.command} needs --gamma")
    if cfg.gamma == -1:
        raise UsageError("gamma = -1 is the branch point; pick a nearby value")
    return cfg.gamma


def cmd_scan(cfg: RunConfig) -> int:
    table = gamma_scan(_grid(cfg), cfg.n_sites, cfg.sweep_options())
    _write_rows(cfg, COLUMNS, table.rows)
    return EXIT_OK


def cmd_ge(cfg: RunConfig) -> int:
    gamma = _require_gamma(cfg)
    gs = ground_state(build_xxz(cfg.n_sites, gamma, field_for(gamma)))
    res = max_overlap(gs.state, cfg.sweep_options())
    comps = " ".join(fmt_complex(z) for z in res.closest.locals.reshape(-1))
    with _open_out(cfg.output_path) as fh:
        print(f"gamma: {fmt(gamma)}", file=fh)
        print(f"lambda_max_sq: {fmt(res.lambda_max**2)}", file=fh)
        print(f"e_log2: {fmt(res.e_log2)}", file=fh)
        print(f"rounds_used: {res.trace.rounds_used}", file=fh)
        print(f"converged: {str(res.trace.converged).lower()}", file=fh)
        print(f"closest: {comps}", file=fh)
    return EXIT_OK


def cmd_beta(cfg: RunConfig) -> int:
    gamma = _require_gamma(cfg)
    if cfg.beta_steps < 2:
        raise UsageError("--beta-steps must be >= 2")
    betas = np.linspace(0.0, math.pi, cfg.beta_steps)
    scan = beta_scan(gamma, betas, cfg.n_sites)
    _write_rows(cfg, ("beta", "lambda_sq"), scan.points)
    return EXIT_OK


def cmd_detect(cfg: RunConfig) -> int:
    table = gamma_scan(_grid(cfg), cfg.n_sites, cfg.sweep_options())
    lines = []
    missing = []
    try:
        lines.append(f"jump: {fmt(detect_jump(table))}")
    except NoJumpError as exc:
        missing.append(f"jump not found: {exc}")
    try:
        c = crossing_from_table(table)
        lines.append(f"crossing: {fmt(c.location)}")
        if c.multiple:
            lines.append(f"crossing_count: {c.n_crossings}")
    except NoCrossingError as exc:
        missing.append(f"crossing not found: {exc}")
    else:
        if cfg.decay2 is not None or cfg.decay3 is not None:
            model = DecayModel(cfg.decay2 or 1.0, cfg.decay3 or 1.0)
            decayed = apply_decay(table, model)
            try:
                lines.append(f"crossing_decayed: {fmt(crossing_from_table(decayed).location)}")
                restored = crossing_from_table(rescale(decayed, model)).location
                lines.append(f"crossing_rescaled: {fmt(restored)}")
            except NoCrossingError as exc:
                missing.append(f"decayed crossing not found: {exc}")
    with _open_out(cfg.output_path) as fh:
        for line in lines:
            print(line, file=fh)
    for m in missing:
        print(m, file=sys.stderr)
    return EXIT_NOT_FOUND if missing else EXIT_OK


COMMANDS = {"scan": cmd_scan, "ge": cmd_ge, "beta": cmd_beta, "detect": cmd_detect}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-sites", type=int, default=4)
    common.add_argument("--gamma", type=float)
    common.add_argument("--gamma-min", type=float, default=-2.0)
    common.add_argument("--gamma-max", type=float, default=3.0)
    common.add_argument("--gamma-step", type=float, default=0.05)
    common.add_argument("--beta-steps", type=int, default=64)
    common.add_argument("--decay2", type=float)
    common.add_argument("--decay3", type=float)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", dest="output_path", default="-",
                        help="output file, '-' for standard output")
    common.add_argument("--format", choices=("csv", "tsv"), default="csv")

    p = _Parser(prog="xxzge", description="XXZ chain ground-state entanglement")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("scan", parents=[common], help="gamma scan table")
    sub.add_parser("ge", parents=[common], help="maximal overlap at one gamma")
    sub.add_parser("beta", parents=[common], help="overlap along U_y(beta)|0101..>")
    sub.add_parser("detect", parents=[common], help="locate the jump and the crossing")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    try:
        if cfg.n_sites < 2 or cfg.n_sites % 2:
            raise UsageError(f"--n-sites must be even and >= 2, got {cfg.n_sites}")
        return COMMANDS[cfg.command](cfg)
    except (UsageError, DomainError) as exc:
        print(f"xxzge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"xxzge: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
