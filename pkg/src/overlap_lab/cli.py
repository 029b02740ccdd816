"""Command-line entry point: ``overlap-lab <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 oracle disagreement, 3 int64 width overflow.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .classifier import classify
from .density import CSV_COLUMNS, enumerate_counts
from .geometry import (
    WidthOverflowError,
    grid_to_pgm,
    grid_to_svg,
    level_endpoints,
    measure_and_dimension,
    render_W_grid,
)
from .oracles import (
    exhaustive_depth,
    find_overlap_witness,
    no_overlap_by_divisibility,
    rank_equality_holds,
    valid_ells,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREE = 2
EXIT_OVERFLOW = 3

COMMANDS = ("classify", "witness", "verify", "density", "measure", "grid")
FORMATS = ("json", "csv", "pgm", "svg", "text")
_ALLOWED_FORMATS = {
    "classify": {"json", "text"},
    "witness": {"json", "text"},
    "verify": {"json", "text"},
    "density": {"json", "csv", "text"},
    "measure": {"json", "csv", "text"},
    "grid": {"pgm", "svg", "csv"},
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    q: int | None = None
    N: list[int] | None = None
    max_depth: int | None = None
    level: int = 6
    output_path: str | None = None
    format: str = "text"
    max_sum: int | None = None
    human: bool = False
    jobs: int = 1

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in _ALLOWED_FORMATS[self.command]:
            allowed = ", ".join(sorted(_ALLOWED_FORMATS[self.command]))
            raise UsageError(f"{self.command} supports --format {allowed}")
        if self.command in ("classify", "witness", "measure"):
            if self.p is None or self.q is None:
                raise UsageError(f"{self.command} requires --p and --q")
            if self.p < 1 or self.q < 1:
                raise UsageError("--p and --q must be positive")
        if self.command in ("witness", "measure"):
            g = math.gcd(self.p, self.q)
            if self.p // g >= self.q // g:
                raise UsageError(f"{self.command} needs t = p/q < 1; pass the reciprocal instead")
        if self.command in ("density", "grid"):
            if not self.N or any(n < 1 for n in self.N):
                raise UsageError(f"{self.command} requires --N with positive values")
            if self.command == "grid" and len(self.N) != 1:
                raise UsageError("grid takes a single --N")
        if self.command == "verify" and (self.max_sum is None or self.max_sum < 3):
            raise UsageError("verify requires --max-sum >= 3")
        if self.max_depth is not None and self.max_depth < 1:
            raise UsageError("--max-depth must be >= 1")
        if self.level < 1:
            raise UsageError("--level must be >= 1")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")


def _reduced(p: int, q: int) -> tuple[int, int]:
    g = math.gcd(p, q)
    return p // g, q // g


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _run_classify(cfg: RunConfig) -> tuple[str, int]:
    c = classify(cfg.p, cfg.q)
    if cfg.format == "json":
        return _dump_json(c.to_dict()), EXIT_OK

    def gw(w):
        return "not in Gamma" if w is None else f"in Gamma (k={w.k}, ell={w.ell})"

    lines = [
        f"t = {cfg.p}/{cfg.q} = {c.t} ({c.regime})",
        f"  p = {c.t.p}: {gw(c.gamma_p)}",
        f"  q = {c.t.q}: {gw(c.gamma_q)}",
        f"  exact overlap: {'yes' if c.overlap else 'no'}",
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def _run_witness(cfg: RunConfig) -> tuple[str, int]:
    p, q = _reduced(cfg.p, cfg.q)
    bound = exhaustive_depth((p, q))
    max_depth = cfg.max_depth or bound
    w = find_overlap_witness((p, q), max_depth)
    exhaustive = max_depth >= bound
    if cfg.format == "json":
        if w is None:
            obj = {"p": p, "q": q, "depth": None, "block_i": None, "block_j": None,
                   "max_depth": max_depth, "exhaustive": exhaustive}
        else:
            obj = w.to_dict(human=cfg.human)
        return _dump_json(obj), EXIT_OK
    if w is None:
        scope = "exhaustive bound" if exhaustive else "depth limit"
        return f"t = {p}/{q}: none within {scope} {max_depth}\n", EXIT_OK
    d = w.to_dict(human=cfg.human)
    lines = [
        f"t = {p}/{q}: witness of depth {w.depth}",
        "  block_i: " + " ".join(map(str, d["block_i"])),
        "  block_j: " + " ".join(map(str, d["block_j"])),
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def verify_pair(pair: tuple[int, int]) -> dict:
    """The four overlap booleans for a coprime p < q."""
    p, q = pair
    by_classifier = classify(p, q).overlap
    by_witness = find_overlap_witness((p, q)) is not None
    by_divisibility = no_overlap_by_divisibility((p, q)) is None
    by_rank = not any(rank_equality_holds(p, q, ell) for ell in valid_ells(p, q))
    return {
        "p": p,
        "q": q,
        "classifier": by_classifier,
        "witness": by_witness,
        "divisibility": by_divisibility,
        "rank": by_rank,
    }


def coprime_pairs(max_sum: int) -> list[tuple[int, int]]:
    """Coprime p < q with p + q <= max_sum, ordered by (p + q, p)."""
    return [
        (p, s - p)
        for s in range(3, max_sum + 1)
        for p in range(1, (s + 1) // 2)
        if math.gcd(p, s - p) == 1
    ]


def _run_verify(cfg: RunConfig) -> tuple[str, int]:
    pairs = coprime_pairs(cfg.max_sum)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            results = list(ex.map(verify_pair, pairs, chunksize=16))
    else:
        results = [verify_pair(pr) for pr in pairs]
    keys = ("classifier", "witness", "divisibility", "rank")
    bad = [r for r in results if len({r[k] for k in keys}) != 1]
    n_overlap = sum(r["classifier"] for r in results)
    status = EXIT_DISAGREE if bad else EXIT_OK
    if cfg.format == "json":
        obj = {"max_sum": cfg.max_sum, "pairs": len(results), "overlap_pairs": n_overlap,
               "disagreements": bad}
        return _dump_json(obj), status
    lines = [
        f"verified {len(results)} coprime pairs p<q with p+q <= {cfg.max_sum}",
        f"  overlap: {n_overlap}, no overlap: {len(results) - n_overlap}",
        f"  disagreements: {len(bad)}",
    ]
    for r in bad:
        lines.append("  " + " ".join(f"{k}={r[k]}" for k in ("p", "q") + keys))
    return "\n".join(lines) + "\n", status


def _run_density(cfg: RunConfig) -> tuple[str, int]:
    rows = [enumerate_counts(n, jobs=cfg.jobs).row() for n in sorted(cfg.N)]
    if cfg.format == "json":
        return _dump_json(rows), EXIT_OK
    buf = io.StringIO()
    if cfg.format == "csv":
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        for r in rows:
            buf.write(
                f"N={r['N']}: W={r['count_W']} ({r['ratio_W']}), "
                f"W_hat={r['count_W_hat']} ({r['ratio_W_hat']}), "
                f"W_tilde={r['count_W_tilde']} ({r['ratio_W_tilde']}), "
                f"sum phi={r['totient_sum']}\n"
            )
    return buf.getvalue(), EXIT_OK


def _run_measure(cfg: RunConfig) -> tuple[str, int]:
    t = _reduced(cfg.p, cfg.q)
    if cfg.format == "csv":
        approx = level_endpoints(t, cfg.level)
        lines = ["level,scaled_endpoint"]
        lines += [f"{cfg.level},{int(v)}" for v in approx.endpoints]
        return "\n".join(lines) + "\n", EXIT_OK
    est = measure_and_dimension(t, cfg.level)
    if cfg.format == "json":
        return _dump_json(est.to_dict()), EXIT_OK
    text = (
        f"t = {est.t}, level {est.level}: D_n = {est.D_n} of {4**est.level}, "
        f"measure = {est.measure} ({float(est.measure):.12g}), "
        f"dim estimate = {est.dim_estimate:.12g}\n"
    )
    return text, EXIT_OK


def _run_grid(cfg: RunConfig) -> tuple[str | bytes, int]:
    grid = render_W_grid(cfg.N[0])
    if cfg.format == "pgm":
        return grid_to_pgm(grid), EXIT_OK
    if cfg.format == "svg":
        return grid_to_svg(grid), EXIT_OK
    lines = [",".join("1" if x else "0" for x in row) for row in grid]
    return "\n".join(lines) + "\n", EXIT_OK


_RUNNERS = {
    "classify": _run_classify,
    "witness": _run_witness,
    "verify": _run_verify,
    "density": _run_density,
    "measure": _run_measure,
    "grid": _run_grid,
}


def write_atomic(path: str | os.PathLike, data: str | bytes) -> None:
    """Write via a temporary file in the target directory, then rename over it."""
    path = Path(path)
    payload = data.encode("utf-8") if isinstance(data, str) else data
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute one command. Returns the exit status."""
    stdout = stdout if stdout is not None else sys.stdout
    try:
        cfg.validate()
        payload, status = _RUNNERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"overlap-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WidthOverflowError as exc:
        print(f"overlap-lab: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    if cfg.output_path:
        write_atomic(cfg.output_path, payload)
    elif isinstance(payload, bytes):
        out = getattr(stdout, "buffer", None)
        if out is None:
            print("overlap-lab: error: binary output needs --output", file=sys.stderr)
            return EXIT_USAGE
        out.write(payload)
        out.flush()
    else:
        stdout.write(payload)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="overlap-lab", description="Exact overlaps of projections of the four-corner Cantor set.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats, default):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--output", dest="output_path", help="write to this file (atomically)")

    sp = sub.add_parser("classify", help="decide whether C_{p/q} has an exact overlap")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    common(sp, ["json", "text"], "text")

    sp = sub.add_parser("witness", help="search for an explicit overlap witness")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--max-depth", type=int, help="default 2(p+q)+1, which is exhaustive")
    sp.add_argument("--human", action="store_true", help="show digits as 0, 3t, 3, 3t+3")
    common(sp, ["json", "text"], "text")

    sp = sub.add_parser("verify", help="cross-check all oracles on every coprime p<q with p+q <= max-sum")
    sp.add_argument("--max-sum", type=int, required=True)
    sp.add_argument("--jobs", type=int)
    common(sp, ["json", "text"], "text")

    sp = sub.add_parser("density", help="count W, W_hat, W_tilde in [1,N]^2")
    sp.add_argument("--N", type=int, nargs="+", required=True)
    sp.add_argument("--jobs", type=int)
    common(sp, ["json", "csv", "text"], "text")

    sp = sub.add_parser("measure", help="level-n measure and dimension estimate of C_{p/q}")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--level", type=int, default=6)
    common(sp, ["json", "csv", "text"], "text")

    sp = sub.add_parser("grid", help="render W_tilde in [1,N]^2 as PGM, SVG or CSV")
    sp.add_argument("--N", type=int, nargs=1, required=True)
    common(sp, ["pgm", "svg", "csv"], "pgm")
    return parser


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    values = vars(ns)
    jobs = values.pop("jobs", None)
    if jobs is None:
        env = os.environ.get("OVERLAP_LAB_JOBS")
        try:
            jobs = int(env) if env else 1
        except ValueError:
            raise UsageError(f"OVERLAP_LAB_JOBS must be an integer, got {env!r}") from None
    return RunConfig(jobs=jobs, **values)


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except UsageError as exc:
        print(f"overlap-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
