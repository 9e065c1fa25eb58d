"""Command-line front end.

Commands: klplist (distinct KL polynomials), decrklpol (monotonicity for
fixed y), positivity (structure-constant sweep with checkpointed progress
log), cycltable / cprod (product tables), triangle (dihedral coefficient
tables).  The positivity run appends ``y: maxcoeff = N`` lines (cumulative
maximum) to positivity_log, per-column maxima to positivity_verbose_log,
and failures to error_log; a resumed run rebuilds the W-graph, skips the
columns already logged and continues the cumulative maximum from the log.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from pathlib import Path

from .checks import (
    CheckReport,
    check_p2,
    column_summary,
)
from .coxeter import CoxeterMatrix, GroupTable, build_group, preset_matrix
from .dihedral import format_triangle, triangle_table
from .hecke import column, format_combo
from .klbase import KLStore, WGraph, build_wgraph

POSITIVITY_LOG = "positivity_log"
VERBOSE_LOG = "positivity_verbose_log"
ERROR_LOG = "error_log"


@dataclass
class RunConfig:
    group: str | None = None
    matrix_file: str | None = None
    command: str = ""
    y_range: tuple[int, int] | None = None
    strategy: str = "first"
    threads: int = 1
    outdir: str = "."
    resume: bool = False
    store_budget: int = 0  # distinct h-polynomials kept for the global list; 0 disables
    args: list[str] = field(default_factory=list)

    def load_group(self) -> GroupTable:
        if self.matrix_file:
            text = Path(self.matrix_file).read_text()
            name = Path(self.matrix_file).stem
            return build_group(CoxeterMatrix.from_text(text), name)
        if not self.group:
            raise SystemExit("no group given: use --group NAME or --matrix FILE")
        matrix, name = preset_matrix(self.group)
        return build_group(matrix, name)

    def resolve_range(self, size: int) -> range:
        if self.y_range is None:
            return range(size)
        lo, hi = self.y_range
        if not (0 <= lo <= hi < size):
            raise SystemExit(f"--range {lo}:{hi} outside 0..{size - 1}")
        return range(lo, hi + 1)


def _outpath(cfg: RunConfig, name: str) -> Path:
    out = Path(cfg.outdir)
    out.mkdir(parents=True, exist_ok=True)
    return out / name


def _emit_report(cfg: RunConfig, report: CheckReport) -> None:
    print(report.to_text())
    with open(_outpath(cfg, "checks.jsonl"), "a") as fh:
        fh.write(report.to_json() + "\n")


def cmd_klplist(cfg: RunConfig) -> int:
    """Distinct KL polynomials, sorted by (degree, coefficients); re-checks
    non-negativity along the way."""
    g = cfg.load_group()
    store = KLStore(g)
    polys = store.distinct_polynomials()
    bad = [p for p in polys if any(c < 0 for c in p.coeffs)]
    path = _outpath(cfg, "klplist")
    with open(path, "w") as fh:
        fh.write(f"group {g.name}: {len(polys)} distinct polynomials\n")
        for p in polys:
            fh.write(f"{p}\n")
    print(f"group {g.name}: {len(polys)} distinct polynomials -> {path}")
    if bad:
        for p in bad:
            print(f"negative coefficients: {p}", file=sys.stderr)
        return 1
    return 0


def cmd_decrklpol(cfg: RunConfig) -> int:
    g = cfg.load_group()
    report = check_p2(KLStore(g))
    _emit_report(cfg, report)
    return 0 if report.passed else 1


def _parse_log(path: Path) -> dict[int, tuple[int, str]]:
    """Complete 'y: maxcoeff = N ...' lines of an existing progress log,
    as {y: (N, line)}.  A torn trailing line is dropped."""
    out: dict[int, tuple[int, str]] = {}
    if path.exists():
        raw = path.read_bytes().decode()
        for line in raw.split("\n")[:-1]:
            try:
                ystr, rest = line.split(":", 1)
                n = int(rest.split("=", 1)[1].split()[0])
                out[int(ystr)] = (n, line)
            except (ValueError, IndexError):
                continue
    return out


_WORKER_STATE: dict = {}


def _column_worker(task: tuple[int, str]) -> dict:
    y, strategy = task
    col = column(_WORKER_STATE["wg"], y, strategy)
    info = column_summary(col, with_unimodality=True)
    if _WORKER_STATE.get("budget"):
        polys = {str(col.store.poly(h)) for h in col.distinct_handles()}
        info["polys"] = sorted(polys)
    return info


def cmd_positivity(cfg: RunConfig) -> int:
    """Per-y structure-constant sweep with non-negativity and unimodality
    checks, an append-only progress log and kill-safe resume."""
    g = cfg.load_group()
    ys = cfg.resolve_range(g.size)

    log_path = _outpath(cfg, POSITIVITY_LOG)
    verbose_path = _outpath(cfg, VERBOSE_LOG)
    error_path = _outpath(cfg, ERROR_LOG)

    done: set[int] = set()
    cum = 0
    if cfg.resume:
        main_lines = _parse_log(log_path)
        verbose_lines = _parse_log(verbose_path)
        # a kill can land between the two appends, so a column counts as
        # done only when both logs carry its line; rewrite both to exactly
        # the surviving complete lines
        done = set(main_lines) & set(verbose_lines)
        log_path.write_text("".join(main_lines[y][1] + "\n" for y in sorted(done)))
        verbose_path.write_text(
            "".join(verbose_lines[y][1] + "\n" for y in sorted(done))
        )
        cum = max((main_lines[y][0] for y in done), default=0)
        if not error_path.exists():
            error_path.write_text("")
    else:
        log_path.write_text("")
        verbose_path.write_text("")
        error_path.write_text("")

    store = KLStore(g)
    wg = build_wgraph(store)  # the only recomputation a resume pays for
    todo = [y for y in ys if y not in done]

    global_polys: set[str] = set()
    budget = cfg.store_budget
    failures = 0

    def handle(info: dict) -> None:
        nonlocal cum, failures
        y = info["y"]
        cum = max(cum, info["max_coeff"])
        with open(log_path, "a") as fh:
            fh.write(f"{y}: maxcoeff = {cum}\n")
        with open(verbose_path, "a") as fh:
            fh.write(
                f"{y}: maxcoeff = {info['max_coeff']} entries = {info['entries']}"
                f" distinct = {info['distinct']}\n"
            )
        problems = [
            f"h({x},{y},{z}) = {p} has a negative coefficient"
            for x, z, p in info["bad_negative"]
        ] + [
            f"h({x},{y},{z}) = {p} is not unimodal"
            for x, z, p in info["bad_unimodal"]
        ]
        if problems:
            failures += len(problems)
            with open(error_path, "a") as fh:
                for line in problems:
                    fh.write(line + "\n")
        if budget and "polys" in info:
            global_polys.update(info["polys"])
            if len(global_polys) > budget:
                raise SystemExit(
                    f"distinct-polynomial store exceeded budget {budget}; "
                    "rerun with a larger --store-budget or without it"
                )

    if cfg.threads <= 1:
        _WORKER_STATE["wg"] = wg
        _WORKER_STATE["budget"] = budget
        for y in todo:
            handle(_column_worker((y, cfg.strategy)))
    else:
        _run_pool(wg, todo, cfg, handle)

    if budget and global_polys:
        with open(_outpath(cfg, "h_polynomials"), "w") as fh:
            fh.write(f"group {g.name}: {len(global_polys)} distinct structure constants\n")
            for p in sorted(global_polys):
                fh.write(p + "\n")

    report = CheckReport(
        "positivity",
        g.name,
        passed=failures == 0,
        counters={"columns": len(todo), "skipped": len(done), "max_coeff": cum},
    )
    if failures:
        report.counterexamples.append(f"{failures} failures written to {error_path}")
    _emit_report(cfg, report)
    return 0 if failures == 0 and error_path.stat().st_size == 0 else 1


def _run_pool(wg: WGraph, todo: list[int], cfg: RunConfig, handle) -> None:
    """Ordered collector over a process pool: results are applied in
    ascending y regardless of completion order, so logs are deterministic."""
    global _WORKER_STATE
    _WORKER_STATE = {"wg": wg, "budget": cfg.store_budget}
    pending: dict[int, dict] = {}
    next_i = 0
    with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
        futures = {pool.submit(_column_worker, (y, cfg.strategy)): y for y in todo}
        remaining = set(futures)
        while remaining:
            finished, remaining = wait(remaining, return_when=FIRST_COMPLETED)
            for fut in finished:
                pending[futures[fut]] = fut.result()
            while next_i < len(todo) and todo[next_i] in pending:
                handle(pending.pop(todo[next_i]))
                next_i += 1
    while next_i < len(todo) and todo[next_i] in pending:
        handle(pending.pop(todo[next_i]))
        next_i += 1


def _element_id(g: GroupTable, token: str) -> int:
    try:
        x = int(token)
    except ValueError:
        raise SystemExit(f"element id must be an integer, got {token!r}")
    if not 0 <= x < g.size:
        raise SystemExit(f"element id {x} outside 0..{g.size - 1}")
    return x


def cmd_cycltable(cfg: RunConfig) -> int:
    if len(cfg.args) != 1:
        raise SystemExit("cycltable needs exactly one element id: the fixed y")
    g = cfg.load_group()
    y = _element_id(g, cfg.args[0])
    wg = build_wgraph(KLStore(g))
    col = column(wg, y, cfg.strategy)
    for x in range(g.size):
        row = col.row_polys(x)
        if row:
            line = f"{x}[{g.word_str(x)}]: " + format_combo(g, row.items())
            print(line)
    return 0


def cmd_cprod(cfg: RunConfig) -> int:
    if len(cfg.args) != 2:
        raise SystemExit("cprod needs exactly two element ids: x and y")
    g = cfg.load_group()
    x = _element_id(g, cfg.args[0])
    y = _element_id(g, cfg.args[1])
    wg = build_wgraph(KLStore(g))
    col = column(wg, y, cfg.strategy)
    print(f"{x}[{g.word_str(x)}]: " + format_combo(g, col.row_polys(x).items()))
    return 0


def cmd_triangle(cfg: RunConfig) -> int:
    if len(cfg.args) < 2:
        raise SystemExit("triangle needs: m (or 'inf') and k [rows] [side]")
    m = None if cfg.args[0] in ("inf", "infinite") else int(cfg.args[0])
    k = int(cfg.args[1])
    rows = int(cfg.args[2]) if len(cfg.args) > 2 else (m if m else 8)
    side = cfg.args[3] if len(cfg.args) > 3 else "same"
    print(format_triangle(triangle_table(m, k, side, rows), k))
    return 0


COMMANDS = {
    "klplist": cmd_klplist,
    "decrklpol": cmd_decrklpol,
    "positivity": cmd_positivity,
    "cycltable": cmd_cycltable,
    "cprod": cmd_cprod,
    "triangle": cmd_triangle,
}


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="klbasis",
        description="Kazhdan-Lusztig basis computations and positivity checks",
    )
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("args", nargs="*", help="command arguments (ids, table sizes)")
    ap.add_argument("--group", "-g", help="group name, e.g. H3, B4, I2(7)")
    ap.add_argument("--matrix", help="file with rank then upper-triangle labels")
    ap.add_argument("--range", type=_parse_range, default=None, metavar="LO:HI",
                    help="inclusive range of y ids for positivity")
    ap.add_argument("--strategy", choices=("first", "last"), default="first")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--resume", action="store_true",
                    help="skip y values already in positivity_log")
    ap.add_argument("--outdir", default=".")
    ap.add_argument("--store-budget", type=int, default=0,
                    help="collect at most this many distinct structure constants")
    return ap


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        group=ns.group,
        matrix_file=ns.matrix,
        command=ns.command,
        y_range=ns.range,
        strategy=ns.strategy,
        threads=max(1, ns.threads),
        outdir=ns.outdir,
        resume=ns.resume,
        store_budget=ns.store_budget,
        args=ns.args,
    )
    return COMMANDS[ns.command](cfg)


if __name__ == "__main__":
    raise SystemExit(main())
