"""Acceptance suite: one test per criterion, each printing a pass line
with its measurements (run with -s to see them on success).

Criterion 10, the full 14400-column sweep of the largest group, is gated
behind RUN_H4_EXTENDED=1; it needs on the order of days of CPU in pure
Python and is excluded from routine runs.  Everything else is desk scale.
"""

import os
import random
import signal
import subprocess
import sys
import time
from pathlib import Path

import pytest

from klbasis.checks import (
    check_p1,
    check_p2,
    check_p3,
    check_strategy_invariance,
    check_unimodal,
    check_w0_identity,
)
from klbasis.cli import main
from klbasis.coxeter import group_from_name
from klbasis.dihedral import SIDES, crosscheck_dihedral, finite_product, triangle_table
from klbasis.hecke import (
    PolyStore,
    c_in_t_basis,
    c_in_t_basis_oracle,
    c_to_t,
    ccombo_from_column_row,
    column,
    tcombo_mult,
)
from klbasis.klbase import extremal_pairs
from klbasis.ring import SymLaurentPoly


def report(n, text):
    print(f"\nPASS criterion {n}: {text}")


DIHEDRAL_RANGE = range(2, 13)


def test_criterion_01_dihedral_closed_form_oracle(groups):
    """Closed-form products equal the generic engine on I2(2)..I2(12)."""
    start = time.perf_counter()
    products = 0
    for m in DIHEDRAL_RANGE:
        rep = crosscheck_dihedral(m, groups(f"I2({m})"))
        assert rep.passed, rep.to_text()
        products += rep.counters["products"]
    # hand-checkable case: x = y = the length-6 word ending in 2, inside I2(9)
    square = finite_product(9, "same", 6, 6)
    assert square.terms == {
        2: SymLaurentPoly(0, (2,)),
        4: SymLaurentPoly(0, (2,)),
        6: SymLaurentPoly.one(),
        9: SymLaurentPoly(3, (1, 2)),
    }
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"dihedral oracle took {elapsed:.1f}s, budget 10s"
    report(1, f"{products} closed-form products match the engine in {elapsed:.2f}s")


def test_criterion_02_triangle_tables():
    infinite = triangle_table(None, 3, "same", 5)
    assert infinite == [
        {2: 1, 4: 1},
        {1: 1, 3: 2, 5: 1},
        {2: 2, 4: 2, 6: 1},
        {1: 1, 3: 2, 5: 2, 7: 1},
        {2: 1, 4: 2, 6: 2, 8: 1},
    ]
    finite = triangle_table(9, 6, "same", 9)
    assert finite == [
        {5: 1, 7: 1},
        {4: 1, 6: 2, 8: 1},
        {3: 1, 5: 2, 7: 2},
        {2: 1, 4: 2, 6: 2, 8: 1},
        {1: 1, 3: 2, 5: 2, 7: 1},
        {2: 2, 4: 2, 6: 1},
        {1: 1, 3: 2, 5: 1},
        {2: 1, 4: 1},
        {},
    ]
    report(2, "both printed coefficient tables reproduced entry-for-entry")


ORACLE_GROUPS = ["A3", "B3"] + [f"I2({m})" for m in range(2, 9)] + ["H3"]


def test_criterion_03_kl_oracle_equivalence(groups, stores):
    start = time.perf_counter()
    elements = 0
    for name in ORACLE_GROUPS:
        g = groups(name)
        store = stores(name)
        for y in range(g.size):
            assert c_in_t_basis_oracle(g, y) == c_in_t_basis(store, y), (name, y)
            elements += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 300.0
    report(3, f"bar-solve oracle matches the recursion on {elements} elements "
              f"in {elapsed:.1f}s")


def test_criterion_04_t_basis_ground_truth(groups, stores, wgraphs):
    pairs = 0
    for name in ["A2"] + [f"I2({m})" for m in range(2, 7)]:
        g = groups(name)
        store = stores(name)
        wg = wgraphs(name)
        cts = {y: c_in_t_basis(store, y) for y in range(g.size)}
        for y in range(g.size):
            col = column(wg, y)
            for x in range(g.size):
                direct = tcombo_mult(g, cts[x], cts[y])
                via_h = c_to_t(store, ccombo_from_column_row(col, x))
                assert direct == via_h, (name, x, y)
                pairs += 1
    report(4, f"{pairs} products agree between the t-basis and the h-table route")


def test_criterion_05_h3_full_sweep(stores, wgraphs):
    start = time.perf_counter()
    store = stores("H3")
    wg = wgraphs("H3")
    p1 = check_p1(store)
    assert p1.passed, p1.to_text()
    p2 = check_p2(store)
    assert p2.passed, p2.to_text()
    p3 = check_p3(wg, with_unimodality=True)
    assert p3.passed, p3.to_text()
    # pinned on the first verified run (cross-validated by strategy
    # invariance, transpose symmetry and the t-basis oracle)
    assert p3.counters["max_coeff"] == 74
    uni = check_unimodal(column(wg, wg.g.w0))
    assert uni.passed, uni.to_text()
    elapsed = time.perf_counter() - start
    assert elapsed < 600.0
    report(5, f"P1/P2/P3/unimodality pass over all of H3 "
              f"(max coefficient {p3.counters['max_coeff']}) in {elapsed:.1f}s")


def test_criterion_06_strategy_invariance(wgraphs):
    for name in ("H3", "I2(7)"):
        rep = check_strategy_invariance(wgraphs(name))
        assert rep.passed, rep.to_text()
    report(6, "first- and last-descent sweeps produce identical h-tables "
              "on H3 and I2(7)")


def test_criterion_07_h_symmetry_h3(wgraphs):
    wg = wgraphs("H3")
    g = wg.g
    store = PolyStore()  # one shared store so handles compare across columns
    tables = [column(wg, y, store=store).rows for y in range(g.size)]
    checked = 0
    for y in range(g.size):
        iy = g.inv[y]
        for x in range(g.size):
            row = tables[y][x]
            transposed = tables[g.inv[x]][iy]
            assert len(row) == len(transposed)
            for z, h in row.items():
                assert transposed[g.inv[z]] == h, (x, y, z)
                checked += 1
    report(7, f"h(x,y,z) = h(y^-1,x^-1,z^-1) on all {checked} nonzero H3 triples")


def test_criterion_08_w0_identity(groups, stores, wgraphs):
    for name in ORACLE_GROUPS:
        enforce = name in ("A3", "B3")
        rep = check_w0_identity(stores(name), wgraphs(name), enforce_unimodal=enforce)
        assert rep.passed, rep.to_text()
        if enforce:
            assert rep.counters["unimodal_failures"] == 0
    report(8, "longest-element columns are scalar, match the length-weighted "
              "P sums, and are palindromic (unimodal on the crystallographic presets)")


def test_criterion_09_h4_extremal_count():
    start = time.perf_counter()
    g = group_from_name("H4")
    count = extremal_pairs(g).count()
    elapsed = time.perf_counter() - start
    assert count == 2_348_942, count
    assert elapsed < 3600.0
    report(9, f"inverse-reduced extremal pair count of H4 is {count} "
              f"({elapsed:.1f}s)")


@pytest.mark.skipif(
    not os.environ.get("RUN_H4_EXTENDED"),
    reason="multi-day run; set RUN_H4_EXTENDED=1 to enable",
)
def test_criterion_10_h4_extended_run(tmp_path):
    rc = main(["positivity", "--group", "H4", "--outdir", str(tmp_path)])
    log = (tmp_path / "positivity_log").read_text().splitlines()
    assert rc == 0
    assert log[-1] == "14399: maxcoeff = 710904968"
    assert (tmp_path / "error_log").read_bytes() == b""
    report(10, "extended sweep reaches the published maximum coefficient")


def test_criterion_11_resume_correctness(tmp_path):
    outdir = tmp_path / "interrupted"
    outdir.mkdir()
    reference = tmp_path / "reference"
    cmd = [sys.executable, "-m", "klbasis", "positivity", "--group", "H3",
           "--outdir", str(outdir)]
    proc = subprocess.Popen(cmd, stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
    log = outdir / "positivity_log"
    threshold = random.Random().randint(5, 80)
    try:
        deadline = time.time() + 120
        while time.time() < deadline:
            if log.exists() and log.read_bytes().count(b"\n") >= threshold:
                break
            if proc.poll() is not None:
                break
            time.sleep(0.01)
        if proc.poll() is None:
            proc.send_signal(signal.SIGKILL)
    finally:
        proc.wait()
    interrupted_lines = log.read_bytes().count(b"\n") if log.exists() else 0
    assert main(["positivity", "--group", "H3", "--outdir", str(outdir),
                 "--resume"]) == 0
    assert main(["positivity", "--group", "H3", "--outdir", str(reference)]) == 0
    ref_log = (reference / "positivity_log").read_text().splitlines()
    assert ref_log[-1] == "119: maxcoeff = 74"  # regression value, see criterion 5
    assert log.read_bytes() == (reference / "positivity_log").read_bytes()
    assert (outdir / "positivity_verbose_log").read_bytes() == (
        reference / "positivity_verbose_log"
    ).read_bytes()
    assert (outdir / "error_log").read_bytes() == b""
    report(11, f"killed at about {threshold} columns ({interrupted_lines} logged), "
               "resumed log is byte-identical to an uninterrupted run")
