"""Verification suite: positivity of P-polynomials and structure constants,
monotonicity for fixed y, unimodality, the longest-element ideal identity,
and descent-strategy cross-validation.

Checks never assume the properties they test: each one scans, captures
counterexamples, and reports.  A report passes exactly when its
counterexample list is empty.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .coxeter import GroupTable
from .hecke import HColumn, PolyStore, _store_stat_cache, column
from .klbase import KLStore, WGraph
from .ring import LaurentPoly, QPoly, is_unimodal, qpoly_from_sym


@dataclass
class CheckReport:
    """Outcome of one check over one group."""

    name: str
    group: str
    passed: bool = True
    counters: dict[str, int] = field(default_factory=dict)
    counterexamples: list[str] = field(default_factory=list)

    def record_failure(self, description: str, limit: int = 20) -> None:
        self.passed = False
        if len(self.counterexamples) < limit:
            self.counterexamples.append(description)

    def to_text(self) -> str:
        items = " ".join(f"{k}={v}" for k, v in sorted(self.counters.items()))
        lines = [f"check={self.name} group={self.group} pass={self.passed} {items}".rstrip()]
        lines.extend(f"  counterexample: {c}" for c in self.counterexamples)
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "check": self.name,
                "group": self.group,
                "pass": self.passed,
                "counters": self.counters,
                "counterexamples": self.counterexamples,
            },
            sort_keys=True,
        )


def check_p1(store: KLStore) -> CheckReport:
    """Non-negativity of every P_{x,y}, scanned over canonical extremal
    pairs (all other pairs reduce onto these)."""
    g = store.g
    report = CheckReport("p1", g.name)
    store.build_all()
    maxc = 1
    distinct = {QPoly.one()}
    pairs = 0
    for x, y, p in store.iter_pairs():
        pairs += 1
        distinct.add(p)
        maxc = max(maxc, p.max_abs_coeff())
        if any(c < 0 for c in p.coeffs):
            report.record_failure(f"P({x},{y}) = {p} has a negative coefficient")
    report.counters.update(pairs=pairs, distinct=len(distinct), max_coeff=maxc)
    return report


def check_p2(store: KLStore) -> CheckReport:
    """For each y, P_{x,y} - P_{z,y} has non-negative coefficients whenever
    x <= z <= y.  Differences telescope along covering chains, so scanning
    covering pairs x < z inside each lower interval is equivalent."""
    g = store.g
    report = CheckReport("p2", g.name)
    store.build_all()
    checked = 0
    for y in range(g.size):
        interval = g.mask_to_ids(g.bruhat_mask(y))
        for z in interval:
            z = int(z)
            if z == 0:
                continue
            pz = store.kl_polynomial(z, y)
            for x in g.covers(z):
                diff = store.kl_polynomial(int(x), y) - pz
                checked += 1
                if any(c < 0 for c in diff.coeffs):
                    report.record_failure(
                        f"P({int(x)},{y}) - P({z},{y}) = {diff} has a negative coefficient"
                    )
    report.counters.update(pairs=checked)
    return report


def column_summary(col: HColumn, with_unimodality: bool = True) -> dict:
    """Scan one column once: negativity, optional unimodality, max
    coefficient, entry and distinct-polynomial counts.

    Distinct polynomials are scanned once each via store-level caches, so
    repeated handles cost nothing."""
    st = col.store
    neg_cache = _store_stat_cache(st, "nonneg")
    uni_cache = _store_stat_cache(st, "unimodal")
    max_cache = _store_stat_cache(st, "maxabs")
    handles = col.distinct_handles()
    max_coeff = 0
    bad_neg: list[int] = []
    bad_uni: list[int] = []
    for h in handles:
        m = max_cache.get(h)
        if m is None:
            m = st.poly(h).max_abs_coeff()
            max_cache[h] = m
        if m > max_coeff:
            max_coeff = m
        ok = neg_cache.get(h)
        if ok is None:
            ok = st.poly(h).min_coeff() >= 0
            neg_cache[h] = ok
        if not ok:
            bad_neg.append(h)
        if with_unimodality:
            u = uni_cache.get(h)
            if u is None:
                u = is_unimodal(qpoly_from_sym(st.poly(h)))
                uni_cache[h] = u
            if not u:
                bad_uni.append(h)
    return {
        "y": col.y,
        "max_coeff": max_coeff,
        "entries": col.nonzero_entries(),
        "distinct": len(handles),
        "bad_negative": _locate_handles(col, bad_neg),
        "bad_unimodal": _locate_handles(col, bad_uni),
    }


def _locate_handles(col: HColumn, handles: list[int]) -> list[tuple[int, int, str]]:
    if not handles:
        return []
    wanted = set(handles)
    out = []
    for x, row in enumerate(col.rows):
        for z, h in row.items():
            if h in wanted:
                out.append((x, z, str(col.store.poly(h))))
    return out


def check_p3(
    wg: WGraph,
    y_range: Iterable[int] | None = None,
    strategy: str = "first",
    progress: Callable[[dict], None] | None = None,
    with_unimodality: bool = False,
) -> CheckReport:
    """Build each column in the range and assert every structure constant
    has non-negative coefficients; tracks the running maximum coefficient
    and emits one progress record per y."""
    g = wg.g
    report = CheckReport("p3", g.name)
    ys = range(g.size) if y_range is None else y_range
    max_coeff = 0
    triples = 0
    columns = 0
    for y in ys:
        col = column(wg, y, strategy)
        info = column_summary(col, with_unimodality=with_unimodality)
        columns += 1
        triples += info["entries"]
        max_coeff = max(max_coeff, info["max_coeff"])
        for x, z, p in info["bad_negative"]:
            report.record_failure(f"h({x},{y},{z}) = {p} has a negative coefficient")
        for x, z, p in info["bad_unimodal"]:
            report.record_failure(f"h({x},{y},{z}) = {p} is not unimodal")
        if progress is not None:
            info["cumulative_max"] = max_coeff
            progress(info)
    report.counters.update(columns=columns, triples=triples, max_coeff=max_coeff)
    return report


def check_unimodal(col: HColumn) -> CheckReport:
    """v^d h_{x,y,z} is unimodal in q for every entry of the column."""
    report = CheckReport("unimodal", col.g.name)
    info = column_summary(col, with_unimodality=True)
    for x, z, p in info["bad_unimodal"]:
        report.record_failure(f"h({x},{col.y},{z}) = {p} is not unimodal")
    report.counters.update(entries=info["entries"], distinct=info["distinct"])
    return report


def check_w0_identity(store: KLStore, wg: WGraph, enforce_unimodal: bool = False) -> CheckReport:
    """c_x * c_w0 is a scalar multiple of c_w0 with scalar
    sum over z <= x of p_{z,x} v^{l(z)}; the scalar, normalised by
    v^{l(x)}, is palindromic in q and (for the crystallographic presets,
    enforced on request) unimodal."""
    g = store.g
    report = CheckReport("w0_identity", g.name)
    w0 = g.w0
    col = column(wg, w0)
    unimodal_failures = 0
    for x in range(g.size):
        row = col.rows[x]
        if set(row) != {w0}:
            report.record_failure(
                f"c_{x} c_w0 is not a multiple of c_w0 (support {sorted(row)})"
            )
            continue
        h = col.store.poly(row[w0])
        lx = g.lengths[x]
        expected = LaurentPoly()
        for z in g.mask_to_ids(g.bruhat_mask(x)):
            z = int(z)
            p = store.kl_polynomial(z, x)
            expected = expected + p.to_laurent_v(2 * g.lengths[z] - lx)
        if h.expand() != expected:
            report.record_failure(
                f"scalar for x={x}: got {h}, expected {expected}"
            )
            continue
        qp = qpoly_from_sym(h)
        if not qp.is_palindromic():
            report.record_failure(f"v^l(x) scalar for x={x} is not palindromic: {qp}")
        if not is_unimodal(qp):
            unimodal_failures += 1
            if enforce_unimodal:
                report.record_failure(f"v^l(x) scalar for x={x} is not unimodal: {qp}")
    report.counters.update(elements=g.size, unimodal_failures=unimodal_failures)
    return report


def check_strategy_invariance(wg: WGraph, ys: Sequence[int] | None = None) -> CheckReport:
    """Identical h-tables from the first-descent and last-descent column
    recursions."""
    g = wg.g
    report = CheckReport("strategy_invariance", g.name)
    triples = 0
    for y in range(g.size) if ys is None else ys:
        first = column(wg, y, "first")
        last = column(wg, y, "last")
        for x in range(g.size):
            rf = first.row_polys(x)
            rl = last.row_polys(x)
            triples += len(rf)
            if rf != rl:
                report.record_failure(
                    f"rows differ at x={x}, y={y}: first={rf}, last={rl}"
                )
    report.counters.update(triples=triples)
    return report


def global_max_coeff(wg: WGraph, strategy: str = "first") -> int:
    """Maximum coefficient over all h_{x,y,z} of the group."""
    best = 0
    for y in range(wg.g.size):
        col = column(wg, y, strategy)
        best = max(best, col.max_abs_coeff())
    return best
