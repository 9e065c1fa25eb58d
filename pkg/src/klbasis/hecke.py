"""Hecke algebra operations over the group ring Z[v, v^-1].

Two layers live here.  The t-basis layer (TCombo: sparse element id ->
LaurentPoly maps) implements generator multiplication, the bar involution
and the triangular bar-solve that reconstructs the Kazhdan-Lusztig basis
from its defining properties; it is the independent oracle against which
the P-polynomial recursion is checked.  The column layer computes, for a
fixed y, every product c_x * c_y by induction on l(x), storing the
structure constants as handles into a deduplicating store of symmetric
Laurent polynomials.  Columns for distinct y are independent and share
nothing mutable.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .coxeter import GroupTable
from .klbase import KLStore, WGraph
from .ring import LaurentPoly, NotSymmetricError, SymLaurentPoly

TCombo = dict[int, LaurentPoly]
CCombo = dict[int, LaurentPoly]

_L_ONE = LaurentPoly.one()
_V_MINUS_VINV = LaurentPoly({1: 1, -1: -1})
_BETA = LaurentPoly({1: 1, -1: 1})  # v + v^-1


class NoSolutionError(RuntimeError):
    """The triangular bar-solve could not be completed (internal bug)."""


def _add_term(acc: TCombo, x: int, p: LaurentPoly) -> None:
    cur = acc.get(x)
    s = p if cur is None else cur + p
    if s:
        acc[x] = s
    elif cur is not None:
        del acc[x]


def combo_add_scaled(acc: TCombo, other: TCombo, scale: LaurentPoly) -> None:
    for x, p in other.items():
        _add_term(acc, x, p * scale)


def t_mult_gen(g: GroupTable, s: int, u: TCombo) -> TCombo:
    """Left multiplication t_s * u in the t-basis."""
    out: TCombo = {}
    for y, p in u.items():
        sy = g.lmult[y][s]
        if g.lengths[sy] > g.lengths[y]:
            _add_term(out, sy, p)
        else:
            _add_term(out, y, p * _V_MINUS_VINV)
            _add_term(out, sy, p)
    return out


def t_inverse(g: GroupTable, z: int) -> TCombo:
    """t_z^-1 in the t-basis, by induction on length via
    t_s^-1 = t_s - (v - v^-1) t_e."""
    cache: dict[int, TCombo] = g.cache("t_inverse")
    if z in cache:
        return cache[z]
    chain = []
    while z not in cache:
        if z == 0:
            cache[0] = {0: _L_ONE}
            break
        chain.append(z)
        z = g.parent[z]
    for w in reversed(chain):
        s = g.lastgen[w]
        # t_w = t_parent * t_s, so t_w^-1 = t_s^-1 * t_parent^-1
        prev = cache[g.parent[w]]
        out = t_mult_gen(g, s, prev)
        combo_add_scaled(out, prev, -_V_MINUS_VINV)
        cache[w] = out
    return cache[chain[0]] if chain else cache[0]


def bar_h(g: GroupTable, u: TCombo) -> TCombo:
    """The bar involution: coefficients bar'ed, t_y -> (t_{y^-1})^-1."""
    out: TCombo = {}
    for y, p in u.items():
        combo_add_scaled(out, t_inverse(g, g.inv[y]), p.bar())
    return out


def tcombo_mult(g: GroupTable, a: TCombo, b: TCombo) -> TCombo:
    """Full product in the t-basis: a * b via reduced words of a's terms."""
    out: TCombo = {}
    for x, p in a.items():
        part = b
        for s in reversed(g.word(x)):
            part = t_mult_gen(g, s, part)
        combo_add_scaled(out, part, p)
    return out


def c_in_t_basis(store: KLStore, y: int) -> TCombo:
    """c_y = sum over x <= y of v^(l(x)-l(y)) P_{x,y}(v^2) t_x."""
    g = store.g
    ly = g.lengths[y]
    out: TCombo = {}
    for x in g.mask_to_ids(g.bruhat_mask(y)):
        x = int(x)
        p = store.kl_polynomial(x, y)
        if p:
            out[x] = p.to_laurent_v(g.lengths[x] - ly)
    return out


def c_in_t_basis_oracle(g: GroupTable, y: int) -> TCombo:
    """Reconstruct c_y directly from the defining properties: the unique
    bar-invariant element t_y + corrections with coefficients in
    v^-1 Z[v^-1].  Independent of the P-polynomial recursion."""
    u: TCombo = {y: _L_ONE}
    # residual r = bar(u) - u, updated incrementally as corrections land
    r: TCombo = {}
    combo_add_scaled(r, t_inverse(g, g.inv[y]), _L_ONE)
    _add_term(r, y, -_L_ONE)
    ly = g.lengths[y]
    by_level: dict[int, list[int]] = {}
    for x in r:
        by_level.setdefault(g.lengths[x], []).append(x)
    for level in range(ly - 1, -1, -1):
        for x in sorted(by_level.get(level, ()), reverse=True):
            gamma = r.get(x)
            if not gamma:
                continue
            if gamma.bar() != -gamma:
                raise NoSolutionError(f"residual at {x} is not antisymmetric: {gamma}")
            delta = LaurentPoly({e: c for e, c in gamma.items() if e < 0})
            _add_term(u, x, delta)
            tinv = t_inverse(g, g.inv[x])
            bar_delta = delta.bar()
            for w, p in tinv.items():
                _add_term(r, w, p * bar_delta)
                if g.lengths[w] < level:
                    by_level.setdefault(g.lengths[w], []).append(w)
            _add_term(r, x, -delta)
    if any(p for p in r.values()):
        raise NoSolutionError("bar-solve left a nonzero residual")
    return u


def c_mult_gen(wg: WGraph, s: int, u: CCombo) -> CCombo:
    """c_s * u in the KL basis: (v + v^-1) c_w when sw < w, otherwise
    c_{sw} plus the mu-edge terms below w."""
    g = wg.g
    out: CCombo = {}
    for w, p in u.items():
        if g.lmask[w] >> s & 1:
            _add_term(out, w, p * _BETA)
        else:
            _add_term(out, g.lmult[w][s], p)
            for z, mu in wg.mu_in(w):
                if g.lmask[z] >> s & 1:
                    _add_term(out, z, p.scaled(mu))
    return out


def c_to_t(store: KLStore, u: CCombo) -> TCombo:
    """Expand a KL-basis combination into the t-basis."""
    out: TCombo = {}
    for y, p in u.items():
        combo_add_scaled(out, c_in_t_basis(store, y), p)
    return out


class PolyStore:
    """Deduplicating store of symmetric Laurent polynomials.

    Each distinct polynomial is held once; rows refer to it by an integer
    handle.  The binary operations used by the column recursion are cached
    handle-to-handle, which is what makes the recursion cheap: identical
    sub-sums recur constantly across a column.
    """

    def __init__(self):
        self._polys: list[SymLaurentPoly] = []
        self._index: dict[SymLaurentPoly, int] = {}
        self._add: dict[tuple[int, int], int | None] = {}
        self._bmul: dict[int, int] = {}
        self._scale: dict[tuple[int, int], int] = {}
        self.one = self.intern(SymLaurentPoly.one())

    def intern(self, p: SymLaurentPoly) -> int:
        h = self._index.get(p)
        if h is None:
            h = len(self._polys)
            self._polys.append(p)
            self._index[p] = h
        return h

    def poly(self, h: int) -> SymLaurentPoly:
        return self._polys[h]

    def add(self, h1: int, h2: int) -> int | None:
        """Handle of the sum, or None if it cancels to zero."""
        if h2 < h1:
            h1, h2 = h2, h1
        key = (h1, h2)
        got = self._add.get(key, -1)
        if got != -1:
            return got
        s = self._polys[h1] + self._polys[h2]
        out = self.intern(s) if s else None
        self._add[key] = out
        return out

    def bmul(self, h: int) -> int:
        got = self._bmul.get(h)
        if got is None:
            got = self.intern(self._polys[h].bmul())
            self._bmul[h] = got
        return got

    def scale(self, h: int, n: int) -> int:
        key = (h, n)
        got = self._scale.get(key)
        if got is None:
            got = self.intern(self._polys[h].scaled(n))
            self._scale[key] = got
        return got

    def __len__(self) -> int:
        return len(self._polys)


def _first_descent(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _last_descent(mask: int) -> int:
    return mask.bit_length() - 1


DESCENT_STRATEGIES: dict[str, Callable[[int], int]] = {
    "first": _first_descent,
    "last": _last_descent,
}


class HColumn:
    """For a fixed y, the table x -> (z -> h_{x,y,z}) with entries stored
    as handles into a PolyStore."""

    def __init__(self, g: GroupTable, y: int, rows: list[dict[int, int]], store: PolyStore):
        self.g = g
        self.y = y
        self.rows = rows
        self.store = store

    def row(self, x: int) -> dict[int, int]:
        return self.rows[x]

    def h_value(self, x: int, z: int) -> SymLaurentPoly:
        h = self.rows[x].get(z)
        return SymLaurentPoly.zero() if h is None else self.store.poly(h)

    def row_polys(self, x: int) -> dict[int, SymLaurentPoly]:
        return {z: self.store.poly(h) for z, h in self.rows[x].items()}

    def distinct_handles(self) -> set[int]:
        out: set[int] = set()
        for row in self.rows:
            out.update(row.values())
        return out

    def nonzero_entries(self) -> int:
        return sum(len(row) for row in self.rows)

    def max_abs_coeff(self) -> int:
        cache = _store_stat_cache(self.store, "maxabs")
        best = 0
        for h in self.distinct_handles():
            m = cache.get(h)
            if m is None:
                m = self.store.poly(h).max_abs_coeff()
                cache[h] = m
            if m > best:
                best = m
        return best


def _store_stat_cache(store: PolyStore, name: str) -> dict:
    caches = getattr(store, "_stat_caches", None)
    if caches is None:
        caches = {}
        store._stat_caches = caches
    return caches.setdefault(name, {})


def column(
    wg: WGraph,
    y: int,
    strategy: str = "first",
    store: PolyStore | None = None,
) -> HColumn:
    """All products c_x * c_y for x in the group, by induction on l(x).

    Row x is obtained from c_x = c_s c_{sx} - sum mu(z, sx) c_z with
    s the chosen descent of x; every coefficient is kept in symmetric
    form and checked against the parity l(x) + l(y) + l(z) mod 2.
    """
    g = wg.g
    pick = DESCENT_STRATEGIES[strategy]
    st = store if store is not None else PolyStore()
    rows: list[dict[int, int]] = [dict() for _ in range(g.size)]
    rows[0] = {y: st.one}
    ly = g.lengths[y]
    for x in range(1, g.size):
        s = pick(g.lmask[x])
        sx = g.lmult[x][s]
        row = _apply_cs(wg, s, rows[sx], st)
        for z, mu in wg.mu_in(sx):
            if g.lmask[z] >> s & 1:
                _row_sub_scaled(row, rows[z], mu, st)
        parity = (g.lengths[x] + ly) & 1
        for z, h in row.items():
            if st.poly(h).parity() != (parity ^ (g.lengths[z] & 1)):
                raise sym_parity_error(x, y, z, st.poly(h))
        rows[x] = row
    return HColumn(g, y, rows, st)


def sym_parity_error(x: int, y: int, z: int, p: SymLaurentPoly) -> Exception:
    from .ring import NotSymmetricError

    return NotSymmetricError(
        f"h({x},{y},{z}) = {p} violates the l(x)+l(y)+l(z) parity; "
        "this indicates a recursion bug"
    )


def _apply_cs(wg: WGraph, s: int, row: dict[int, int], st: PolyStore) -> dict[int, int]:
    g = wg.g
    out: dict[int, int] = {}
    for z, h in row.items():
        if g.lmask[z] >> s & 1:
            _row_add(out, z, st.bmul(h), st)
        else:
            _row_add(out, g.lmult[z][s], h, st)
            for w, mu in wg.mu_in(z):
                if g.lmask[w] >> s & 1:
                    _row_add(out, w, h if mu == 1 else st.scale(h, mu), st)
    return out


def _row_add(row: dict[int, int], z: int, h: int, st: PolyStore) -> None:
    cur = row.get(z)
    if cur is None:
        row[z] = h
        return
    s = st.add(cur, h)
    if s is None:
        del row[z]
    else:
        row[z] = s


def _row_sub_scaled(row: dict[int, int], other: dict[int, int], mu: int, st: PolyStore) -> None:
    for z, h in other.items():
        _row_add(row, z, st.scale(h, -mu), st)


def h_value(col: HColumn, x: int, z: int) -> SymLaurentPoly:
    """The structure constant h_{x,y,z} of col's y; zero when absent."""
    return col.h_value(x, z)


def ccombo_from_column_row(col: HColumn, x: int) -> CCombo:
    """Row of the column as a KL-basis combination with Laurent values."""
    return {z: col.store.poly(h).expand() for z, h in col.rows[x].items()}


def format_combo(g: GroupTable, combo: Iterable[tuple[int, LaurentPoly | SymLaurentPoly]]) -> str:
    """Render 'z1 -> poly1; z2 -> poly2' with ids and ShortLex words."""
    parts = []
    for z, p in sorted(combo, key=lambda t: t[0]):
        parts.append(f"{z}[{g.word_str(z)}] -> {p}")
    return "; ".join(parts)
