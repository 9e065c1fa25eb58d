"""Closed-form KL-basis products in dihedral groups.

Conventions.  Generators are written 1 and 2.  Every product considered
here has right factor the length-k alternating word ending in generator 2
(for k = m, in the finite group I2(m), this is the longest element).  All
such products expand over the same family: the length-j words ending in
generator 2 plus the longest element.  With s the first letter of the
right factor (2 when k is odd, 1 when k is even) and t the other
generator, the left factor of length i either ends in t ('same' side,
integer coefficients) or in s ('opposite' side, all coefficients
multiples of v + v^-1).

The infinite-group products follow a closed form: a pyramid of 1-2-...-2-1
coefficients for the same side and a (v + v^-1) band for the opposite
side.  In the finite group the same recursion is run with the column of
the longest element absorbing everything that crosses it, which is also
how the integer triangle tables are produced.
"""

from __future__ import annotations

from dataclasses import dataclass

from .checks import CheckReport
from .coxeter import GroupTable, group_from_name
from .klbase import KLStore, build_wgraph
from .hecke import column
from .ring import SymLaurentPoly

SIDES = ("same", "opposite")

_ONE = SymLaurentPoly.one()
_BETA = SymLaurentPoly(1, (1,))


class InvalidIndexError(ValueError):
    """Word length or column index outside the allowed range."""


def _first_letter(j: int) -> int:
    """First letter of the alternating length-j word ending in generator 2."""
    return 2 if j % 2 else 1


@dataclass(frozen=True)
class DihedralWord:
    """Alternating word s t s t ... of the given length, starting with
    ``first``; length 0 is the identity regardless of first."""

    first: int
    length: int

    def __post_init__(self):
        if self.first not in (1, 2):
            raise InvalidIndexError("first generator must be 1 or 2")
        if self.length < 0:
            raise InvalidIndexError("length must be >= 0")

    @classmethod
    def ending_in(cls, last: int, length: int) -> "DihedralWord":
        if length == 0:
            return cls(1, 0)
        first = last if length % 2 else 3 - last
        return cls(first, length)

    def letters(self) -> tuple[int, ...]:
        a, b = self.first, 3 - self.first
        return tuple(a if i % 2 == 0 else b for i in range(self.length))

    def last(self) -> int | None:
        if self.length == 0:
            return None
        return self.letters()[-1]

    def element(self, g: GroupTable) -> int:
        return g.element_of_word([l - 1 for l in self.letters()])

    def __str__(self) -> str:
        return f"[{self.first},{3 - self.first},{self.length}>"


class DihedralProduct:
    """Sparse expansion of a product over the ending-in-2 family.

    Keys are result lengths j; for a finite group the key m stands for the
    longest element.  Values are symmetric Laurent coefficients."""

    def __init__(self, terms: dict[int, SymLaurentPoly], m: int | None, side: str, i: int, k: int):
        self.terms = {j: p for j, p in terms.items() if p}
        self.m = m
        self.side = side
        self.i = i
        self.k = k

    def words(self) -> dict[DihedralWord, SymLaurentPoly]:
        return {DihedralWord.ending_in(2, j): p for j, p in self.terms.items()}

    def to_id_map(self, g: GroupTable) -> dict[int, SymLaurentPoly]:
        return {DihedralWord.ending_in(2, j).element(g): p for j, p in self.terms.items()}

    def graded_coefficient_sums(self) -> dict[int, int]:
        """Coefficient sums per degree, giving v^d c_j degree j + d."""
        out: dict[int, int] = {}
        for j, p in self.terms.items():
            for e, c in p.expand().items():
                out[j + e] = out.get(j + e, 0) + c
        return {d: c for d, c in out.items() if c}

    def __eq__(self, other) -> bool:
        return isinstance(other, DihedralProduct) and self.terms == other.terms

    def __str__(self) -> str:
        parts = []
        for j in sorted(self.terms):
            w = DihedralWord.ending_in(2, j)
            p = self.terms[j]
            coeff = "" if p == _ONE else f"({p}) "
            parts.append(f"{coeff}c{w}")
        return " + ".join(parts) if parts else "0"


def infinite_product(side: str, i: int, k: int) -> DihedralProduct:
    """Product of the length-i left factor with the length-k right factor
    in the infinite dihedral group, from the closed form.

    Same side: c_{|k-i|} + 2c_{|k-i|+2} + ... + 2c_{k+i-2} + c_{k+i}, with
    the column-0 term omitted when i = k (so all interior coefficients
    are 2 and the top is 1).  Opposite side: (v + v^-1) times the sum of
    c_j for j from |k-i|+1 to k+i-1 in steps of 2.
    """
    if side not in SIDES:
        raise InvalidIndexError(f"side must be one of {SIDES}")
    if i <= 0 or k <= 0:
        raise InvalidIndexError("factor lengths must be positive")
    terms: dict[int, SymLaurentPoly] = {}
    if side == "same":
        lo, hi = abs(k - i), k + i
        for j in range(lo if lo else 2, hi + 1, 2):
            inner = j not in (lo, hi)
            terms[j] = SymLaurentPoly(0, (2,)) if inner else _ONE
    else:
        for j in range(abs(k - i) + 1, k + i, 2):
            terms[j] = _BETA
    return DihedralProduct(terms, None, side, i, k)


def _sides_letters(k: int, side: str) -> int:
    s = _first_letter(k)
    t = 3 - s
    return t if side == "same" else s


def finite_product(m: int, side: str, i: int, k: int) -> DihedralProduct:
    """Product in I2(m), by the recursion with the longest-element column
    absorbing everything that reaches it.

    Row 0 is the right factor itself; row i follows from rows i-1 and i-2
    by one KL-generator multiplication, and the coefficient of the longest
    element obeys a_i = (v + v^-1) a_{i-1} - a_{i-2} once the strip has
    drained past it.
    """
    if side not in SIDES:
        raise InvalidIndexError(f"side must be one of {SIDES}")
    if m < 2:
        raise InvalidIndexError("m must be at least 2")
    if not 0 < i <= m or not 0 < k <= m:
        raise InvalidIndexError("factor lengths must lie in 1..m")
    last = _sides_letters(k, side)
    rows = _product_rows(m, k, last, i)
    return DihedralProduct(rows[i], m, side, i, k)


def _product_rows(m: int, k: int, last: int, upto: int) -> list[dict[int, SymLaurentPoly]]:
    """Rows 0..upto of the product recursion; row i is the expansion of
    the product with the length-i left factor ending in ``last``."""
    rows: list[dict[int, SymLaurentPoly]] = [{k: _ONE}]
    for i in range(1, upto + 1):
        r = last if i % 2 else 3 - last
        cur = _apply_gen(m, r, rows[i - 1])
        if i >= 3:
            prev = rows[i - 2]
            for j, p in prev.items():
                q = cur.get(j, SymLaurentPoly.zero()) - p
                if q:
                    cur[j] = q
                else:
                    cur.pop(j, None)
        rows.append(cur)
    return rows


def _apply_gen(m: int | None, r: int, row: dict[int, SymLaurentPoly]) -> dict[int, SymLaurentPoly]:
    """Left multiplication by the KL generator c_r on the ending-in-2
    family: scalar (v + v^-1) when r starts the word (or at the longest
    element), neighbour transport otherwise."""
    out: dict[int, SymLaurentPoly] = {}

    def add(j: int, p: SymLaurentPoly) -> None:
        q = out.get(j)
        q = p if q is None else q + p
        if q:
            out[j] = q
        else:
            out.pop(j, None)

    for j, p in row.items():
        if (m is not None and j == m) or _first_letter(j) == r:
            add(j, p.bmul())
        else:
            add(j + 1, p)
            if j >= 2:
                add(j - 1, p)
    return out


def triangle_table(
    m: int | None, k: int, side: str = "same", rows: int = 5
) -> list[dict[int, int]]:
    """Integer coefficient rows of the product recursion.

    Row i comes from row i-1 by the j-1/j+1 rule minus row i-2, run in the
    half-plane j > 0 (terms falling into column 0 are omitted) and, for
    finite m, inside the strip j < m.  Same-side tables start from 1s at
    k-1 and k+1; opposite-side tables are the integer parts of the
    (v + v^-1) multiples and start from a single 1 at k.  Returned as one
    sparse {column: coefficient} dict per row, rows 1..rows.
    """
    if side not in SIDES:
        raise InvalidIndexError(f"side must be one of {SIDES}")
    if k <= 0 or rows < 1:
        raise InvalidIndexError("k and rows must be positive")
    if m is not None and (m < 2 or k > m or rows > m):
        raise InvalidIndexError("finite tables need 0 < k <= m and rows <= m")

    def keep(j: int) -> bool:
        return j >= 1 and (m is None or j <= m - 1)

    if side == "same":
        # at k = m the first multiplication is already absorbed by the
        # longest element, so nothing enters the strip
        if m is not None and k == m:
            first = {}
        else:
            first = {j: 1 for j in (k - 1, k + 1) if keep(j)}
    else:
        first = {k: 1} if keep(k) else {}
    table = [first]
    for i in range(2, rows + 1):
        prev1 = table[-1]
        prev2 = table[-2] if i >= 3 else {}
        cols = {j + 1 for j in prev1} | {j - 1 for j in prev1} | set(prev2)
        row: dict[int, int] = {}
        for j in sorted(cols):
            if not keep(j):
                continue
            c = prev1.get(j - 1, 0) + prev1.get(j + 1, 0) - prev2.get(j, 0)
            if c:
                row[j] = c
        table.append(row)
    return table


def format_triangle(table: list[dict[int, int]], k: int) -> str:
    """Dot-matrix rendering of a triangle table, dots for zeros."""
    cols = sorted({j for row in table for j in row})
    if not cols:
        cols = [k]
    lo, hi = min(cols), max(cols)
    header = ["     "] + [f"j={j}".rjust(5) for j in range(lo, hi + 1)]
    lines = ["".join(header)]
    for i, row in enumerate(table, start=1):
        cells = [f"i={i}".ljust(5)]
        for j in range(lo, hi + 1):
            c = row.get(j, 0)
            cells.append((str(c) if c else ".").rjust(5))
        lines.append("".join(cells))
    return "\n".join(lines)


def crosscheck_dihedral(m: int, g: GroupTable | None = None) -> CheckReport:
    """Compare every closed-form finite product against the generic column
    engine on I2(m)."""
    if not 2 <= m <= 30:
        raise InvalidIndexError("crosscheck supports 2 <= m <= 30")
    if g is None:
        g = group_from_name(f"I2({m})")
    store = KLStore(g)
    wg = build_wgraph(store)
    report = CheckReport("dihedral_crosscheck", g.name)
    products = 0
    for k in range(1, m + 1):
        y = DihedralWord.ending_in(2, k).element(g)
        col = column(wg, y)
        for side in SIDES:
            last = _sides_letters(k, side)
            for i in range(1, m + 1):
                x = DihedralWord.ending_in(last, i).element(g)
                got = {z: col.store.poly(h) for z, h in col.rows[x].items()}
                want = finite_product(m, side, i, k).to_id_map(g)
                products += 1
                if got != want:
                    report.record_failure(
                        f"m={m} side={side} i={i} k={k}: engine {got} != closed form {want}"
                    )
    report.counters.update(products=products)
    return report
