"""Kazhdan-Lusztig polynomials P_{x,y}, mu-values, extremal pairs and the
W-graph.

Every query is first reduced to an extremal pair (L(x) and R(x) both
contain the corresponding descent sets of y) through P_{x,y} = P_{sx,y}
for s in L(y) \\ L(x) and its right-hand analogue, and then to a canonical
representative under P_{x,y} = P_{x^-1,y^-1}.  Only those canonical
extremal pairs are memoised.  Columns are filled in increasing length of
y with the classical descent recursion; the generator used is always the
lowest-index left descent of y (strategy sensitivity of the structure
constant computation is tested separately, in checks).
"""

from __future__ import annotations

from typing import Iterator

from .coxeter import GroupTable
from .ring import QPoly

_Q_ONE = QPoly.one()
_Q_ZERO = QPoly.zero()


class KLStore:
    """Memoised table of Kazhdan-Lusztig polynomials over one group."""

    def __init__(self, g: GroupTable):
        self.g = g
        self._P: dict[tuple[int, int], QPoly] = {}
        self._mu: dict[int, tuple[tuple[int, int], ...]] = {}
        self._next_column = 0
        self.negative_pairs: list[tuple[int, int]] = []

    # -- reductions -------------------------------------------------------

    def _reduce(self, x: int, y: int) -> int:
        """Raise x until (x, y) is extremal; assumes x <= y."""
        g = self.g
        while x != y:
            free = g.lmask[y] & ~g.lmask[x]
            if free:
                s = (free & -free).bit_length() - 1
                x = g.lmult[x][s]
                continue
            free = g.rmask[y] & ~g.rmask[x]
            if free:
                s = (free & -free).bit_length() - 1
                x = g.rmult[x][s]
                continue
            break
        return x

    def _canonical(self, x: int, y: int) -> tuple[int, int]:
        ix, iy = self.g.inv[x], self.g.inv[y]
        return (ix, iy) if (iy, ix) < (y, x) else (x, y)

    # -- column construction ----------------------------------------------

    def build_upto(self, maxlen: int) -> None:
        g = self.g
        while self._next_column < g.size and g.lengths[self._next_column] <= maxlen:
            self._build_column(self._next_column)
            self._next_column += 1

    def build_all(self) -> None:
        self.build_upto(self.g.lengths[self.g.w0])

    def _build_column(self, y: int) -> None:
        g = self.g
        iy = g.inv[y]
        if iy < y:
            return  # values live in the transposed column
        interval = g.bruhat_mask(y)
        extremal = (
            interval
            & g.descent_superset_mask("left", g.lmask[y])
            & g.descent_superset_mask("right", g.rmask[y])
        )
        ly = g.lengths[y]
        if y:
            s = (g.lmask[y] & -g.lmask[y]).bit_length() - 1
            sy = g.lmult[y][s]
            mus = [(z, mu) for z, mu in self.mu_list(sy) if g.lmask[z] >> s & 1]
            for x in g.mask_to_ids(extremal):
                x = int(x)
                if x == y or (iy == y and g.inv[x] < x):
                    continue
                p = self._recurrence(x, y, s, sy, mus)
                d = ly - g.lengths[x]
                if 2 * p.degree() > d - 1:
                    raise AssertionError(
                        f"degree bound violated for P_{{{x},{y}}} in {g.name}: {p}"
                    )
                if any(c < 0 for c in p.coeffs):
                    self.negative_pairs.append((x, y))
                self._P[(x, y)] = p
        self._mu[y] = self._make_mu_list(y, interval, extremal)

    def _recurrence(self, x: int, y: int, s: int, sy: int, mus) -> QPoly:
        # P_{x,y} = P_{sx,sy} + q P_{x,sy} - sum mu(z,sy) q^((l(y)-l(z))/2) P_{x,z}
        # for extremal (x, y), where s in L(y) implies s in L(x).
        g = self.g
        sx = g.lmult[x][s]
        p = self.kl_polynomial(sx, sy) + self.kl_polynomial(x, sy).shift(1)
        ly = g.lengths[y]
        lx = g.lengths[x]
        for z, mu in mus:
            if g.lengths[z] < lx:
                continue
            pz = self.kl_polynomial(x, z)
            if pz:
                p = p - (mu * pz).shift((ly - g.lengths[z]) >> 1)
        return p

    def _make_mu_list(self, y: int, interval: int, extremal: int) -> tuple[tuple[int, int], ...]:
        g = self.g
        ly = g.lengths[y]
        out = []
        for x in g.mask_to_ids(interval & g.level_mask(ly - 1)):
            out.append((int(x), 1))
        for x in g.mask_to_ids(extremal):
            x = int(x)
            d = ly - g.lengths[x]
            if d < 3 or d % 2 == 0:
                continue
            mu = self.kl_polynomial(x, y).coeff((d - 1) >> 1)
            if mu:
                out.append((x, mu))
        out.sort()
        return tuple(out)

    # -- queries ------------------------------------------------------------

    def kl_polynomial(self, x: int, y: int) -> QPoly:
        """P_{x,y}: zero unless x <= y, one for x = y."""
        if x == y:
            return _Q_ONE
        g = self.g
        if g.lengths[x] >= g.lengths[y] or not g.bruhat_mask(y) >> x & 1:
            return _Q_ZERO
        x = self._reduce(x, y)
        if x == y:
            return _Q_ONE
        key = self._canonical(x, y)
        if key not in self._P:
            self.build_upto(g.lengths[y])
        return self._P[key]

    def mu(self, x: int, y: int) -> int:
        """Coefficient of degree (l(y)-l(x)-1)/2 in P_{x,y}; zero for even
        length difference."""
        g = self.g
        d = g.lengths[y] - g.lengths[x]
        if d <= 0 or d % 2 == 0:
            return 0
        if not g.bruhat_mask(y) >> x & 1:
            return 0
        if d == 1:
            return 1
        if g.lmask[y] & ~g.lmask[x] or g.rmask[y] & ~g.rmask[x]:
            return 0  # non-extremal pairs lose the top-degree window
        return self.kl_polynomial(x, y).coeff((d - 1) >> 1)

    def mu_list(self, y: int) -> tuple[tuple[int, int], ...]:
        """All (z, mu(z, y)) with nonzero mu, sorted by z."""
        got = self._mu.get(y)
        if got is not None:
            return got
        g = self.g
        iy = g.inv[y]
        if iy != y and iy in self._mu:
            derived = tuple(sorted((g.inv[z], mu) for z, mu in self._mu[iy]))
            self._mu[y] = derived
            return derived
        self.build_upto(g.lengths[y])
        if y not in self._mu:  # y was skipped as non-canonical
            derived = tuple(sorted((g.inv[z], mu) for z, mu in self._mu[iy]))
            self._mu[y] = derived
        return self._mu[y]

    def iter_pairs(self) -> Iterator[tuple[int, int, QPoly]]:
        """Stored canonical extremal pairs (x, y, P) with x < y."""
        for (x, y), p in sorted(self._P.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            yield x, y, p

    def distinct_polynomials(self) -> list[QPoly]:
        """The distinct P_{x,y} over all x <= y, sorted by (degree, coeffs).

        Includes the constant 1 (diagonal pairs); builds the full table.
        """
        self.build_all()
        seen = {_Q_ONE}
        seen.update(self._P.values())
        return sorted(seen, key=QPoly.sort_key)


class WGraph:
    """Descent sets plus mu-labelled edges; the only data the structure
    constant recursion consumes besides group multiplication."""

    def __init__(self, g: GroupTable, mu_lists: tuple[tuple[tuple[int, int], ...], ...]):
        self.g = g
        self.mu_lists = mu_lists

    @property
    def size(self) -> int:
        return self.g.size

    def mu_in(self, y: int) -> tuple[tuple[int, int], ...]:
        """(z, mu(z, y)) pairs with z < y."""
        return self.mu_lists[y]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """All edges as (x, y, mu) with x < y, ordered by (y, x)."""
        for y in range(self.g.size):
            for z, mu in self.mu_lists[y]:
                yield z, y, mu

    def edge_count(self) -> int:
        return sum(len(t) for t in self.mu_lists)


def build_wgraph(store: KLStore) -> WGraph:
    """Materialise the W-graph of the whole group from a KL store."""
    store.build_all()
    lists = tuple(store.mu_list(y) for y in range(store.g.size))
    for y in range(store.g.size):
        for z, mu in lists[y]:
            if mu < 1:
                raise ValueError(f"nonpositive mu({z},{y}) = {mu}: edge-level positivity fails")
    return WGraph(store.g, lists)


class ExtremalPairs:
    """Pairs x <= y with LR(x) containing LR(y), reduced by the inverse
    symmetry at column level: only columns with y <= y^-1 are listed, an
    involution's column in full.  These are exactly the cases a per-column
    sweep computes."""

    def __init__(self, g: GroupTable):
        self.g = g
        self._count: int | None = None

    def _column_mask(self, y: int) -> int:
        g = self.g
        return (
            g.bruhat_mask(y)
            & g.descent_superset_mask("left", g.lmask[y])
            & g.descent_superset_mask("right", g.rmask[y])
        )

    def count(self) -> int:
        if self._count is None:
            self._count = sum(
                self._column_mask(y).bit_count()
                for y in range(self.g.size)
                if y <= self.g.inv[y]
            )
        return self._count

    def __iter__(self) -> Iterator[tuple[int, int]]:
        g = self.g
        for y in range(g.size):
            if y > g.inv[y]:
                continue
            for x in g.mask_to_ids(self._column_mask(y)):
                yield int(x), y


def extremal_pairs(g: GroupTable) -> ExtremalPairs:
    return ExtremalPairs(g)
