"""The Scharlau ideal of Z[G] as a Z-lattice and the invariant read off from it.

The ideal is spanned over Z by left-coset sums gH of prime-order subgroups H.
Generators are streamed into an incrementally maintained Hermite-style
echelon basis.  Coordinates put the identity LAST, so the echelon row whose
pivot sits on the identity column is the only row supported there and its
pivot is the invariant.
"""
from __future__ import annotations

import math
import random
import time
from bisect import insort
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import InvalidPartition, OrderCap
from .groupring import RingElement, set_sum
from .groups import FiniteGroup, Partition, all_subgroups, left_cosets, prime_order_subgroups

DEFAULT_MAX_ORDER = 1000


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x, nx, y, ny = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
    if a < 0:
        a, x, y = -a, -x, -y
    return a, x, y


def _combine(r: dict, s: dict, a: int, b: int) -> dict:
    """a*r + b*s with zero entries dropped."""
    out = {k: a * v for k, v in r.items()} if a != 1 else dict(r)
    if b:
        for k, v in s.items():
            w = out.get(k, 0) + b * v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    if a != 1:
        out = {k: v for k, v in out.items() if v}
    return out


class IdealLattice:
    """Incremental integer echelon basis.

    ``rows`` maps pivot column -> sparse row ``{column: int}``.  Invariants:
    pivots positive, each row zero left of its pivot, and every entry sitting
    above another row's pivot lies in ``[0, pivot)``.
    """

    def __init__(self, dimension: int, debug: bool = False):
        self.dimension = dimension
        self.rows: dict[int, dict[int, int]] = {}
        self.pivots: list[int] = []
        self.debug = debug

    # identity last, everything else shifted down by one
    def column(self, g: int) -> int:
        return self.dimension - 1 if g == 0 else g - 1

    def element(self, col: int) -> int:
        return 0 if col == self.dimension - 1 else col + 1

    def vector(self, v: RingElement | dict) -> dict[int, int]:
        coeffs = v.coeffs if isinstance(v, RingElement) else v
        return {self.column(g): c for g, c in coeffs.items() if c}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def insert(self, v) -> bool:
        """Add a generator; returns True if the basis changed."""
        vec = self.vector(v)
        changed_pivots = set()
        changed_rows = set()
        while vec:
            j = min(vec)
            row = self.rows.get(j)
            if row is None:
                if vec[j] < 0:
                    vec = {k: -c for k, c in vec.items()}
                self.rows[j] = vec
                insort(self.pivots, j)
                changed_pivots.add(j)
                changed_rows.add(j)
                break
            a, b = row[j], vec[j]
            if b % a == 0:
                vec = _combine(vec, row, 1, -(b // a))
                continue
            g, x, y = xgcd(a, b)
            self.rows[j] = _combine(_combine(row, {}, x, 0), vec, 1, y)
            vec = _combine(_combine(row, {}, -b // g, 0), vec, 1, a // g)
            changed_pivots.add(j)
            changed_rows.add(j)
        if not changed_rows:
            return False
        self._reduce(changed_pivots, changed_rows)
        if self.debug:
            self.check()
        return True

    def _reduce(self, changed_pivots: set, dirty: set):
        """Restore 0 <= entry < pivot above every pivot.

        Only rows that changed (or were touched while reducing) can hold
        out-of-range entries, except above a pivot whose value changed, where
        every earlier row needs a look.
        """
        rows = self.rows
        for i, k in enumerate(self.pivots):
            prow = rows[k]
            piv = prow[k]
            if k in changed_pivots:
                candidates = self.pivots[:i]
            else:
                candidates = [r for r in dirty if r < k]
            for r in candidates:
                e = rows[r].get(k)
                if e is not None and not 0 <= e < piv:
                    rows[r] = _combine(rows[r], prow, 1, -(e // piv))
                    dirty.add(r)

    def check(self):
        last = -1
        for k in self.pivots:
            assert k > last
            last = k
            row = self.rows[k]
            assert min(row) == k and row[k] > 0
        for i, k in enumerate(self.pivots):
            piv = self.rows[k][k]
            for r in self.pivots[:i]:
                assert 0 <= self.rows[r].get(k, 0) < piv, (r, k)

    def basis(self) -> list[dict[int, int]]:
        return [dict(self.rows[k]) for k in self.pivots]

    def basis_dense(self) -> list[list[int]]:
        out = []
        for k in self.pivots:
            v = [0] * self.dimension
            for c, x in self.rows[k].items():
                v[c] = x
            out.append(v)
        return out

    def contains(self, v) -> bool:
        vec = self.vector(v)
        while vec:
            j = min(vec)
            row = self.rows.get(j)
            if row is None or vec[j] % row[j]:
                return False
            vec = _combine(vec, row, 1, -(vec[j] // row[j]))
        return True

    def invariant_query(self) -> int:
        row = self.rows.get(self.dimension - 1)
        return 0 if row is None else row[self.dimension - 1]

    def max_entry(self) -> int:
        return max((abs(x) for r in self.rows.values() for x in r.values()), default=0)


def generators(G: FiniteGroup, all_subgroups_debug: bool = False) -> Iterator[tuple]:
    """Supports of the coset sums gH, H of prime order (or every non-trivial H in debug mode)."""
    if all_subgroups_debug:
        subgroups = [H for H in all_subgroups(G) if len(H) > 1]
    else:
        subgroups = prime_order_subgroups(G)
    seen = set()
    for H in subgroups:
        for coset in left_cosets(G, H):
            if coset not in seen:
                seen.add(coset)
                yield coset


@dataclass
class InvariantResult:
    invariant: int
    generators: int
    rank: int
    max_entry: int
    seconds: float = field(compare=False)
    lattice: IdealLattice = field(repr=False, compare=False)

    def report(self, timing: bool = True) -> str:
        lines = [
            f"invariant: {self.invariant}",
            f"generators: {self.generators}",
            f"rank: {self.rank}",
            f"max |entry|: {self.max_entry}",
        ]
        if timing:
            lines.append(f"wall time: {self.seconds:.3f} s")
        return "\n".join(lines)


def compute_invariant(G: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER, *,
                      shuffle_seed: int | None = None, all_subgroups_debug: bool = False,
                      debug: bool = False) -> InvariantResult:
    """Scharlau invariant of G: the minimal n >= 0 with n*e in the ideal."""
    if G.order > max_order:
        raise OrderCap(f"|G| = {G.order} exceeds the order cap {max_order}")
    start = time.perf_counter()
    gens = list(generators(G, all_subgroups_debug))
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(gens)
    L = IdealLattice(G.order, debug=debug)
    for support in gens:
        L.insert({g: 1 for g in support})
    return InvariantResult(L.invariant_query(), len(gens), L.rank, L.max_entry(),
                           time.perf_counter() - start, L)


def partition_witness(G: FiniteGroup, P: Partition) -> tuple[RingElement, int]:
    """sum of block sums - sum of G, which equals (|P| - 1) e."""
    if P.parent is not G or not P.check():
        raise InvalidPartition("not a partition of G into subgroups")
    total = set_sum(G, range(G.order)).scale(-1)
    for block in P.blocks:
        total = total + set_sum(G, block)
    n = len(P.blocks) - 1
    assert total == n, "partition witness did not collapse to a multiple of e"
    return total, n


def invariant_from_constraints(members: Iterable[int], divisor_bound: int) -> int:
    """gcd of known members of I cap Z and an externally known multiple of the invariant."""
    g = abs(int(divisor_bound))
    for m in members:
        g = math.gcd(g, int(m))
    return g
