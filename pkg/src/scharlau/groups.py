"""Finite groups given by a multiplication table.

Elements are dense integer ids ``0..n-1`` with the identity at id 0.  All the
orbit and stabilizer work is vectorized over the table with numpy, which is
what makes SL2(Z/17) (order 4896) comfortable.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import BadSpec, BadTable, OrderCap
from .modp import is_prime

FULL_ASSOC_CHECK = 200
RANDOM_ASSOC_TRIPLES = 1_000_000
TABLE_HEADER = "group-table v1"


class FiniteGroup:
    """A group stored as its multiplication table.

    ``table[i, j]`` is the id of ``i * j``.  ``elements`` optionally maps ids to
    concrete objects (for SL2 these are :class:`~scharlau.sl2.Mat2`).
    """

    def __init__(self, table, elements: Sequence | None = None, name: str = "",
                 check: bool = True, seed: int = 0):
        table = np.ascontiguousarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise BadTable("multiplication table must be a non-empty square array")
        self.table = table
        self.order = n = table.shape[0]
        self.name = name
        self.elements = list(elements) if elements is not None else None
        self._index = None
        if check:
            _check_table(table, seed)
        inv = np.empty(n, dtype=np.int32)
        rows, cols = np.nonzero(table == 0)
        inv[rows] = cols
        self.inverse = inv
        self.table.flags.writeable = False
        self.inverse.flags.writeable = False

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order'}={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def power(self, a: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = int(self.table[r, a])
        return r

    def id_of(self, obj) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return self._index[obj]

    def label(self, g: int) -> str:
        if self.elements is None:
            return f"g{g}"
        return str(self.elements[g])

    def conjugates_of(self, ids) -> np.ndarray:
        """Array ``A[g, k] = g * ids[k] * g^-1`` over every g in the group."""
        ids = np.asarray(ids, dtype=np.int64)
        left = self.table[:, ids]
        return self.table[left, self.inverse[:, None]]

    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        cur = np.arange(n)
        k = 1
        idx = np.arange(n)
        while (orders == 0).any():
            cur = self.table[cur, idx]
            k += 1
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
        return orders

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def cyclic_subgroup(self, g: int) -> "Subgroup":
        members = [0]
        x = g
        while x != 0:
            members.append(x)
            x = int(self.table[x, g])
        return Subgroup(self, members)


def _check_table(table: np.ndarray, seed: int = 0):
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise BadTable(f"entries must lie in [0, {n - 1}]")
    ar = np.arange(n)
    if not (table[0] == ar).all() or not (table[:, 0] == ar).all():
        raise BadTable("id 0 is not the identity")
    srt = np.sort(table, axis=1)
    bad = np.nonzero((srt != ar).any(axis=1))[0]
    if bad.size:
        raise BadTable(f"row {int(bad[0])} is not a permutation")
    srt = np.sort(table, axis=0)
    bad = np.nonzero((srt != ar[:, None]).any(axis=0))[0]
    if bad.size:
        raise BadTable(f"column {int(bad[0])} is not a permutation")
    if n <= FULL_ASSOC_CHECK:
        for a in range(n):
            # (a b) c  vs  a (b c), for all b, c
            if not (table[table[a]] == table[a][table]).all():
                raise BadTable(f"multiplication is not associative (left factor {a})")
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, RANDOM_ASSOC_TRIPLES))
        if not (table[table[a, b], c] == table[a, table[b, c]]).all():
            raise BadTable("multiplication is not associative (random triple)")


class Subgroup:
    """A subgroup as a sorted tuple of element ids."""

    __slots__ = ("parent", "elements", "_set")

    def __init__(self, parent: FiniteGroup, elements: Iterable[int]):
        self.parent = parent
        self.elements = tuple(sorted(set(int(e) for e in elements)))
        self._set = frozenset(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self._set

    @property
    def order(self) -> int:
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.elements == self.elements)

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"Subgroup(order={len(self)})"

    def is_closed(self) -> bool:
        ids = np.asarray(self.elements)
        if 0 not in self._set:
            return False
        prods = self.parent.table[np.ix_(ids, ids)]
        return bool(np.isin(prods, ids).all() and np.isin(self.parent.inverse[ids], ids).all())


@dataclass(frozen=True)
class Partition:
    parent: FiniteGroup
    blocks: tuple

    def check(self):
        G = self.parent
        count = np.zeros(G.order, dtype=np.int64)
        for b in self.blocks:
            if not b.is_closed():
                return False
            count[list(b.elements)] += 1
        return count[0] == len(self.blocks) and bool((count[1:] == 1).all())

    def __len__(self):
        return len(self.blocks)


# ---------------------------------------------------------------- orbit machinery

def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, tuple]]:
    """All classes as ``(representative, sorted members)``; representative is the minimal id."""
    seen = np.zeros(G.order, dtype=bool)
    out = []
    inv = G.inverse
    for x in range(G.order):
        if seen[x]:
            continue
        orbit = np.unique(G.table[G.table[:, x], inv])
        seen[orbit] = True
        out.append((x, tuple(int(i) for i in orbit)))
    return out


def class_of(G: FiniteGroup, x: int) -> tuple:
    return tuple(int(i) for i in np.unique(G.table[G.table[:, x], G.inverse]))


def centralizer(G: FiniteGroup, x: int) -> Subgroup:
    return Subgroup(G, np.nonzero(G.table[:, x] == G.table[x, :])[0])


def set_stabilizer(G: FiniteGroup, S) -> Subgroup:
    """{g : g S g^-1 = S} for a non-empty set of ids."""
    S = np.unique(np.asarray(list(S), dtype=np.int64))
    if S.size == 0:
        raise ValueError("set_stabilizer needs a non-empty set")
    images = np.sort(G.conjugates_of(S), axis=1)
    return Subgroup(G, np.nonzero((images == S).all(axis=1))[0])


def prime_order_subgroups(G: FiniteGroup) -> list[Subgroup]:
    orders = G.element_orders()
    seen = set()
    out = []
    for g in range(1, G.order):
        k = int(orders[g])
        if not is_prime(k):
            continue
        H = G.cyclic_subgroup(g)
        if H.elements not in seen:
            seen.add(H.elements)
            out.append(H)
    return out


def left_cosets(G: FiniteGroup, H) -> list[tuple]:
    """Left cosets gH ordered by their smallest member."""
    h = np.asarray(list(H), dtype=np.int64)
    covered = np.zeros(G.order, dtype=bool)
    out = []
    for g in range(G.order):
        if covered[g]:
            continue
        coset = np.sort(G.table[g, h])
        covered[coset] = True
        out.append(tuple(int(i) for i in coset))
    return out


def all_subgroups(G: FiniteGroup, max_order: int = 120) -> list[Subgroup]:
    """Every subgroup, by closing joins of cyclic subgroups.  Brute force; small groups only."""
    if G.order > max_order:
        raise ValueError(f"all_subgroups is limited to order <= {max_order}")
    cyclic = {G.cyclic_subgroup(g).elements for g in range(G.order)}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for A in frontier:
            for C in cyclic:
                if set(C) <= set(A):
                    continue
                J = _generate(G, set(A) | set(C))
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return [Subgroup(G, s) for s in sorted(found, key=lambda s: (len(s), s))]


def _generate(G: FiniteGroup, gens: set) -> tuple:
    members = {0} | gens
    frontier = list(members)
    gens = list(gens)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = int(G.table[x, g])
                if y not in members:
                    members.add(y)
                    new.append(y)
        frontier = new
    return tuple(sorted(members))


def find_partition(G: FiniteGroup, max_order: int = 500, budget: int = 200_000) -> Partition | None:
    """Search for a partition of G into cyclic subgroups.

    Greedy with backtracking: the smallest uncovered element is covered by a
    cyclic subgroup (largest first) meeting the current blocks trivially.
    Returns None when the search is exhausted or the node budget runs out.
    """
    if G.order > max_order:
        raise ValueError(f"find_partition is limited to order <= {max_order}")
    if G.order == 1:
        return None
    cyclic = {}
    for g in range(1, G.order):
        H = G.cyclic_subgroup(g).elements
        cyclic.setdefault(H, frozenset(H))
    by_element: dict[int, list] = {g: [] for g in range(1, G.order)}
    for H, s in sorted(cyclic.items(), key=lambda kv: (-len(kv[0]), kv[0])):
        for g in H[1:]:
            by_element[g].append(s)
    covered = np.zeros(G.order, dtype=bool)
    covered[0] = True
    chosen: list = []
    nodes = 0

    def search():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return False
        rest = np.nonzero(~covered)[0]
        if rest.size == 0:
            return True
        x = int(rest[0])
        for s in by_element[x]:
            others = [g for g in s if g != 0]
            if covered[others].any():
                continue
            covered[others] = True
            chosen.append(s)
            if search():
                return True
            chosen.pop()
            covered[others] = False
        return False

    if not search():
        return None
    blocks = tuple(Subgroup(G, s) for s in sorted(chosen, key=lambda s: min(s - {0})))
    return Partition(G, blocks)


# ---------------------------------------------------------------- built-in families

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise BadSpec("cyclic group needs n >= 1")
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, name=f"C{n}")


_QUAT_UNITS = "1ijk"
# unit products as (sign, unit index): i*j = k, j*k = i, k*i = j, i^2 = -1, ...
_QUAT_MUL = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion8() -> FiniteGroup:
    # id = 2*unit + (sign is negative)
    elems = [(s, u) for u in range(4) for s in (1, -1)]
    idx = {e: i for i, e in enumerate(elems)}
    table = np.empty((8, 8), dtype=np.int32)
    for i, (s1, u1) in enumerate(elems):
        for j, (s2, u2) in enumerate(elems):
            s, u = _QUAT_MUL[u1, u2]
            table[i, j] = idx[(s * s1 * s2, u)]
    labels = [("-" if s < 0 else "") + _QUAT_UNITS[u] for s, u in elems]
    return FiniteGroup(table, elements=labels, name="Q8")


def gpq(p: int, q: int) -> FiniteGroup:
    """Z/p x| Z/q with generator of Z/q acting by the smallest r of order q mod p."""
    if not (is_prime(p) and is_prime(q)):
        raise BadSpec(f"gpq needs primes, got {p}, {q}")
    if (p - 1) % q:
        raise BadSpec(f"{q} does not divide {p} - 1")
    r = next(r for r in range(2, p) if pow(r, q, p) == 1)
    rpow = [pow(r, k, p) for k in range(q)]
    # element (a, b) <-> id b*p + a ; (a1,b1)(a2,b2) = (a1 + r^b1 a2, b1 + b2)
    n = p * q
    ids = np.arange(n)
    a, b = ids % p, ids // p
    rp = np.asarray(rpow)[b]
    A = (a[:, None] + rp[:, None] * a[None, :]) % p
    B = (b[:, None] + b[None, :]) % q
    labels = [f"({int(x)},{int(y)})" for x, y in zip(a, b)]
    return FiniteGroup(B * p + A, elements=labels, name=f"G{p}_{q}")


def read_table(path) -> FiniteGroup:
    text = Path(path).read_text()
    return parse_table(text)


def parse_table(text: str) -> FiniteGroup:
    lines = text.splitlines()
    if not lines or lines[0].strip() != TABLE_HEADER:
        raise BadTable(f"line 1: expected header {TABLE_HEADER!r}")
    try:
        n = int(lines[1].strip())
    except (IndexError, ValueError):
        raise BadTable("line 2: expected the group order") from None
    if n < 1:
        raise BadTable("line 2: order must be positive")
    body = [ln for ln in lines[2:]]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != n:
        raise BadTable(f"expected {n} table rows after line 2, found {len(body)}")
    rows = []
    for k, ln in enumerate(body, start=3):
        try:
            row = [int(t) for t in ln.split()]
        except ValueError:
            raise BadTable(f"line {k}: non-integer entry") from None
        if len(row) != n:
            raise BadTable(f"line {k}: expected {n} entries, found {len(row)}")
        bad = [v for v in row if not 0 <= v < n]
        if bad:
            raise BadTable(f"line {k}: entry {bad[0]} out of range")
        rows.append(row)
    try:
        return FiniteGroup(np.array(rows), name=f"table{n}")
    except BadTable as e:
        msg = str(e)
        if msg.startswith("row "):
            r = int(msg.split()[1])
            raise BadTable(f"line {r + 3}: {msg}") from None
        raise


def format_table(G: FiniteGroup) -> str:
    lines = [TABLE_HEADER, str(G.order)]
    lines += [" ".join(str(int(v)) for v in row) for row in G.table]
    return "\n".join(lines) + "\n"


def builtin(spec: str, max_order: int | None = None) -> FiniteGroup:
    """Build a group from a spec string: ``cyclic:N``, ``quaternion8``, ``gpq:P:Q``, ``sl2:P``, ``table:PATH``."""
    kind, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    try:
        if kind == "cyclic" and len(args) == 1:
            return cyclic(int(args[0]))
        if kind == "quaternion8" and not args:
            return quaternion8()
        if kind == "gpq" and len(args) == 2:
            return gpq(int(args[0]), int(args[1]))
        if kind == "sl2" and len(args) == 1:
            from .sl2 import enumerate_sl2
            p = int(args[0])
            if not is_prime(p) or p == 2:
                raise BadSpec(f"sl2 needs an odd prime, got {p}")
            return enumerate_sl2(p, max_order=max_order if max_order is not None else 10**9)
        if kind == "table" and rest:
            return read_table(rest)
    except ValueError as e:
        if isinstance(e, (BadSpec, BadTable, OrderCap)):
            raise
        raise BadSpec(f"bad group spec {spec!r}: {e}") from None
    raise BadSpec(f"unrecognized group spec {spec!r}")
