"""Sparse integral group ring Z[G].

Coefficients are Python ints throughout.  Orbit computations run on numpy id
arrays and only touch coefficients when the result is assembled, so no
coefficient ever passes through a fixed-width integer.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable

import numpy as np

from .errors import ParentMismatch
from .groups import FiniteGroup, class_of

_INT64_SAFE = 2 ** 62


class RingElement:
    """An element of Z[G] as a sparse ``{element id: coefficient}`` map."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: FiniteGroup, coeffs: dict[int, int] | None = None):
        self.parent = parent
        self.coeffs = {int(g): int(c) for g, c in (coeffs or {}).items() if c}

    @classmethod
    def _raw(cls, parent, coeffs):
        x = cls.__new__(cls)
        x.parent = parent
        x.coeffs = coeffs
        return x

    def _check(self, other: "RingElement"):
        if not isinstance(other, RingElement):
            raise TypeError(f"expected a RingElement, got {type(other).__name__}")
        if other.parent is not self.parent:
            raise ParentMismatch("ring elements over different groups")

    def __getitem__(self, g: int) -> int:
        return self.coeffs.get(g, 0)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.coeffs))

    def augmentation(self) -> int:
        return sum(self.coeffs.values())

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == ({0: other} if other else {})
        if not isinstance(other, RingElement):
            return NotImplemented
        return other.parent is self.parent and other.coeffs == self.coeffs

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, int):
            other = other * one(self.parent)
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            v = out.get(g, 0) + c
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return RingElement._raw(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement._raw(self.parent, {g: -c for g, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k: int) -> "RingElement":
        k = int(k)
        if not k:
            return RingElement._raw(self.parent, {})
        return RingElement._raw(self.parent, {g: k * c for g, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(other)
        self._check(other)
        return _convolve(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(other)
        return NotImplemented

    def is_central(self, conjugators: Iterable[int] | None = None) -> bool:
        """Commutes with every listed group element (default: all of G)."""
        G = self.parent
        gs = range(G.order) if conjugators is None else conjugators
        return all(conjugate(G, self, g) == self for g in gs)

    def dense(self) -> list[int]:
        out = [0] * self.parent.order
        for g, c in self.coeffs.items():
            out[g] = c
        return out

    def render(self) -> str:
        """One ``coefficient * label`` line per term, sorted by element id."""
        G = self.parent
        return "\n".join(f"{self.coeffs[g]} * {G.label(g)}" for g in sorted(self.coeffs))

    def __repr__(self):
        terms = sorted(self.coeffs.items())
        body = " + ".join(f"{c}*g{g}" for g, c in terms[:6])
        more = f" + ... ({len(terms)} terms)" if len(terms) > 6 else ""
        return f"RingElement({body or '0'}{more})"


def one(G: FiniteGroup) -> RingElement:
    return RingElement._raw(G, {0: 1})


def set_sum(G: FiniteGroup, S: Iterable[int]) -> RingElement:
    S = set(int(s) for s in S)
    if any(not 0 <= s < G.order for s in S):
        raise ValueError("set_sum: id out of range")
    return RingElement._raw(G, {s: 1 for s in S})


def class_sum(G: FiniteGroup, rep: int) -> RingElement:
    return set_sum(G, class_of(G, rep))


def _convolve(x: RingElement, y: RingElement) -> RingElement:
    G = x.parent
    if not x.coeffs or not y.coeffs:
        return RingElement._raw(G, {})
    bound = sum(abs(c) for c in x.coeffs.values()) * sum(abs(c) for c in y.coeffs.values())
    if bound < _INT64_SAFE:
        yi = np.fromiter(y.coeffs.keys(), dtype=np.int64, count=len(y.coeffs))
        yc = np.fromiter(y.coeffs.values(), dtype=np.int64, count=len(y.coeffs))
        acc = np.zeros(G.order, dtype=np.int64)
        for a, ca in x.coeffs.items():
            np.add.at(acc, G.table[a, yi], ca * yc)
        nz = np.nonzero(acc)[0]
        return RingElement._raw(G, {int(g): int(acc[g]) for g in nz})
    out: dict[int, int] = defaultdict(int)
    for a, ca in x.coeffs.items():
        row = G.table[a]
        for b, cb in y.coeffs.items():
            out[int(row[b])] += ca * cb
    return RingElement._raw(G, {g: c for g, c in out.items() if c})


def conjugate(G: FiniteGroup, x: RingElement, g: int) -> RingElement:
    """g x g^-1"""
    row, ginv = G.table[g], G.inverse[g]
    return RingElement._raw(G, {int(G.table[row[h], ginv]): c for h, c in x.coeffs.items()})


def _orbit_rows(G: FiniteGroup, x: RingElement):
    """Conjugates of x over all g as canonical rows (ids sorted, coefficient classes alongside)."""
    ids = np.asarray(sorted(x.coeffs), dtype=np.int64)
    values = sorted(set(x.coeffs.values()))
    vidx = {v: k for k, v in enumerate(values)}
    cls = np.asarray([vidx[x.coeffs[int(i)]] for i in ids], dtype=np.int64)
    conj = G.conjugates_of(ids)
    order = np.argsort(conj, axis=1, kind="stable")
    return np.take_along_axis(conj, order, axis=1), cls[order], values


def _assemble(G, ids: np.ndarray, cls: np.ndarray, values: list[int]) -> RingElement:
    out: dict[int, int] = defaultdict(int)
    for k, v in enumerate(values):
        counts = np.bincount(ids[cls == k], minlength=G.order)
        for g in np.nonzero(counts)[0]:
            out[int(g)] += v * int(counts[g])
    return RingElement._raw(G, {g: c for g, c in out.items() if c})


def distinct_conjugates(G: FiniteGroup, x: RingElement):
    """The conjugation orbit of x as ``(ids, coefficient classes, values, conjugators)``.

    Row r of ``ids`` is the sorted support of one distinct conjugate, obtained
    as ``conjugators[r] * x * conjugators[r]^-1``.
    """
    ids, cls, values = _orbit_rows(G, x)
    key = np.concatenate([ids, cls], axis=1)
    _, first = np.unique(key, axis=0, return_index=True)
    first = np.sort(first)
    return ids[first], cls[first], values, first


def orbit_size(G: FiniteGroup, x: RingElement) -> int:
    if not x.coeffs:
        return 1
    return len(distinct_conjugates(G, x)[3])


def stabilizer_order(G: FiniteGroup, x: RingElement) -> int:
    """|N(x)|, the order of {g : g x g^-1 = x}, by orbit-stabilizer."""
    return G.order // orbit_size(G, x)


def centralize(G: FiniteGroup, x: RingElement) -> RingElement:
    """c(x): the sum of the distinct conjugates of x."""
    if not x.coeffs:
        return RingElement._raw(G, {})
    ids, cls, values, _ = distinct_conjugates(G, x)
    return _assemble(G, ids, cls, values)


def maschke(G: FiniteGroup, x: RingElement) -> RingElement:
    """m(x): the sum of g x g^-1 over every g in G."""
    if not x.coeffs:
        return RingElement._raw(G, {})
    ids, cls, values = _orbit_rows(G, x)
    return _assemble(G, ids, cls, values)
