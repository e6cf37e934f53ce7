"""SL2(Z/p) as explicit 2x2 matrices.

Conjugacy classes are labelled by trace, with the trace +-2 classes split
into the central element and two unipotent classes told apart by the square
class of the upper-right entry after conjugating into E12(b) form.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

import numpy as np

from .errors import NotInSL2, OrderCap
from .groups import FiniteGroup
from .modp import Prime, as_prime, legendre, smallest_nonresidue, solve_u, sqrt_mod

DEFAULT_MAX_ORDER = 5000


@dataclass(frozen=True)
class Mat2:
    """[[a, b], [c, d]] over Z/p with determinant 1.  Entries are stored reduced."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        p = int(self.p)
        vals = [int(x) % p for x in (self.a, self.b, self.c, self.d)]
        for name, v in zip("abcd", vals):
            object.__setattr__(self, name, v)
        object.__setattr__(self, "p", p)
        if (vals[0] * vals[3] - vals[1] * vals[2]) % p != 1:
            raise NotInSL2(f"det of {self} is not 1 mod {p}")

    @classmethod
    def identity(cls, p) -> "Mat2":
        return cls(1, 0, 0, 1, int(p))

    @classmethod
    def elementary(cls, b, p) -> "Mat2":
        """E12(b) = [[1, b], [0, 1]]"""
        return cls(1, int(b), 0, 1, int(p))

    @classmethod
    def diag(cls, x, p) -> "Mat2":
        x = int(x)
        return cls(x, 0, 0, pow(x, -1, int(p)), int(p))

    def __mul__(self, o: "Mat2") -> "Mat2":
        if o.p != self.p:
            raise ValueError("matrices over different primes")
        a, b, c, d, p = self.a, self.b, self.c, self.d, self.p
        return Mat2(a * o.a + b * o.c, a * o.b + b * o.d,
                    c * o.a + d * o.c, c * o.b + d * o.d, p)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d, self.p)

    def inverse(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a, self.p)

    def __pow__(self, k: int) -> "Mat2":
        base = self if k >= 0 else self.inverse()
        out = Mat2.identity(self.p)
        for _ in range(abs(k)):
            out = out * base
        return out

    def conj(self, g: "Mat2") -> "Mat2":
        """g self g^-1"""
        return g * self * g.inverse()

    @property
    def trace(self) -> int:
        return (self.a + self.d) % self.p

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def order(self) -> int:
        k, x = 1, self
        while not x.is_identity():
            x = x * self
            k += 1
        return k

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


@total_ordering
@dataclass(frozen=True)
class ClassLabel:
    """Conjugacy class label.  ``tag`` is one of I, -I, T, Q, -T, -Q, trace."""

    tag: str
    t: int | None = None

    _ORDER = {"I": 0, "-I": 1, "T": 2, "Q": 3, "-T": 4, "-Q": 5, "trace": 6}

    def __lt__(self, other):
        return (self._ORDER[self.tag], self.t or 0) < (other._ORDER[other.tag], other.t or 0)

    @property
    def is_central(self):
        return self.tag in ("I", "-I")

    @property
    def is_unipotent(self):
        return self.tag in ("T", "Q", "-T", "-Q")

    def __str__(self):
        if self.tag == "trace":
            return f"Trace({self.t})"
        if self.is_central:
            return f"Central({'+' if self.tag == 'I' else ''}{self.tag})"
        return f"Unipotent({self.tag})"


def all_labels(p) -> list[ClassLabel]:
    p = int(p)
    fixed = [ClassLabel(t) for t in ("I", "-I", "T", "Q", "-T", "-Q")]
    return fixed + [ClassLabel("trace", t) for t in range(p) if t not in (2, p - 2)]


def unipotent_parameter(m: Mat2) -> int:
    """For trace-2 m != I, the b with m conjugate to E12(b) via an eigenvector basis."""
    p = m.p
    n = ((m.a - 1) % p, m.b, m.c, (m.d - 1) % p)
    # columns of m - I span its kernel (rank 1, nilpotent)
    v = (n[0], n[2]) if (n[0] or n[2]) else (n[1], n[3])
    x, y = v
    if x:
        P = Mat2(x, 0, y, pow(x, -1, p), p)
    else:
        P = Mat2(0, -pow(y, -1, p), y, 0, p)
    u = P.inverse() * m * P
    assert (u.a, u.c, u.d) == (1, 0, 1), u
    return u.b


def classify(m: Mat2) -> ClassLabel:
    p, t = m.p, m.trace
    if t not in (2, p - 2):
        return ClassLabel("trace", t)
    sign = "" if t == 2 else "-"
    base = m if t == 2 else -m
    if base.is_identity():
        return ClassLabel(sign + "I")
    b = unipotent_parameter(base)
    square = legendre(Prime(p)(b)) == 1
    return ClassLabel(sign + ("T" if square else "Q"))


def is_split_trace(t: int, p) -> bool:
    """t^2 - 4 a non-zero square: the class meets the diagonal torus."""
    P = as_prime(p)
    disc = P(t * t - 4)
    if disc == 0:
        raise ValueError(f"trace {t} is +-2")
    return legendre(disc) == 1


def class_size(label: ClassLabel, p) -> int:
    p = int(p)
    if label.is_central:
        return 1
    if label.is_unipotent:
        return (p * p - 1) // 2
    return p * (p + 1) if is_split_trace(label.t, p) else p * (p - 1)


def trace_census(p) -> tuple[int, int]:
    """(split, non-split) counts over traces t != +-2, by direct evaluation."""
    p = int(p)
    split = sum(is_split_trace(t, p) for t in range(p) if t not in (2, p - 2))
    return split, p - 2 - split


def class_size_total(p: int) -> int:
    """Sum of class sizes using the closed-form trace census."""
    split, nonsplit = (p - 3) // 2, (p - 1) // 2
    return 2 + 4 * (p * p - 1) // 2 + split * p * (p + 1) + nonsplit * p * (p - 1)


@dataclass(frozen=True)
class Sl2SpecialElements:
    p: int
    identity: Mat2
    neg_identity: Mat2
    T: Mat2
    Q: Mat2
    V: Mat2
    alpha: int
    u: int | None = None
    u_inv: int | None = None
    W: Mat2 | None = None
    Delta: Mat2 | None = None

    def check(self):
        P = Prime(self.p)
        I = self.identity
        assert legendre(P(self.alpha)) == -1
        assert self.V ** 3 == I and self.V.trace == P(-1)
        if self.W is not None:
            half = pow(2, -1, self.p)
            assert self.W ** 3 == I and self.W.trace == self.p - 1
            WV, WVi = self.W * self.V, self.W * self.V.inverse()
            assert WV.trace == WVi.trace == self.Delta.trace == half
            assert half not in (2, self.p - 2)


def companion_x2_x_1(p) -> Mat2:
    """Companion matrix of x^2 + x + 1: order 3, trace -1."""
    return Mat2(0, -1, 1, -1, int(p))


def build_specials(p, with_w: bool = True) -> Sl2SpecialElements:
    """The named elements I, -I, T, Q, V and (when ``with_w``) u, W, Delta.

    W = [[0, -1/u], [u, -1]] with u + 1/u = 1/2.
    """
    P = as_prime(p)
    n = P.value
    alpha = smallest_nonresidue(P).residue
    kw = {}
    if with_w:
        sol = solve_u(P)
        u, ui = sol.u.residue, sol.u_inv.residue
        kw = dict(u=u, u_inv=ui, W=Mat2(0, -ui, u, -1, n), Delta=Mat2(u, 0, 0, ui, n))
    sp = Sl2SpecialElements(
        p=n,
        identity=Mat2.identity(n),
        neg_identity=-Mat2.identity(n),
        T=Mat2.elementary(1, n),
        Q=Mat2.elementary(alpha, n),
        V=companion_x2_x_1(n),
        alpha=alpha,
        **kw,
    )
    sp.check()
    return sp


def v_inverse_conjugator(p) -> Mat2:
    """antidiag(a, a) with a^2 = -1, conjugating V to V^-1 (needs p = 1 mod 4)."""
    P = as_prime(p)
    a = sqrt_mod(P(-1)).residue
    J = Mat2(0, a, a, 0, P.value)
    V = companion_x2_x_1(P.value)
    assert V.conj(J) == V.inverse()
    return J


def enumerate_sl2(p, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Materialize SL2(Z/p) as a multiplication-table group; the identity gets id 0."""
    P = as_prime(p)
    n = P.value
    if n == 2:
        raise ValueError("p must be odd")
    order = (n - 1) * n * (n + 1)
    if order > max_order:
        raise OrderCap(f"|SL2(Z/{n})| = {order} exceeds the order cap {max_order}")
    r = np.arange(n)
    a, b, c, d = (x.ravel() for x in np.meshgrid(r, r, r, r, indexing="ij"))
    keep = (a * d - b * c) % n == 1
    a, b, c, d = a[keep], b[keep], c[keep], d[keep]
    key = ((a * n + b) * n + c) * n + d
    ident = n ** 3 + 1  # key of (1, 0, 0, 1)
    first = np.nonzero(key == ident)[0][0]
    perm = np.r_[first, np.delete(np.arange(key.size), first)]
    a, b, c, d, key = a[perm], b[perm], c[perm], d[perm], key[perm]
    assert key.size == order
    lookup = np.full(n ** 4, -1, dtype=np.int64)
    lookup[key] = np.arange(order)
    table = np.empty((order, order), dtype=np.int32)
    for i in range(order):
        ra = (a[i] * a + b[i] * c) % n
        rb = (a[i] * b + b[i] * d) % n
        rc = (c[i] * a + d[i] * c) % n
        rd = (c[i] * b + d[i] * d) % n
        table[i] = lookup[((ra * n + rb) * n + rc) * n + rd]
    elements = [Mat2(int(w), int(x), int(y), int(z), n) for w, x, y, z in zip(a, b, c, d)]
    return FiniteGroup(table, elements=elements, name=f"SL2({n})")
