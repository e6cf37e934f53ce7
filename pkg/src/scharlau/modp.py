"""Arithmetic in Z/p and the bits of number theory needed around it.

Legendre symbols are evaluated with Euler's criterion; quadratic reciprocity
only appears in :func:`verify_reciprocity_chain`, where it is checked rather
than used.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ModulusMismatch, NoRoot, NoSolution, NotPrime, ViolatedPrediction

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _is_fermat(n: int) -> bool:
    m = n - 1
    if m < 2 or m & (m - 1):
        return False
    k = m.bit_length() - 1
    return k & (k - 1) == 0


@dataclass(frozen=True)
class Prime:
    value: int
    is_fermat: bool = field(init=False, repr=False, compare=False)
    is_17_mod_60: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.value, int) or not is_prime(self.value):
            raise NotPrime(f"{self.value!r} is not prime")
        object.__setattr__(self, "is_fermat", _is_fermat(self.value))
        object.__setattr__(self, "is_17_mod_60", self.value % 60 == 17)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __str__(self):
        return str(self.value)

    def __call__(self, residue: int) -> "ModPElement":
        return ModPElement(residue, self)


def as_prime(p) -> Prime:
    return p if isinstance(p, Prime) else Prime(int(p))


@dataclass(frozen=True)
class ModPElement:
    residue: int
    modulus: Prime

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.modulus.value)

    @property
    def p(self) -> int:
        return self.modulus.value

    def _coerce(self, other) -> int | None:
        if isinstance(other, ModPElement):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"mod {other.p} mixed with mod {self.p}")
            return other.residue
        if isinstance(other, int):
            return other
        return None

    def _new(self, r: int) -> "ModPElement":
        return ModPElement(r, self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(self.residue - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(o - self.residue)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._new(self.residue * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def inverse(self) -> "ModPElement":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return self._new(pow(self.residue, -1, self.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * self._new(o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.inverse() * o

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** -k
        return self._new(pow(self.residue, k, self.p))

    def __eq__(self, other):
        if isinstance(other, ModPElement):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, int):
            return (other - self.residue) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.p})"


def legendre(a: ModPElement) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    p = a.p
    if p == 2:
        raise ValueError("Legendre symbol needs an odd prime modulus")
    if a.residue == 0:
        return 0
    return 1 if pow(a.residue, (p - 1) // 2, p) == 1 else -1


def smallest_nonresidue(p) -> ModPElement:
    P = as_prime(p)
    for r in range(2, P.value):
        if legendre(P(r)) == -1:
            return P(r)
    raise ValueError(f"no quadratic non-residue mod {P.value}")


def sqrt_mod(a: ModPElement) -> ModPElement:
    """Square root of ``a`` by Tonelli-Shanks; the smaller of the two roots is returned.

    Raises NoRoot when ``a`` is a non-residue.
    """
    p = a.p
    if legendre(a) == -1:
        raise NoRoot(f"{a.residue} is not a square mod {p}")
    n = a.residue
    if n == 0:
        return a
    if p % 4 == 3:
        r = pow(n, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = smallest_nonresidue(a.modulus).residue
        m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    if r * r % p != n:
        raise AssertionError(f"sqrt_mod produced a non-root {r} for {n} mod {p}")
    return a._new(min(r, p - r))


@dataclass(frozen=True)
class LemmaSixSolution:
    """A root u of u^2 - u/2 + 1 = 0, i.e. u + 1/u = 1/2 in Z/p."""

    p: Prime
    u: ModPElement
    u_inv: ModPElement
    half: ModPElement

    def check(self):
        u, ui, h = self.u, self.u_inv, self.half
        assert u * ui == 1
        assert u + ui == h
        assert 2 * h == 1
        assert u * u - h * u + 1 == 0
        assert h != 2 and h != -2


def solve_u(p) -> LemmaSixSolution:
    P = as_prime(p)
    if P.value in (2, 3, 5):
        raise NoSolution(f"p = {P.value} is excluded")
    half = P(2).inverse()
    disc = half * half - 4  # = -15/4
    try:
        root = sqrt_mod(disc)
    except NoRoot:
        raise NoSolution(f"-15 is a non-residue mod {P.value}") from None
    r1, r2 = (half + root) * half, (half - root) * half
    u, u_inv = (r1, r2) if r1.residue <= r2.residue else (r2, r1)
    sol = LemmaSixSolution(P, u, u_inv, half)
    sol.check()
    return sol


@dataclass(frozen=True)
class ReciprocityReport:
    p: int
    factors: tuple[int, int, int]
    predicted: tuple[int, int, int]
    product: int


def _small_legendre(a: int, q: int) -> int:
    return legendre(ModPElement(a, Prime(q)))


def verify_reciprocity_chain(p) -> ReciprocityReport:
    """Evaluate (-1/p), (3/p), (5/p) directly and against reciprocity predictions.

    With p = 1 (mod 4), reciprocity gives (3/p) = (p/3) and (5/p) = (p/5), and
    p = 2 (mod 3) and (mod 5) makes both -1.
    """
    P = as_prime(p)
    if not P.is_17_mod_60:
        raise ValueError(f"p = {P.value} is not 17 mod 60")
    v = P.value
    factors = (legendre(P(-1)), legendre(P(3)), legendre(P(5)))
    predicted = (
        1 if v % 4 == 1 else -1,
        _small_legendre(v % 3, 3),
        _small_legendre(v % 5, 5),
    )
    if predicted != (1, -1, -1) or factors != predicted:
        raise ViolatedPrediction(f"p={v}: factors {factors}, predicted {predicted}")
    product = factors[0] * factors[1] * factors[2]
    if product != 1 or legendre(P(-15)) != 1:
        raise ViolatedPrediction(f"p={v}: (-15/p) != 1")
    return ReciprocityReport(v, factors, predicted, product)


def fermat_primes_satisfy_congruence(k_max: int) -> list[tuple[int, bool]]:
    """Check 2^(2^k) + 1 = 17 (mod 60) for 2 <= k <= k_max (congruence only)."""
    return [(k, (2 ** (2 ** k) + 1) % 60 == 17) for k in range(2, k_max + 1)]


def primes_17_mod_60(limit: int) -> list[int]:
    """Primes p <= limit with p = 17 (mod 60), by a sieve."""
    if limit < 17:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [n for n in range(17, limit + 1, 60) if sieve[n]]
