"""Modular arithmetic core for primes p = 1 (mod 4).

Residue symbols, the representation p = a^2 + 4b^2, primitive roots and
prime enumeration.  Everything here works on plain Python ints; the
vectorised helpers at the bottom use int64 numpy arrays and therefore
require p < 2**31 so that a product of two residues stays exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import isqrt

import numpy as np

MAX_PRIME = 2**62
MAX_VECTOR_PRIME = 2**31


class QuarticClass(enum.IntEnum):
    """Value of m^((p-1)/4) mod p, encoded as the exponent e with m^((p-1)/4) = iota^e.

    iota is the fourth root of unity 2b/a mod p, so ONE/MINUS_ONE are the
    quadratic residues and I/MINUS_I the non-residues.
    """

    ONE = 0
    I = 1
    MINUS_ONE = 2
    MINUS_I = 3

    @property
    def is_square(self) -> bool:
        return self in (QuarticClass.ONE, QuarticClass.MINUS_ONE)


@dataclass(frozen=True)
class Residue:
    """An element of Z/pZ.  Mixing residues of different moduli raises ValueError."""

    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            raise ValueError(f"{self.value} is not reduced mod {self.p}")

    @classmethod
    def of(cls, x: int, p: int) -> "Residue":
        return cls(x % p, p)

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.value
        return other

    def __add__(self, other):
        return Residue.of(self.value + self._other(other), self.p)

    def __sub__(self, other):
        return Residue.of(self.value - self._other(other), self.p)

    def __mul__(self, other):
        return Residue.of(self.value * self._other(other), self.p)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Residue.of(-self.value, self.p)

    def __pow__(self, exp: int):
        return Residue(mod_pow(self.value, exp, self.p), self.p)

    def inverse(self) -> "Residue":
        return Residue(pow(self.value, -1, self.p), self.p)

    def __int__(self):
        return self.value


def mod_pow(base, exp: int, p: int) -> int:
    """base**exp mod p.  Uses the convention 0**0 == 1."""
    if exp < 0:
        raise ValueError("negative exponent")
    if isinstance(base, Residue):
        if base.p != p:
            raise ValueError(f"modulus mismatch: {base.p} vs {p}")
        base = base.value
    return pow(base, exp, p) if p > 1 else 0


def legendre(x: int, p: int) -> int:
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def quartic_symbol(x: int, p: int) -> int:
    """Rational quartic residue symbol: 0, 1 on fourth powers, -1 otherwise
    (including quadratic non-residues)."""
    if p % 4 != 1:
        raise ValueError(f"p={p} is not 1 mod 4")
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 4, p) == 1 else -1


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in small:
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def decompose(p: int) -> tuple[int, int]:
    """The unique (a, b) with p = a^2 + 4b^2, a = -1 (mod 4), b > 0.

    Exhaustive search over b; fine for the desk-scale primes we scan.
    """
    if p % 4 != 1:
        raise ValueError(f"p={p} is not 1 mod 4, no representation a^2 + 4b^2")
    for b in range(1, isqrt(p // 4) + 1):
        rest = p - 4 * b * b
        a = isqrt(rest)
        if a * a == rest:
            return (a if a % 4 == 3 else -a), b
    raise ValueError(f"{p} has no representation a^2 + 4b^2 (not prime?)")


def decompose_cornacchia(p: int) -> tuple[int, int]:
    """Same result as decompose(), via the Euclidean algorithm on a square root of -1."""
    if p % 4 != 1:
        raise ValueError(f"p={p} is not 1 mod 4")
    # any quadratic non-residue c gives c^((p-1)/4) as a square root of -1
    c = 2
    while legendre(c, p) != -1:
        c += 1
    r0, r1 = p, pow(c, (p - 1) // 4, p)
    if r1 > p // 2:
        r1 = p - r1
    limit = isqrt(p)
    while r1 > limit:
        r0, r1 = r1, r0 % r1
    x = r1
    y = isqrt(p - x * x)
    if x * x + y * y != p:
        raise ValueError(f"{p} is not prime")
    odd, even = (x, y) if x % 2 else (y, x)
    a, b = odd, even // 2
    return (a if a % 4 == 3 else -a), b


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_primitive_root(g: int, p: int) -> bool:
    g %= p
    if g == 0:
        return False
    return all(pow(g, (p - 1) // q, p) != 1 for q in factorize(p - 1))


def primitive_roots(p: int) -> list[int]:
    """All g in (0, p) of multiplicative order p - 1, ascending."""
    if p == 2:
        return [1]
    exps = [(p - 1) // q for q in factorize(p - 1)]
    return [g for g in range(2, p) if all(pow(g, e, p) != 1 for e in exps)]


def sieve(limit: int) -> np.ndarray:
    """Boolean array is_prime[0..limit]."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, isqrt(limit) + 1):
        if flags[q]:
            flags[q * q :: q] = False
    return flags


def primes_in_range(lo: int, hi: int, congruence: tuple[int, int] | None = None) -> list[int]:
    """Primes in [lo, hi], optionally restricted to p = r (mod modulus)."""
    lo = max(lo, 2)
    if hi < lo:
        return []
    flags = sieve(hi)
    ps = np.nonzero(flags[lo:])[0] + lo
    if congruence is not None:
        r, modulus = congruence
        ps = ps[ps % modulus == r % modulus]
    return [int(q) for q in ps]


@dataclass(frozen=True)
class PrimeContext:
    """A prime p = 1 (mod 4) together with its decomposition and cached tables.

    Immutable; the cached tables are computed once on first use.
    """

    p: int
    a: int
    b: int

    def __post_init__(self):
        p = self.p
        if not 5 <= p < MAX_PRIME or not is_prime(p):
            raise ValueError(f"{p} is not a prime in [5, 2**62)")
        if p % 4 != 1:
            raise ValueError(f"p={p} is not 1 mod 4")
        if self.a * self.a + 4 * self.b * self.b != p or self.a % 4 != 3 or self.b <= 0:
            raise ValueError(f"({self.a}, {self.b}) is not the canonical decomposition of {p}")

    @classmethod
    def of(cls, p: int) -> "PrimeContext":
        return _context(p)

    @property
    def residue_class_16(self) -> int:
        return self.p % 16

    @property
    def n(self) -> int:
        """(p-1)/4, the number of fourth-power residues."""
        return (self.p - 1) // 4

    @cached_property
    def iota(self) -> int:
        """2b/a mod p, a primitive fourth root of unity."""
        return 2 * self.b * pow(self.a, -1, self.p) % self.p

    @property
    def a_mod(self) -> int:
        return self.a % self.p

    def require_mod8(self):
        if self.p % 8 != 1:
            raise ValueError(f"p={self.p} is not 1 mod 8")

    @cached_property
    def generator(self) -> int:
        """Smallest primitive root."""
        qs = list(factorize(self.p - 1))
        return next(g for g in range(2, self.p) if all(pow(g, (self.p - 1) // q, self.p) != 1 for q in qs))

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return tuple(primitive_roots(self.p))

    @cached_property
    def quartic_table(self) -> np.ndarray:
        """int8 array indexed by residue: QuarticClass value of x, -1 at x = 0.

        Built in one pass over the powers of a primitive root: g^i has
        class (i * e) mod 4 where g^((p-1)/4) = iota^e.
        """
        self._need_vector()
        p, g = self.p, self.generator
        e = 1 if pow(g, self.n, p) == self.iota else 3
        powers = power_table(g, p - 1, p)
        table = np.full(p, -1, dtype=np.int8)
        table[powers] = (np.arange(p - 1) * e) % 4
        return table

    @cached_property
    def legendre_table(self) -> np.ndarray:
        """int8 array of (x/p) for x in [0, p)."""
        q = self.quartic_table
        out = np.where(q % 2 == 0, 1, -1).astype(np.int8)
        out[0] = 0
        return out

    @cached_property
    def chi4_table(self) -> np.ndarray:
        """int8 array of the rational quartic symbol for x in [0, p)."""
        out = np.where(self.quartic_table == 0, 1, -1).astype(np.int8)
        out[0] = 0
        return out

    def _need_vector(self):
        if self.p >= MAX_VECTOR_PRIME:
            raise ValueError(f"p={self.p} too large for int64 tables")


@lru_cache(maxsize=64)
def _context(p: int) -> PrimeContext:
    a, b = decompose(p)
    return PrimeContext(p, a, b)


def quartic_class(m: int, ctx: PrimeContext) -> QuarticClass:
    m %= ctx.p
    if m == 0:
        raise ValueError("quartic class of 0 is undefined")
    v = pow(m, ctx.n, ctx.p)
    for cls, target in (
        (QuarticClass.ONE, 1),
        (QuarticClass.MINUS_ONE, ctx.p - 1),
        (QuarticClass.I, ctx.iota),
        (QuarticClass.MINUS_I, ctx.p - ctx.iota),
    ):
        if v == target:
            return cls
    raise ArithmeticError(f"{m}^((p-1)/4) = {v} is not a fourth root of unity mod {ctx.p}")


def sign_of(v: int, p: int) -> int:
    """Map a residue congruent to +-1 onto the integer +-1."""
    v %= p
    if v == 1:
        return 1
    if v == p - 1:
        return -1
    raise ArithmeticError(f"{v} is not +-1 mod {p}")


# -- vectorised helpers (p < 2**31) -------------------------------------------


def power_table(g: int, count: int, p: int) -> np.ndarray:
    """[g^0, g^1, ..., g^(count-1)] mod p as int64, by doubling."""
    out = np.empty(count, dtype=np.int64)
    if count == 0:
        return out
    out[0] = 1
    filled, step = 1, g % p
    while filled < count:
        take = min(filled, count - filled)
        out[filled : filled + take] = out[:take] * step % p
        filled += take
        step = step * step % p
    return out


def powmod_array(x: np.ndarray, k: int, p: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64) % p
    result = np.ones_like(x)
    while k:
        if k & 1:
            result = result * x % p
        x = x * x % p
        k >>= 1
    return result


def prod_mod(values: np.ndarray, p: int) -> int:
    """Product of an int64 array mod p, by pairwise folding."""
    v = np.asarray(values, dtype=np.int64) % p
    if v.size == 0:
        return 1 % p
    while v.size > 1:
        if v.size % 2:
            v = np.append(v, 1)
        v = v[0::2] * v[1::2] % p
    return int(v[0])
