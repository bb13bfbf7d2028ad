"""Cyclotomic side of the tau_p(g) sign: Vandermonde products at roots of unity.

P(x) = prod_{1<=i<j<=n} (x^(kj) - x^(ki)) with n = (p-1)/k.  At
zeta = exp(2 pi i/(p-1)) its value is n^(n/2) times a fourth root of unity;
reducing P(x) modulo Phi_{p-1}(x) gives the integral polynomial G(x), and
since Phi_{p-1} splits mod p over the primitive roots, G(g) is the
denominator prod (g^(4j) - g^(4i)) mod p.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import PrimeContext, factorize, is_primitive_root, power_table, primitive_roots
from .counts import pair_product

NUMERIC_MAX_N = 64
SPLIT_CHECK_MAX_P = 500


def nu2(n: int) -> int:
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class ClosedFormPz:
    """sign * i^imag * n^(n/2), stored exactly.

    ``phase`` is the exponent e of i^e, so phase in {0, 2} means a real value.
    """

    n: int
    sign_exponent: int
    imaginary: bool

    @property
    def phase(self) -> int:
        return (2 * (self.sign_exponent % 2) + (1 if self.imaginary else 0)) % 4

    @property
    def magnitude_sq(self) -> int:
        """|P(zeta)|^2 = n^n."""
        return self.n**self.n

    def square(self) -> int:
        """P(zeta)^2 as an exact integer: i^(2 phase) * n^n."""
        return (-1) ** self.phase * self.magnitude_sq

    def value(self) -> complex:
        return 1j**self.phase * self.n ** (self.n / 2)


def p_closed(n: int) -> ClosedFormPz:
    if n < 1:
        raise ValueError("n must be positive")
    if n % 2 == 0:
        if nu2(n) == 1:
            return ClosedFormPz(n, (n - 2) // 4, False)
        return ClosedFormPz(n, (n - 4) // 4, True)
    if n % 4 == 1:
        return ClosedFormPz(n, (n - 1) // 4, False)
    return ClosedFormPz(n, (n + 1) // 4, True)


def p_eval_numeric(n: int, k: int, p_minus_1: int) -> complex:
    """P(zeta) in floating point, zeta = exp(2 pi i / (p-1))."""
    if k * n != p_minus_1:
        raise ValueError("need k * n == p - 1")
    if n > NUMERIC_MAX_N:
        raise ValueError(f"n={n} exceeds the floating-point bound {NUMERIC_MAX_N}")
    z = [cmath.exp(2j * math.pi * ((k * j) % p_minus_1) / p_minus_1) for j in range(1, n + 1)]
    out = complex(1.0)
    for i in range(n):
        for j in range(i + 1, n):
            out *= z[j] - z[i]
    return out


def g_poly_value(ctx: PrimeContext, g: int) -> int:
    """G(g) mod p for n = (p-1)/4."""
    ctx.require_mod8()
    p, n = ctx.p, ctx.n
    mag = pow(n, n // 2, p)
    if nu2(n) == 1:
        return (-1) ** ((n - 2) // 4) * mag % p
    return (-1) ** ((n - 4) // 4) * mag * pow(g, ctx.n, p) % p


def denominator_floor_variant(ctx: PrimeContext, g: int) -> int:
    """The denominator via the floor(p/16) expression, for comparison with G(g)."""
    ctx.require_mod8()
    p = ctx.p
    chi2 = 1 if pow(2, ctx.n, p) == 1 else -1
    if p % 16 == 9:
        return (-1) ** (p // 16 + 1) * chi2 % p
    return (-1) ** (p // 16) * chi2 * pow(g, ctx.n, p) % p


@lru_cache(maxsize=4096)
def _power_vandermonde(p: int, h: int, n: int) -> int:
    return pair_product(power_table(h, n + 1, p)[1:], p)


def denominator_product(ctx: PrimeContext, g: int) -> int:
    """prod_{1<=i<j<=(p-1)/4} (g^(4j) - g^(4i)) mod p, multiplied out.

    The product only depends on g^4, so it is memoised on that value.
    """
    ctx.require_mod8()
    if not is_primitive_root(g, ctx.p):
        raise ValueError(f"{g} is not a primitive root mod {ctx.p}")
    return _power_vandermonde(ctx.p, pow(g, 4, ctx.p), ctx.n)


# -- cyclotomic polynomials ------------------------------------------------------


def _poly_mul(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _poly_divexact(f: list[int], g: list[int]) -> list[int]:
    """f / g for monic g, raising if the division leaves a remainder."""
    f = list(f)
    dg = len(g) - 1
    q = [0] * (len(f) - dg)
    for i in range(len(q) - 1, -1, -1):
        c = f[i + dg]
        q[i] = c
        if c:
            for j, b in enumerate(g):
                f[i + j] -= c * b
    if any(f[:dg]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, list(cyclotomic_poly(d)))
    return tuple(_poly_divexact(num, den))


def euler_phi(n: int) -> int:
    out = n
    for q in factorize(n):
        out -= out // q
    return out


def cyclotomic_split_check(p: int) -> bool:
    """Phi_{p-1}(x) == prod over primitive roots g of (x - g), coefficientwise mod p."""
    if p > SPLIT_CHECK_MAX_P:
        raise ValueError(f"split check is limited to p <= {SPLIT_CHECK_MAX_P}")
    phi = [c % p for c in cyclotomic_poly(p - 1)]
    prod = [1]
    for g in primitive_roots(p):
        prod = [c % p for c in _poly_mul(prod, [-g, 1])]
    return prod == phi
