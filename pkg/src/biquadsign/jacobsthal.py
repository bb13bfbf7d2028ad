"""Jacobsthal sums phi_k(m), psi_k(m) over F_p.

    phi_k(m) = sum_{x=1}^{p-1} (x/p) ((x^k + m)/p)
    psi_k(m) = sum_{x=1}^{p-1} ((x^k + m)/p)

The sums are evaluated term by term from the cached Legendre table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import PrimeContext, QuarticClass, powmod_array, quartic_class

# cells of the (m, x) grid evaluated per numpy call
_CHUNK_CELLS = 1 << 22


@dataclass(frozen=True)
class JacobsthalResult:
    p: int
    k: int
    m: int
    phi: int
    psi: int


def _nonzero(m: int, ctx: PrimeContext) -> int:
    m %= ctx.p
    if m == 0:
        raise ValueError(f"m must not be divisible by p={ctx.p}")
    return m


def jacobsthal_sums(ms, k: int, ctx: PrimeContext) -> tuple[np.ndarray, np.ndarray]:
    """(phi_k(m), psi_k(m)) for every m in ``ms``, by direct summation over x."""
    if k < 1:
        raise ValueError("k must be positive")
    p = ctx.p
    ms = np.asarray(ms, dtype=np.int64) % p
    if np.any(ms == 0):
        raise ValueError(f"m must not be divisible by p={p}")
    leg = ctx.legendre_table.astype(np.int64)
    x = np.arange(1, p, dtype=np.int64)
    xk = powmod_array(x, k, p)
    lx = leg[1:]
    phi = np.empty(len(ms), dtype=np.int64)
    psi = np.empty(len(ms), dtype=np.int64)
    rows = max(1, _CHUNK_CELLS // p)
    for s in range(0, len(ms), rows):
        block = leg[(xk[None, :] + ms[s : s + rows, None]) % p]
        psi[s : s + rows] = block.sum(axis=1)
        phi[s : s + rows] = block @ lx
    return phi, psi


def phi_k(m: int, k: int, ctx: PrimeContext) -> int:
    phi, _ = jacobsthal_sums([_nonzero(m, ctx)], k, ctx)
    return int(phi[0])


def psi_k(m: int, k: int, ctx: PrimeContext) -> int:
    _, psi = jacobsthal_sums([_nonzero(m, ctx)], k, ctx)
    return int(psi[0])


def jacobsthal(m: int, k: int, ctx: PrimeContext) -> JacobsthalResult:
    m = _nonzero(m, ctx)
    phi, psi = jacobsthal_sums([m], k, ctx)
    return JacobsthalResult(ctx.p, k, m, int(phi[0]), int(psi[0]))


def phi2_closed(m: int, ctx: PrimeContext) -> int:
    """phi_2(m) from the quartic class of m: 2a, 4b, -2a, -4b for 1, iota, -1, -iota."""
    cls = quartic_class(_nonzero(m, ctx), ctx)
    return {
        QuarticClass.ONE: 2 * ctx.a,
        QuarticClass.I: 4 * ctx.b,
        QuarticClass.MINUS_ONE: -2 * ctx.a,
        QuarticClass.MINUS_I: -4 * ctx.b,
    }[cls]


def phi2_closed_table(ctx: PrimeContext) -> np.ndarray:
    """phi2_closed for every residue 1..p-1 at once (index 0 unused)."""
    values = np.array([2 * ctx.a, 4 * ctx.b, -2 * ctx.a, -4 * ctx.b], dtype=np.int64)
    out = values[ctx.quartic_table.astype(np.int64) % 4]
    out[0] = 0
    return out


def check_doubling(m: int, k: int, ctx: PrimeContext) -> bool:
    """psi_{2k}(m) == psi_k(m) + phi_k(m)."""
    m = _nonzero(m, ctx)
    phi, psi = jacobsthal_sums([m], k, ctx)
    _, psi2 = jacobsthal_sums([m], 2 * k, ctx)
    return int(psi2[0]) == int(psi[0]) + int(phi[0])
