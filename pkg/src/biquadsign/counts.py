"""Counting objects over the residues of a prime p = 1 (mod 8).

N_p(t), the Omega sets and their products A_p, B_p, the sign bits
beta/gamma/delta/mu, lambda_p via d_p, epsilon_p, and the families
A_m, L_m, r_m^{++}, ... used for the sign of rho_p.

Brute-force routines enumerate; the ``*_closed`` routines evaluate the
corresponding closed forms.  A closed form that fails to be integral
raises ClosedFormError so callers can record it instead of crashing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numba import njit

from .arith import MAX_VECTOR_PRIME, PrimeContext, QuarticClass, legendre, prod_mod, quartic_class, quartic_symbol, sign_of
from .jacobsthal import phi2_closed

_CHUNK_CELLS = 1 << 22


class ClosedFormError(ArithmeticError):
    """A closed-form count came out non-integral."""


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise ClosedFormError(f"{what}: {num}/{den} is not an integer")
    return q


def _nonzero(t: int, ctx: PrimeContext) -> int:
    t %= ctx.p
    if t == 0:
        raise ValueError(f"argument must not be divisible by p={ctx.p}")
    return t


def _bit(v: int, p: int) -> int:
    return 0 if sign_of(v, p) == 1 else 1


# -- residues in (0, p/2) ------------------------------------------------------


def half_residues(ctx: PrimeContext) -> np.ndarray:
    """Quadratic residues a_1 < ... < a_{(p-1)/4} in (0, p/2)."""
    h = (ctx.p - 1) // 2
    x = np.arange(1, h + 1, dtype=np.int64)
    return x[ctx.legendre_table[1 : h + 1] == 1]


def quartic_sequence(ctx: PrimeContext) -> np.ndarray:
    """({a_i^2}_p), i = 1..(p-1)/4."""
    a = half_residues(ctx)
    return a * a % ctx.p


def pair_differences(values: np.ndarray, p: int, rows: int = 512):
    """Yield (values[j] - values[i]) mod p for i < j, in row-major blocks."""
    v = np.asarray(values, dtype=np.int64)
    n = len(v)
    cols = np.arange(n)
    for s in range(0, n, rows):
        block = (v[None, :] - v[s : s + rows, None]) % p
        mask = cols[None, :] > np.arange(s, min(s + rows, n))[:, None]
        yield block[mask]


@njit(cache=True)
def _pair_product_kernel(v, p):
    out = 1
    n = len(v)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * ((v[j] - v[i]) % p) % p
    return out


@njit(cache=True)
def _pair_count_above(v, p, bound):
    count = 0
    n = len(v)
    for i in range(n):
        for j in range(i + 1, n):
            if (v[j] - v[i]) % p > bound:
                count += 1
    return count


def pair_product(values: np.ndarray, p: int) -> int:
    """prod_{i<j} (values[j] - values[i]) mod p."""
    if p >= MAX_VECTOR_PRIME:
        raise ValueError(f"p must be below {MAX_VECTOR_PRIME} for int64 products")
    return int(_pair_product_kernel(np.asarray(values, dtype=np.int64) % p, p))


# -- Omega sets ----------------------------------------------------------------


@dataclass(frozen=True)
class OmegaSets:
    omega_1: tuple[int, ...]
    omega_minus1: tuple[int, ...]
    omega_R: tuple[int, ...]
    omega_i: tuple[int, ...]
    omega_minus_i: tuple[int, ...]


@lru_cache(maxsize=32)
def omega_sets(ctx: PrimeContext) -> OmegaSets:
    """Classify 0 < x < p/2 by x^((p-1)/4) in {1, -1, 2b/a, -2b/a}."""
    ctx.require_mod8()
    h = (ctx.p - 1) // 2
    x = np.arange(1, h + 1)
    cls = ctx.quartic_table[1 : h + 1]

    def pick(*tags):
        return tuple(int(v) for v in x[np.isin(cls, [int(t) for t in tags])])

    return OmegaSets(
        omega_1=pick(QuarticClass.ONE),
        omega_minus1=pick(QuarticClass.MINUS_ONE),
        omega_R=pick(QuarticClass.ONE, QuarticClass.MINUS_ONE),
        omega_i=pick(QuarticClass.I),
        omega_minus_i=pick(QuarticClass.MINUS_I),
    )


def omega_square_products(ctx: PrimeContext) -> tuple[int, int, int]:
    """(prod t^2 over Omega_{2b/a}, Omega_1, Omega_{-1}) mod p."""
    om = omega_sets(ctx)
    p = ctx.p
    return tuple(
        prod_mod(np.asarray(s, dtype=np.int64) ** 2 % p, p)
        for s in (om.omega_i, om.omega_1, om.omega_minus1)
    )


def omega_square_expected(ctx: PrimeContext) -> tuple[int, int, int]:
    """Right-hand sides (-1)^((p+7)/8)*2b/a, (-1)^((p+7)/8), (-1)^((p-1)/8) mod p."""
    ctx.require_mod8()
    p = ctx.p
    s7 = 1 if ((p + 7) // 8) % 2 == 0 else p - 1
    s1 = 1 if ((p - 1) // 8) % 2 == 0 else p - 1
    return s7 * ctx.iota % p, s7, s1


# -- sign parameters -----------------------------------------------------------


@dataclass(frozen=True)
class SignParams:
    """A_p, B_p and the sign bits defined for p's class mod 16.

    beta/gamma exist only for p = 9 (mod 16), delta/mu only for
    p = 1 (mod 16) and a given primitive root g.
    """

    p: int
    A_p: int
    B_p: int
    d_p: int
    lam: int
    epsilon_count: int
    beta: int | None = None
    gamma: int | None = None
    g: int | None = None
    delta: int | None = None
    mu: int | None = None

    @property
    def epsilon_parity(self) -> int:
        return self.epsilon_count % 2


def sign_params(ctx: PrimeContext, g: int | None = None) -> SignParams:
    ctx.require_mod8()
    p = ctx.p
    om = omega_sets(ctx)
    A = prod_mod(np.asarray(om.omega_1, dtype=np.int64), p)
    B = prod_mod(np.asarray(om.omega_minus1, dtype=np.int64), p)
    d_p, lam = lambda_and_d(ctx)
    eps = epsilon(ctx)
    two_b_B_over_a = ctx.iota * B % p
    if p % 16 == 9:
        return SignParams(p, A, B, d_p, lam, eps, beta=_bit(A, p), gamma=_bit(two_b_B_over_a, p), g=g)
    if g is None:
        return SignParams(p, A, B, d_p, lam, eps)
    g_quarter_inv = pow(pow(g, ctx.n, p), -1, p)
    return SignParams(
        p, A, B, d_p, lam, eps, g=g,
        delta=_bit(A * g_quarter_inv, p),
        mu=_bit(two_b_B_over_a * g_quarter_inv, p),
    )


# -- N_p(t) and the proof sums --------------------------------------------------


def n_counts(ctx: PrimeContext) -> np.ndarray:
    """N_p(t) for every t in [0, p): pairs of QRs 0<x<y<p/2 with y^2 - x^2 = t."""
    ctx.require_mod8()
    p = ctx.p
    out = np.zeros(p, dtype=np.int64)
    for diffs in pair_differences(quartic_sequence(ctx), p):
        out += np.bincount(diffs, minlength=p)
    return out


def n_count(t: int, ctx: PrimeContext) -> int:
    t = _nonzero(t, ctx)
    return int(sum(int(np.count_nonzero(d == t)) for d in pair_differences(quartic_sequence(ctx), ctx.p)))


def n_sum_closed(t: int, ctx: PrimeContext) -> int:
    """Closed form of N_p(t) + N_p(-t)."""
    ctx.require_mod8()
    t = _nonzero(t, ctx)
    p, a = ctx.p, ctx.a
    phi = phi2_closed(t, ctx)
    if legendre(t, p) == -1:
        return _exact_div(p - 3 - 2 * a + 2 * phi, 16, f"N_p({t})+N_p(-{t})")
    return _exact_div(p - 7 + 2 * a + 2 * phi - 4 * quartic_symbol(t, p), 16, f"N_p({t})+N_p(-{t})")


@lru_cache(maxsize=8)
def square_classes(ctx: PrimeContext) -> tuple[np.ndarray, np.ndarray]:
    """Per residue c: #{x in [1,p): x^2 = c} and sum of (x/p) over those x."""
    p = ctx.p
    x = np.arange(1, p, dtype=np.int64)
    sq = x * x % p
    count = np.bincount(sq, minlength=p)
    weight = np.bincount(sq, weights=ctx.legendre_table[1:].astype(np.float64), minlength=p)
    return count.astype(np.int64), np.rint(weight).astype(np.int64)


def proof_sums(t: int, ctx: PrimeContext) -> tuple[int, int, int, int]:
    """S_1..S_4 from the N_p(t) + N_p(-t) derivation, by enumeration.

    Each double sum over (x, y) only sees y^2 - x^2, so it is enumerated by
    grouping x and y by the value of their square.
    """
    t = _nonzero(t, ctx)
    count, weight = square_classes(ctx)
    shifted = np.roll(count, -t)
    shifted_w = np.roll(weight, -t)
    s1 = int(count @ shifted)
    s2 = int(weight @ shifted)
    s3 = int(count @ shifted_w)
    s4 = int(weight @ shifted_w)
    return s1, s2, s3, s4


def proof_sums_closed(t: int, ctx: PrimeContext) -> tuple[int, int, int, int]:
    t = _nonzero(t, ctx)
    p, a = ctx.p, ctx.a
    lt = legendre(t, p)
    s1 = p - 3 - 2 * lt
    s23 = phi2_closed(t, ctx) - (2 * quartic_symbol(t, p) if lt == 1 else 0)
    s4 = -2 + 2 * lt * a
    return s1, s23, s23, s4


# -- lambda_p and epsilon_p ----------------------------------------------------


@lru_cache(maxsize=32)
def lambda_and_d(ctx: PrimeContext) -> tuple[int, int]:
    """(d_p, lambda_p): d_p counts QR pairs 0<x<y<p/2 with {y^2-x^2}_p > p/2."""
    ctx.require_mod8()
    p = ctx.p
    d = int(_pair_count_above(quartic_sequence(ctx), p, p // 2))
    return d, d % 2


SINE_CHECK_MAX_P = 400


def lambda_from_sines(ctx: PrimeContext) -> tuple[int, float]:
    """lambda_p from the sign of prod sin(2 pi (a_j^2 - a_i^2) / p), in floating point.

    Returns (lambda, log10 |U_p|).  Every factor has |sin| >= sin(pi/p), so
    the sign is reliable; restricted to small p to keep the sum of logs tame.
    """
    ctx.require_mod8()
    p = ctx.p
    if p > SINE_CHECK_MAX_P:
        raise ValueError(f"sine cross-check is limited to p <= {SINE_CHECK_MAX_P}")
    a2 = half_residues(ctx).astype(np.float64) ** 2
    i, j = np.triu_indices(len(a2), k=1)
    s = np.sin(2 * math.pi * (a2[j] - a2[i]) / p)
    floor = 0.5 * math.sin(math.pi / p)
    if np.any(np.abs(s) < floor):
        raise ArithmeticError("sine factor too close to zero")
    negatives = int(np.count_nonzero(s < 0))
    return negatives % 2, float(np.log10(np.abs(s)).sum())


@lru_cache(maxsize=32)
def epsilon(ctx: PrimeContext) -> int:
    """Ordered pairs (x, y), x = y allowed, of quartic residues with x + y < p/2."""
    ctx.require_mod8()
    h = (ctx.p - 1) // 2
    q = np.nonzero(ctx.chi4_table[1 : h + 1] == 1)[0] + 1
    return int(np.searchsorted(q, h - q, side="right").sum())


# -- A_m, L_m and r_m ----------------------------------------------------------


def _m_grid(ms, ctx: PrimeContext):
    """Yield (ms_block, x, y=x+m mod p) over [1, p) for blocks of m."""
    p = ctx.p
    ms = np.asarray(ms, dtype=np.int64) % p
    if np.any(ms == 0):
        raise ValueError(f"m must not be divisible by p={p}")
    x = np.arange(1, p, dtype=np.int64)
    rows = max(1, _CHUNK_CELLS // p)
    for s in range(0, len(ms), rows):
        mb = ms[s : s + rows]
        yield s, mb, x[None, :], x[None, :] + mb[:, None]


def am_stats(ms, ctx: PrimeContext) -> dict[str, np.ndarray]:
    """For each m: #A_m, sum over A_m of chi4(x^2+mx), #{x in A_m: chi4(x)=1}."""
    p = ctx.p
    leg, chi = ctx.legendre_table, ctx.chi4_table.astype(np.int64)
    k = len(np.atleast_1d(ms))
    out = {name: np.empty(k, dtype=np.int64) for name in ("size", "char_sum", "quartic")}
    for s, mb, x, y in _m_grid(ms, ctx):
        y = y % p
        in_a = (leg[x] == 1) & (leg[y] == 1)
        sl = slice(s, s + len(mb))
        out["size"][sl] = in_a.sum(axis=1)
        out["char_sum"][sl] = np.where(in_a, chi[x * y % p], 0).sum(axis=1)
        out["quartic"][sl] = (in_a & (chi[x] == 1)).sum(axis=1)
    return out


@njit(cache=True)
def _rm_kernel(ms, leg, chi, p):
    out = np.zeros((len(ms), 7), dtype=np.int64)
    for r in range(len(ms)):
        m = ms[r]
        # x + m < p, so x runs over 1..p-1-m
        for x in range(1, p - m):
            y = x + m
            if leg[x] != 1 or leg[y] != 1:
                continue
            cx, cy = chi[x], chi[y]
            out[r, 0] += 1
            if cx == 1 and cy == 1:
                out[r, 1] += 1
            elif cx == -1 and cy == -1:
                out[r, 2] += 1
            elif cx == 1:
                out[r, 3] += 1
            else:
                out[r, 4] += 1
            if cx == 1:
                out[r, 5] += 1
            out[r, 6] += chi[x * y % p]
    return out


def rm_stats(ms, ctx: PrimeContext) -> dict[str, np.ndarray]:
    """For each m: #L_m, the four r_m counts, #{x in L_m: chi4(x)=1} and
    sum over L_m of chi4(x^2+mx)."""
    p = ctx.p
    ms = np.atleast_1d(np.asarray(ms, dtype=np.int64)) % p
    if np.any(ms == 0):
        raise ValueError(f"m must not be divisible by p={p}")
    table = _rm_kernel(ms, ctx.legendre_table.astype(np.int64), ctx.chi4_table.astype(np.int64), p)
    names = ("size", "pp", "mm", "pm", "mp", "quartic", "char_sum")
    return {name: table[:, i].copy() for i, name in enumerate(names)}


def a_m_set(m: int, ctx: PrimeContext) -> tuple[int, ...]:
    """A_m = {1 <= x <= p-1 : (x/p) = ((x+m)/p) = 1}."""
    m = _nonzero(m, ctx)
    p, leg = ctx.p, ctx.legendre_table
    x = np.arange(1, p)
    return tuple(int(v) for v in x[(leg[x] == 1) & (leg[(x + m) % p] == 1)])


def a_m_size_closed(m: int, ctx: PrimeContext) -> int:
    m = _nonzero(m, ctx)
    return _exact_div(ctx.p - 3 - 2 * legendre(m, ctx.p), 4, f"#A_{m}")


def quartic_sum_over_Am(m: int, ctx: PrimeContext) -> int:
    ctx.require_mod8()
    return int(am_stats([_nonzero(m, ctx)], ctx)["char_sum"][0])


def quartic_sum_over_Am_closed(m: int, ctx: PrimeContext) -> int:
    ctx.require_mod8()
    m = _nonzero(m, ctx)
    return _exact_div(-1 + ctx.a * legendre(m, ctx.p), 2, f"sum over A_{m}")


def quartic_count_in_Am(m: int, ctx: PrimeContext) -> int:
    ctx.require_mod8()
    return int(am_stats([_nonzero(m, ctx)], ctx)["quartic"][0])


def quartic_count_in_Am_closed(m: int, ctx: PrimeContext) -> int:
    ctx.require_mod8()
    m = _nonzero(m, ctx)
    p, a, b = ctx.p, ctx.a, ctx.b
    num = {
        QuarticClass.I: p - 1 + 4 * b,
        QuarticClass.MINUS_I: p - 1 - 4 * b,
        QuarticClass.ONE: p - 7 + 2 * a,
        QuarticClass.MINUS_ONE: p - 3 - 2 * a,
    }[quartic_class(m, ctx)]
    return _exact_div(num, 8, f"quartic count in A_{m}")


@dataclass(frozen=True)
class RmRecord:
    m: int
    L_m_size: int
    A_m_size: int
    r_pp: int
    r_mm: int
    r_pm: int
    r_mp: int
    quartic_in_L: int
    char_sum_L: int


def rm_record(m: int, ctx: PrimeContext) -> RmRecord:
    m = _nonzero(m, ctx)
    r = {k: int(v[0]) for k, v in rm_stats([m], ctx).items()}
    a_size = int(am_stats([m], ctx)["size"][0])
    return RmRecord(m, r["size"], a_size, r["pp"], r["mm"], r["pm"], r["mp"], r["quartic"], r["char_sum"])


def rm_identity_arrays(ms, ctx: PrimeContext) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """(case, expected, actual) arrays over ``ms`` for every r_m identity.

    ``expected`` is the side built from other counts, ``actual`` the
    enumerated quantity.  Uses the records for both m and p - m.
    """
    ctx.require_mod8()
    p = ctx.p
    ms = np.atleast_1d(np.asarray(ms, dtype=np.int64)) % p
    r = rm_stats(ms, ctx)
    rn = rm_stats(p - ms, ctx)
    am = am_stats(ms, ctx)
    return [
        ("r+- = r-+", r["mp"], r["pm"]),
        ("r++ + r-- + r+- + r-+ = #L_m", r["size"], r["pp"] + r["mm"] + r["pm"] + r["mp"]),
        ("r++ + r-- - r+- - r-+ = sum chi4(x^2+mx)", r["char_sum"], r["pp"] + r["mm"] - r["pm"] - r["mp"]),
        ("r++ + r+- = #{x in L_m: chi4(x)=1}", r["quartic"], r["pp"] + r["pm"]),
        ("r-- + r-+ = #L_m - #{x in L_m: chi4(x)=1}", r["size"] - r["quartic"], r["mm"] + r["mp"]),
        ("4 r++ = 4 #{chi4(x)=1} - #L_m + sum chi4(x^2+mx)",
         4 * r["quartic"] - r["size"] + r["char_sum"], 4 * r["pp"]),
        ("#L_m + #L_(p-m) = #A_m", am["size"], r["size"] + rn["size"]),
        ("chi4 sums over L_m and L_(p-m) = sum over A_m", am["char_sum"], r["char_sum"] + rn["char_sum"]),
        ("quartic counts in L_m and L_(p-m) = count in A_m", am["quartic"], r["quartic"] + rn["quartic"]),
    ]


def rm_identities(m: int, ctx: PrimeContext) -> list[tuple[str, int, int]]:
    """rm_identity_arrays for a single m."""
    m = _nonzero(m, ctx)
    return [(case, int(e[0]), int(a[0])) for case, e, a in rm_identity_arrays([m], ctx)]


def epsilon_via_r(ctx: PrimeContext) -> int:
    """sum over 0 < m < p/2 of r_{p-m}^{++}."""
    ctx.require_mod8()
    p = ctx.p
    ms = p - np.arange(1, (p - 1) // 2 + 1)
    return int(rm_stats(ms, ctx)["pp"].sum())
