"""Per-prime verification checks.

Each check compares a brute-force quantity (``actual``) with the closed
form it is claimed to equal (``expected``) and returns CheckRecords.  A
mismatch is data, not an exception: the record simply has pass == False.

Sweeps over t or m emit one summary record (expected = number of values
tried, actual = number that agreed) plus one record per disagreeing value;
with ``per_value`` every value gets its own record.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import counts, cyclo, jacobsthal, perm
from .arith import PrimeContext, sign_of
from .counts import ClosedFormError

EXHAUSTIVE_BELOW = 2000
SAMPLE_SIZE = 128
DEFAULT_SEED = 20211

_FIELDS = ("p", "check", "case", "g", "t", "m", "expected", "actual")


@dataclass(frozen=True)
class CheckRecord:
    """One comparison.  Records with pass == False are the discrepancies."""

    p: int
    check: str
    case: str
    expected: int | str
    actual: int | str
    g: int | None = None
    t: int | None = None
    m: int | None = None

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        out = {"p": self.p, "check": self.check, "case": self.case}
        for key in ("g", "t", "m"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        out.update(expected=self.expected, actual=self.actual)
        out["pass"] = self.passed
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CheckRecord":
        rec = cls(**{k: obj[k] for k in _FIELDS if k in obj})
        if "pass" in obj and obj["pass"] != rec.passed:
            raise ValueError(f"inconsistent pass flag in {obj}")
        return rec


@dataclass
class PrimeJob:
    """Everything a check needs for one prime; expensive pieces are cached."""

    ctx: PrimeContext
    values: np.ndarray
    exhaustive: bool
    all_roots: bool = False
    per_value: bool = False
    records: list[CheckRecord] = field(default_factory=list)
    _tau: dict[int, int] = field(default_factory=dict, repr=False)

    @property
    def p(self) -> int:
        return self.ctx.p

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return self.ctx.roots if self.all_roots else (self.ctx.generator,)

    def tau_sign(self, g: int) -> int:
        if g not in self._tau:
            self._tau[g] = perm.sgn_tau_direct(self.ctx, g)
        return self._tau[g]

    @property
    def tau_signs(self) -> dict[int, int]:
        if len(self._tau) < len(self.ctx.roots):
            self._tau.update(perm.tau_signs(self.ctx))
        return self._tau

    @cached_property
    def am(self) -> dict[str, np.ndarray]:
        return counts.am_stats(self.values, self.ctx)


def sample_values(p: int, seed: int = DEFAULT_SEED, exhaustive: bool = False,
                  exhaustive_below: int = EXHAUSTIVE_BELOW, size: int = SAMPLE_SIZE) -> np.ndarray:
    """All of 1..p-1 for small p (or on request), else a seeded sample."""
    if exhaustive or p < exhaustive_below or p - 1 <= size:
        return np.arange(1, p, dtype=np.int64)
    rng = np.random.default_rng([seed, p])
    return np.sort(rng.choice(np.arange(1, p, dtype=np.int64), size=size, replace=False))


def _sweep(job: PrimeJob, check: str, case: str, key: str, values, expected, actual):
    agree = 0
    for v, e, a in zip(values, expected, actual):
        e = e if isinstance(e, str) else int(e)
        ok = e == int(a)
        agree += ok
        if job.per_value or not ok:
            job.records.append(CheckRecord(job.p, check, case, e, int(a), **{key: int(v)}))
    if not job.per_value:
        job.records.append(CheckRecord(job.p, check, f"{case} [all {key}]", len(values), agree))


def _closed_array(fn, values, ctx) -> list:
    """Evaluate a scalar closed form per value; a non-integral result is kept as its message."""
    out = []
    for v in values:
        try:
            out.append(fn(int(v), ctx))
        except ClosedFormError as exc:
            out.append(str(exc))
    return out


def _record(job: PrimeJob, check: str, case: str, expected, actual, **extra):
    job.records.append(CheckRecord(job.p, check, case, expected, actual, **extra))


def _as_sign(v: int, p: int) -> int | str:
    try:
        return sign_of(v, p)
    except ArithmeticError:
        return f"residue {v % p}"


# -- checks ----------------------------------------------------------------------


def check_lemma21(job: PrimeJob):
    ctx, ms = job.ctx, job.values
    phi2, psi2 = jacobsthal.jacobsthal_sums(ms, 2, ctx)
    closed = jacobsthal.phi2_closed_table(ctx)[ms]
    _sweep(job, "lemma21", "phi_2(m) closed form", "m", ms, closed, phi2)
    phi1, psi1 = jacobsthal.jacobsthal_sums(ms, 1, ctx)
    _sweep(job, "lemma21", "psi_2 = psi_1 + phi_1", "m", ms, psi1 + phi1, psi2)
    _, psi4 = jacobsthal.jacobsthal_sums(ms, 4, ctx)
    _sweep(job, "lemma21", "psi_4 = psi_2 + phi_2", "m", ms, psi2 + phi2, psi4)


def check_lemma22(job: PrimeJob):
    ctx, ts = job.ctx, job.values
    n = counts.n_counts(ctx)
    brute = n[ts] + n[(ctx.p - ts) % ctx.p]
    _sweep(job, "lemma22", "N(t)+N(-t) closed form", "t", ts, _closed_array(counts.n_sum_closed, ts, ctx), brute)
    sums = np.array([counts.proof_sums(int(t), ctx) for t in ts]).reshape(-1, 4)
    closed = np.array([counts.proof_sums_closed(int(t), ctx) for t in ts]).reshape(-1, 4)
    for i in range(4):
        _sweep(job, "lemma22", f"S_{i + 1} closed form", "t", ts, closed[:, i], sums[:, i])
    _sweep(job, "lemma22", "S_1+S_2+S_3+S_4 = 16 (N(t)+N(-t))", "t", ts, 16 * brute, sums.sum(axis=1))


def check_lemma23(job: PrimeJob):
    ctx = job.ctx
    try:
        closed = perm.lemma23_closed(ctx)
    except ClosedFormError as exc:
        closed = str(exc)
    _record(job, "lemma23", perm.lemma23_case(ctx), closed, perm.w_product(ctx))


def check_omega_products(job: PrimeJob):
    ctx = job.ctx
    p = ctx.p
    actual = counts.omega_square_products(ctx)
    expected = counts.omega_square_expected(ctx)
    for case, e, a in zip(("prod Omega_2b/a t^2", "prod Omega_1 t^2", "prod Omega_-1 t^2"), expected, actual):
        _record(job, "omega_products", case, e, a)
    sp = counts.sign_params(ctx)
    _record(job, "omega_products", "A_p^2 = (-1)^((p+7)/8)", expected[1], sp.A_p**2 % p)
    _record(job, "omega_products", "B_p^2 = (-1)^((p-1)/8)", expected[2], sp.B_p**2 % p)
    om = counts.omega_sets(ctx)
    for name in ("omega_1", "omega_minus1", "omega_i", "omega_minus_i"):
        _record(job, "omega_products", f"|{name}| = (p-1)/8", (p - 1) // 8, len(getattr(om, name)))


def check_lemma31(job: PrimeJob):
    ms = job.values
    _sweep(job, "lemma31", "#A_m closed form", "m", ms,
           _closed_array(counts.a_m_size_closed, ms, job.ctx), job.am["size"])


def check_lemma32(job: PrimeJob):
    ms = job.values
    _sweep(job, "lemma32", "sum over A_m of chi4(x^2+mx)", "m", ms,
           _closed_array(counts.quartic_sum_over_Am_closed, ms, job.ctx), job.am["char_sum"])


def check_lemma33(job: PrimeJob):
    ms = job.values
    _sweep(job, "lemma33", "#{x in A_m: chi4(x)=1}", "m", ms,
           _closed_array(counts.quartic_count_in_Am_closed, ms, job.ctx), job.am["quartic"])


def check_eq31(job: PrimeJob):
    ctx, ms = job.ctx, job.values
    for case, expected, actual in counts.rm_identity_arrays(ms, ctx):
        _sweep(job, "eq31", case, "m", ms, expected, actual)
    if job.exhaustive:
        _record(job, "eq31", "sum_{0<m<p/2} r_(p-m)^++ = epsilon", counts.epsilon(ctx), counts.epsilon_via_r(ctx))


def _theorem_a_label(ctx: PrimeContext) -> str:
    part = "(i)" if ctx.p % 16 == 9 else "(ii)"
    two = "+1" if pow(2, ctx.n, ctx.p) == 1 else "-1"
    return f"ThmA{part} chi4(2)={two}"


def check_thmA(job: PrimeJob):
    ctx = job.ctx
    label = _theorem_a_label(ctx)
    for g in job.roots:
        direct = job.tau_sign(g)
        _record(job, "thmA", f"{label} published", perm.theorem_a_published(ctx, g), direct, g=g)
        _record(job, "thmA", f"{label} recomposed", perm.theorem_a_recomposed(ctx, g), direct, g=g)


def check_thmB(job: PrimeJob):
    ctx = job.ctx
    direct = perm.sgn_rho_direct(ctx)
    _record(job, "thmB", "sgn(rho) = (-1)^(lambda+epsilon)", perm.theorem_b_predict(ctx), direct)
    _record(job, "thmB", "sgn(rho) = S_p/W_p", _as_sign(perm.s_product(ctx) * pow(perm.w_product(ctx), -1, ctx.p), ctx.p), direct)
    if ctx.p <= counts.SINE_CHECK_MAX_P:
        _record(job, "thmB", "lambda from sine product", counts.lambda_from_sines(ctx)[0], counts.lambda_and_d(ctx)[1])


def check_pairing(job: PrimeJob):
    ctx = job.ctx
    if ctx.p % 16 != 1:
        return
    signs = job.tau_signs
    good = 0
    for g, s in signs.items():
        prod = s * signs[pow(g, -1, ctx.p)]
        good += prod == -1
        if prod != -1 or job.per_value:
            _record(job, "pairing", "sgn tau(g) * sgn tau(1/g) = -1", -1, prod, g=g)
    if not job.per_value:
        _record(job, "pairing", "sgn tau(g) * sgn tau(1/g) = -1 [all g]", len(signs), good)


def check_balance(job: PrimeJob):
    ctx = job.ctx
    if ctx.p % 16 != 1:
        return
    plus, minus = perm.tau_balance(ctx, job.tau_signs)
    _record(job, "balance", "#{g: +1} = #{g: -1}", minus, plus)


def check_g_independence(job: PrimeJob):
    ctx = job.ctx
    if ctx.p % 16 != 9:
        return
    _record(job, "g_independence", "distinct sgn tau(g) over all g", 1, len(set(job.tau_signs.values())))


def check_cyclo_denominator(job: PrimeJob):
    ctx = job.ctx
    p = ctx.p
    w = perm.w_product(ctx)
    for g in job.roots:
        den = cyclo.denominator_product(ctx, g)
        _record(job, "cyclo_denominator", "direct product = G(g)", cyclo.g_poly_value(ctx, g), den, g=g)
        _record(job, "cyclo_denominator", "direct product = floor(p/16) form",
                cyclo.denominator_floor_variant(ctx, g), den, g=g)
        direct = job.tau_sign(g)
        _record(job, "cyclo_denominator", "sgn tau(g) = W_p / direct product", _as_sign(w * pow(den, -1, p), p), direct, g=g)


def check_cyclo_split(job: PrimeJob):
    if job.p > cyclo.SPLIT_CHECK_MAX_P:
        return
    _record(job, "cyclo_split", "Phi_(p-1) = prod (x - g) mod p", 1, int(cyclo.cyclotomic_split_check(job.p)))


CHECKS = {
    "lemma21": check_lemma21,
    "lemma22": check_lemma22,
    "lemma23": check_lemma23,
    "omega_products": check_omega_products,
    "lemma31": check_lemma31,
    "lemma32": check_lemma32,
    "lemma33": check_lemma33,
    "eq31": check_eq31,
    "thmA": check_thmA,
    "thmB": check_thmB,
    "pairing": check_pairing,
    "balance": check_balance,
    "g_independence": check_g_independence,
    "cyclo_denominator": check_cyclo_denominator,
    "cyclo_split": check_cyclo_split,
}

# checks that only need p = 1 (mod 4); everything else needs p = 1 (mod 8)
MOD4_CHECKS = {"lemma21", "cyclo_split"}


def verify_prime(p: int, checks=None, *, all_roots: bool = False, exhaustive: bool = False,
                 per_value: bool = False, seed: int = DEFAULT_SEED,
                 exhaustive_below: int = EXHAUSTIVE_BELOW, sample_size: int = SAMPLE_SIZE) -> list[CheckRecord]:
    """Run the selected checks (default: all) for one prime, in registry order."""
    selected = list(CHECKS) if checks is None else list(checks)
    unknown = set(selected) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    ctx = PrimeContext.of(p)
    values = sample_values(p, seed, exhaustive, exhaustive_below, sample_size)
    job = PrimeJob(ctx, values, exhaustive=len(values) == p - 1, all_roots=all_roots, per_value=per_value)
    for name in CHECKS:
        if name not in selected:
            continue
        if p % 8 != 1 and name not in MOD4_CHECKS:
            continue
        CHECKS[name](job)
    return job.records
