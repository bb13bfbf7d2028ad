"""Acceptance criteria, one test each.

Every test prints a PASS/FAIL line and the same lines are collected into the
"acceptance criteria" section of the pytest terminal summary.  Agreement
rates of the published sign formulas are reported as data.
"""

import time
from collections import Counter

import numpy as np
import pytest

from biquadsign import counts, cyclo, perm
from biquadsign.arith import PrimeContext, primes_in_range
from biquadsign.checks import verify_prime
from biquadsign.jacobsthal import jacobsthal_sums, phi2_closed_table
from biquadsign.scan import ScanConfig, run_scan

P1MOD4_2000 = primes_in_range(17, 1999, (1, 4))
P1MOD8_2000 = primes_in_range(17, 1999, (1, 8))
P1MOD8_10K = primes_in_range(17, 9999, (1, 8))


@pytest.fixture
def criterion(record_property):
    def report(number, title, ok, detail=""):
        record_property("criterion", number)
        record_property("title", title)
        record_property("detail", detail)
        print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} | {detail}")
        assert ok, detail

    return report


def _all_pass(records):
    bad = [r for r in records if not r.passed]
    return not bad, bad


def test_c01_phi2_closed_form(criterion):
    start = time.perf_counter()
    mismatches = 0
    for p in P1MOD4_2000:
        ctx = PrimeContext.of(p)
        phi, _ = jacobsthal_sums(np.arange(1, p), 2, ctx)
        mismatches += int(np.count_nonzero(phi != phi2_closed_table(ctx)[1:]))
    elapsed = time.perf_counter() - start
    criterion(1, "phi_2(m) closed form, p = 1 mod 4 below 2000, all m", mismatches == 0 and elapsed < 60,
              f"{len(P1MOD4_2000)} primes, {mismatches} mismatches, {elapsed:.1f} s")


def test_c02_doubling(criterion):
    mismatches = 0
    for p in P1MOD4_2000:
        ctx = PrimeContext.of(p)
        ms = np.arange(1, p)
        sums = {k: jacobsthal_sums(ms, k, ctx) for k in (1, 2, 4)}
        for k in (1, 2):
            phi, psi = sums[k]
            mismatches += int(np.count_nonzero(sums[2 * k][1] != psi + phi))
    criterion(2, "psi_2k = psi_k + phi_k for k in {1, 2}", mismatches == 0,
              f"{len(P1MOD4_2000)} primes, {mismatches} mismatches")


def test_c03_pair_count_sum(criterion):
    records = []
    for p in P1MOD8_10K:
        records += verify_prime(p, ["lemma22"])
    ok, bad = _all_pass(records)
    criterion(3, "N(t) + N(-t) closed form (exhaustive below 2000, sampled to 10^4)", ok,
              f"{len(P1MOD8_10K)} primes, {len(records)} records, {len(bad)} discrepancies")


def test_c04_square_products(criterion):
    records = []
    for p in P1MOD8_10K:
        records += verify_prime(p, ["omega_products"])
    ok, bad = _all_pass(records)
    criterion(4, "Omega square products and A_p^2, B_p^2 congruences to 10^4", ok,
              f"{len(records)} records, {len(bad)} discrepancies")


def test_c05_w_product(criterion):
    cases = Counter()
    bad = 0
    for p in P1MOD8_10K:
        ctx = PrimeContext.of(p)
        cases[perm.lemma23_case(ctx)] += 1
        bad += perm.w_product(ctx) != perm.lemma23_closed(ctx)
    ok = bad == 0 and len(cases) == 4 and min(cases.values()) >= 50
    criterion(5, "W_p equals its closed form for p = 1 mod 8 to 10^4", ok,
              f"{bad} mismatches; case counts {dict(sorted(cases.items()))}")


def test_c06_vandermonde_at_roots_of_unity(criterion):
    worst = 0.0
    exact = True
    for n in range(1, 65):
        closed = cyclo.p_closed(n)
        exact &= closed.square() == (-1) ** ((n * n + n + 2) // 2) * n**n
        numeric = cyclo.p_eval_numeric(n, 1, n)
        worst = max(worst, abs(numeric - closed.value()) / abs(closed.value()))
    criterion(6, "P(zeta) closed form for n <= 64", exact and worst < 1e-9,
              f"squares exact: {exact}; worst relative error {worst:.2e}")


def test_c07_denominator(criterion):
    pairs = bad = 0
    for p in P1MOD8_2000:
        ctx = PrimeContext.of(p)
        for g in ctx.roots:
            pairs += 1
            bad += cyclo.denominator_product(ctx, g) != cyclo.g_poly_value(ctx, g)
    criterion(7, "denominator product = G(g) for every primitive root, p = 1 mod 8 below 2000",
              bad == 0, f"{pairs} (p, g) pairs, {bad} mismatches")


def test_c08_cyclotomic_split(criterion):
    ps = primes_in_range(3, 500)
    bad = [p for p in ps if not cyclo.cyclotomic_split_check(p)]
    criterion(8, "Phi_(p-1) splits over the primitive roots mod p, p <= 500", not bad,
              f"{len(ps)} primes, failures {bad}")


def test_c09_rho_sign(criterion):
    bad = [p for p in P1MOD8_10K
           if perm.sgn_rho_direct(PrimeContext.of(p)) != perm.theorem_b_predict(PrimeContext.of(p))]
    ctx = PrimeContext.of(17)
    lam, eps = counts.lambda_and_d(ctx)[1], counts.epsilon(ctx)
    at17 = (perm.sgn_rho_direct(ctx), perm.theorem_b_predict(ctx), lam, eps) == (-1, -1, 1, 4)
    criterion(9, "sgn(rho_p) = (-1)^(lambda+epsilon) for p = 1 mod 8 to 10^4", not bad and at17,
              f"{len(P1MOD8_10K)} primes, failures {bad[:5]}; p=17 lambda={lam} epsilon={eps}")


def test_c10_theorem_a_part_i(criterion):
    ps = primes_in_range(17, 9999, (9, 16))
    not_constant = []
    agree = 0
    by_case = Counter()
    for p in ps:
        ctx = PrimeContext.of(p)
        signs = perm.tau_signs(ctx)
        if len(set(signs.values())) != 1:
            not_constant.append(p)
        g = ctx.generator
        hit = perm.theorem_a_published(ctx, g) == signs[g]
        agree += hit
        by_case[(perm.lemma23_case(ctx), hit)] += 1
    rate = agree / len(ps)
    criterion(10, "sgn tau_p(g) constant over all g for p = 9 mod 16 to 10^4", not not_constant,
              f"{len(ps)} primes, non-constant {not_constant}; published formula agrees for "
              f"{agree}/{len(ps)} = {rate:.1%} {dict(sorted(by_case.items()))}")


def test_c11_theorem_a_part_ii_structure(criterion):
    ps = primes_in_range(17, 5000, (1, 16))
    bad = []
    for p in ps:
        ctx = PrimeContext.of(p)
        signs = perm.tau_signs(ctx)
        plus, minus = perm.tau_balance(ctx, signs)
        if not perm.tau_pairing_check(ctx, signs) or plus != minus:
            bad.append(p)
    criterion(11, "pairing g <-> 1/g and +/- balance for p = 1 mod 16 to 5000", not bad,
              f"{len(ps)} primes, failures {bad}")


def test_c12_theorem_a_part_ii_formulas(criterion):
    ps = primes_in_range(17, 5000, (1, 16))
    total = recomposed_ok = published_ok = 0
    by_chi2 = Counter()
    for p in ps:
        ctx = PrimeContext.of(p)
        signs = perm.tau_signs(ctx)
        for g, direct in signs.items():
            total += 1
            recomposed_ok += perm.theorem_a_recomposed(ctx, g) == direct
            hit = perm.theorem_a_published(ctx, g) == direct
            published_ok += hit
            by_chi2[(perm.lemma23_case(ctx), hit)] += 1
    triple = perm.sign_record(PrimeContext.of(17), 3)
    triple_ok = (triple.direct_sign, triple.recomposed_prediction, triple.published_prediction) == (1, 1, -1)
    detail = (f"recomposed {recomposed_ok}/{total}; published {published_ok}/{total} "
              f"= {published_ok / total:.1%} {dict(sorted(by_chi2.items()))}; "
              f"p=17 g=3: direct {triple.direct_sign:+d}, recomposed {triple.recomposed_prediction:+d}, "
              f"published {triple.published_prediction:+d}")
    criterion(12, "recomposed prediction equals the direct sign for p = 1 mod 16 to 5000",
              recomposed_ok == total and triple_ok, detail)


def test_c13_am_and_rm_identities(criterion):
    records = []
    for p in P1MOD8_10K:
        records += verify_prime(p, ["lemma31", "lemma32", "lemma33", "eq31"])
    ok, bad = _all_pass(records)
    criterion(13, "A_m counts and r_m identities (exhaustive below 2000, sampled to 10^4)", ok,
              f"{len(records)} records, {len(bad)} discrepancies")


def test_c14_full_scan_time_and_determinism(criterion, tmp_path):
    times, outputs = [], []
    for run in range(2):
        path = tmp_path / f"run{run}.jsonl"
        start = time.perf_counter()
        report = run_scan(ScanConfig(17, 9999, workers=8, output_path=str(path)))
        times.append(time.perf_counter() - start)
        outputs.append(path.read_bytes())
    same = outputs[0] == outputs[1]
    criterion(14, "default scan with 8 workers under 300 s, byte-identical output", same and max(times) < 300,
              f"{len(report.primes)} primes, {len(report.records)} records, "
              f"{len(report.discrepancies)} discrepancies; runs {times[0]:.0f} s and {times[1]:.0f} s; "
              f"identical: {same}")
