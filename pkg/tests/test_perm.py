import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from biquadsign import cyclo, perm
from biquadsign.arith import PrimeContext

P1MOD8 = [p for p in range(17, 400) if oracles.is_prime(p) and p % 8 == 1]
CTX17 = PrimeContext.of(17)


def test_sequences_at_17():
    s = perm.build_sequences(CTX17, 3)
    assert s.seq_d == (1, 4, 16, 13)
    assert s.seq_e == (13, 16, 4, 1)
    assert s.seq_f == (1, 4, 13, 16)


def test_perm_sign_examples():
    d = (1, 4, 16, 13)
    assert perm.perm_sign(d, d) == 1
    assert perm.perm_sign(d, (1, 4, 13, 16)) == -1
    assert perm.perm_sign(d, (13, 16, 4, 1)) == 1
    assert perm.perm_sign([], []) == 1


def test_perm_sign_rejects_non_permutations():
    with pytest.raises(ValueError):
        perm.perm_sign([1, 2, 3], [1, 2, 4])
    with pytest.raises(ValueError):
        perm.perm_sign([1, 2], [1, 1])
    with pytest.raises(ValueError):
        perm.perm_sign([1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        perm.perm_sign([2**40, 5], [5, 2**40 + 1])


def test_signs_at_17():
    assert perm.sgn_tau_direct(CTX17, 3) == 1
    assert perm.sgn_rho_direct(CTX17) == -1
    assert perm.theorem_b_predict(CTX17) == -1
    assert perm.rho_ratio(CTX17) == -1


def test_products_at_17():
    assert perm.w_product(CTX17) == 4
    assert perm.lemma23_closed(CTX17) == 4
    assert perm.s_product(CTX17) * pow(4, -1, 17) % 17 == 16
    assert perm.lemma23_case(CTX17) == "p=1 mod 16, chi4(2)=-1"


@pytest.mark.parametrize("p", [41, 73])
def test_w_product_closed_form_mod_9_16(p):
    ctx = PrimeContext.of(p)
    assert perm.w_product(ctx) == perm.lemma23_closed(ctx)


def test_theorem_a_at_17_g3():
    rec = perm.sign_record(CTX17, 3)
    assert (rec.direct_sign, rec.recomposed_prediction, rec.published_prediction) == (1, 1, -1)
    assert rec.recomposed_agrees and not rec.published_agrees and rec.lemma23_W_check


def test_root_set_claims():
    assert perm.tau_pairing_check(CTX17)
    assert perm.tau_pairing_check(PrimeContext.of(97))
    assert perm.tau_balance(CTX17) == (4, 4)
    for p in (41, 73, 89):
        assert perm.g_independence_check(PrimeContext.of(p))
    with pytest.raises(ValueError):
        perm.tau_pairing_check(PrimeContext.of(41))
    with pytest.raises(ValueError):
        perm.g_independence_check(CTX17)


def test_non_root_rejected():
    with pytest.raises(ValueError):
        perm.sgn_tau_direct(CTX17, 4)


# frozen oracle table: sgn tau_p(g) for the smallest primitive root, by
# brute-force inversion counting in oracles.perm_sign
FROZEN_TAU = {17: 1, 41: 1, 73: 1, 89: -1, 97: 1, 113: -1, 137: -1, 193: -1}


@pytest.mark.parametrize("p,want", sorted(FROZEN_TAU.items()))
def test_tau_sign_frozen(p, want):
    ctx = PrimeContext.of(p)
    g = ctx.generator
    assert oracles.perm_sign(oracles.seq_d(p), oracles.seq_e(p, g)) == want
    assert perm.sgn_tau_direct(ctx, g) == want


@given(st.sampled_from(P1MOD8))
def test_signs_match_oracle(p):
    ctx = PrimeContext.of(p)
    d = oracles.seq_d(p)
    assert perm.sgn_rho_direct(ctx) == oracles.perm_sign(d, sorted(d))
    signs = perm.tau_signs(ctx)
    assert sorted(signs) == oracles.primitive_roots(p)
    for g in list(signs)[:12]:
        assert signs[g] == oracles.perm_sign(d, oracles.seq_e(p, g)) == perm.sgn_tau_direct(ctx, g)


@given(st.sampled_from(P1MOD8))
def test_closed_forms_against_products(p):
    ctx = PrimeContext.of(p)
    d = oracles.seq_d(p)
    w = oracles.pair_product(d, p)
    assert perm.w_product(ctx) == w == perm.lemma23_closed(ctx)
    assert perm.s_product(ctx) == oracles.pair_product(sorted(d), p)
    assert perm.rho_ratio(ctx) == perm.sgn_rho_direct(ctx) == perm.theorem_b_predict(ctx)
    for g in ctx.roots[:6]:
        assert perm.theorem_a_recomposed(ctx, g) == perm.sgn_tau_direct(ctx, g)
        assert oracles.signed(w * pow(cyclo.denominator_product(ctx, g), -1, p), p) == perm.sgn_tau_direct(ctx, g)


@given(st.lists(st.integers(-10**9, 10**9), max_size=60))
def test_inversion_count_matches_double_loop(seq):
    assert perm.inversion_count(seq) == oracles.inversions(seq)


@given(st.permutations(list(range(12))), st.permutations(list(range(12))))
def test_perm_sign_is_multiplicative(s1, s2):
    base = list(range(100, 112))
    a = [base[i] for i in s1]
    b = [a[i] for i in s2]
    # base -> a -> b composes to base -> b
    assert perm.perm_sign(base, b) == perm.perm_sign(base, a) * perm.perm_sign(a, b)
    assert perm.perm_sign(a, base) == perm.perm_sign(base, a)


@given(st.permutations(list(range(30))))
def test_perm_sign_lookup_and_sort_paths_agree(order):
    small = np.array(order)
    big = small + 2**40
    assert perm.perm_sign(small, np.arange(30)) == perm.perm_sign(big, np.arange(30) + 2**40)
