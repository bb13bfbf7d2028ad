"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here imports the package; everything is plain loops over integers.
"""


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def legendre(x, p):
    x %= p
    if x == 0:
        return 0
    return 1 if any(y * y % p == x for y in range(1, p)) else -1


def is_fourth_power(x, p):
    x %= p
    return x != 0 and any(pow(y, 4, p) == x for y in range(1, p))


def chi4(x, p):
    if x % p == 0:
        return 0
    return 1 if is_fourth_power(x, p) else -1


def two_squares(p):
    """(a, b) with p = a^2 + 4b^2, a = 3 mod 4 (signed), b > 0."""
    for b in range(1, p):
        r = p - 4 * b * b
        if r < 0:
            break
        a = round(r**0.5)
        if a * a == r:
            return (a if a % 4 == 3 else -a), b
    raise ValueError(p)


def order(g, p):
    k, x = 1, g % p
    while x != 1:
        x = x * g % p
        k += 1
    return k


def primitive_roots(p):
    return [g for g in range(1, p) if order(g, p) == p - 1]


def iota(p):
    a, b = two_squares(p)
    return 2 * b * pow(a, -1, p) % p


def jacobsthal(m, k, p):
    phi = sum(legendre(x, p) * legendre(pow(x, k, p) + m, p) for x in range(1, p))
    psi = sum(legendre(pow(x, k, p) + m, p) for x in range(1, p))
    return phi, psi


def half_qr(p):
    return [x for x in range(1, (p - 1) // 2 + 1) if legendre(x, p) == 1]


def seq_d(p):
    return [a * a % p for a in half_qr(p)]


def seq_e(p, g):
    return [pow(g, 4 * i, p) for i in range(1, (p - 1) // 4 + 1)]


def inversions(seq):
    n = len(seq)
    return sum(1 for i in range(n) for j in range(i + 1, n) if seq[i] > seq[j])


def perm_sign(src, dst):
    where = {v: i for i, v in enumerate(dst)}
    return -1 if inversions([where[v] for v in src]) % 2 else 1


def n_count(t, p):
    d = seq_d(p)
    return sum(1 for i in range(len(d)) for j in range(i + 1, len(d)) if (d[j] - d[i]) % p == t % p)


def pair_product(v, p):
    out = 1
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            out = out * (v[j] - v[i]) % p
    return out


def signed(v, p):
    v %= p
    if v == 1:
        return 1
    if v == p - 1:
        return -1
    raise ValueError(v)


def epsilon(p):
    q = [x for x in range(1, p) if chi4(x, p) == 1]
    return sum(1 for x in q for y in q if x + y < p / 2)


def d_count(p):
    d = seq_d(p)
    return sum(1 for i in range(len(d)) for j in range(i + 1, len(d)) if (d[j] - d[i]) % p > p / 2)


def a_m(m, p):
    return [x for x in range(1, p) if legendre(x, p) == 1 and legendre(x + m, p) == 1]


def l_m(m, p):
    return [x for x in range(1, p - m) if legendre(x, p) == 1 and legendre(x + m, p) == 1]
