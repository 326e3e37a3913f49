"""Supersingular curve y^2 = x^3 + x over F_p, p = 3 mod 4, with the modified
Tate pairing into F_p^2 via the distortion map (x, y) -> (-x, i*y).

Points are affine tuples (x, y); the point at infinity is None.
F_p^2 elements are tuples (a, b) meaning a + b*i with i^2 = -1.
"""

import hashlib


def on_curve(P, p):
    if P is None:
        return True
    x, y = P
    return (y * y - x * x * x - x) % p == 0


def ec_neg(P, p):
    if P is None:
        return None
    return (P[0], (-P[1]) % p)


def ec_add(P, Q, p):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + 1) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def ec_mul(P, k, p):
    """Double-and-add; k must be non-negative."""
    R = None
    while k:
        if k & 1:
            R = ec_add(R, P, p)
        P = ec_add(P, P, p)
        k >>= 1
    return R


WINDOW = 4


def fixed_table(P, bits, p, w=WINDOW):
    """tab[i][v] = v * 2^(w*i) * P, for fixed-base windowed multiplication."""
    tab = []
    for _ in range((bits + w - 1) // w):
        row = [None]
        for _ in range((1 << w) - 1):
            row.append(ec_add(row[-1], P, p))
        tab.append(row)
        P = ec_add(row[-1], P, p)
    return tab


def table_mul(tab, k, p, w=WINDOW):
    R = None
    mask = (1 << w) - 1
    i = 0
    while k:
        v = k & mask
        if v:
            R = ec_add(R, tab[i][v], p)
        k >>= w
        i += 1
    return R


# F_p^2 arithmetic

def f2_mul(a, b, p):
    return ((a[0] * b[0] - a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)


def f2_sqr(a, p):
    x, y = a
    return ((x + y) * (x - y) % p, 2 * x * y % p)


def f2_conj(a, p):
    return (a[0], (-a[1]) % p)


def f2_inv(a, p):
    t = pow(a[0] * a[0] + a[1] * a[1], -1, p)
    return (a[0] * t % p, (-a[1]) * t % p)


def f2_pow(a, k, p):
    R = (1, 0)
    while k:
        if k & 1:
            R = f2_mul(R, a, p)
        a = f2_sqr(a, p)
        k >>= 1
    return R


def _line(T, lam, Q, p):
    # line through T with slope lam, evaluated at phi(Q) = (-xq, i*yq)
    xq, yq = Q
    return ((lam * (xq + T[0]) - T[1]) % p, yq)


def miller(P, Q, n, p):
    """f_{n,P}(phi(Q)) with vertical lines dropped (they die in the final exponent)."""
    f = (1, 0)
    T = P
    for bit in bin(n)[3:]:
        f = f2_sqr(f, p)
        if T is not None:
            if T[1] == 0:
                T = None
            else:
                lam = (3 * T[0] * T[0] + 1) * pow(2 * T[1], -1, p) % p
                f = f2_mul(f, _line(T, lam, Q, p), p)
                x3 = (lam * lam - 2 * T[0]) % p
                T = (x3, (lam * (T[0] - x3) - T[1]) % p)
        if bit == '1':
            if T is None:
                T = P
            elif T[0] == P[0]:
                if (T[1] + P[1]) % p == 0:
                    T = None
                else:
                    lam = (3 * T[0] * T[0] + 1) * pow(2 * T[1], -1, p) % p
                    f = f2_mul(f, _line(T, lam, Q, p), p)
                    T = ec_add(T, P, p)
            else:
                lam = (P[1] - T[1]) * pow(P[0] - T[0], -1, p) % p
                f = f2_mul(f, _line(T, lam, Q, p), p)
                x3 = (lam * lam - T[0] - P[0]) % p
                T = (x3, (lam * (T[0] - x3) - T[1]) % p)
    return f


def tate(P, Q, n, p, cofactor):
    """Modified Tate pairing e(P, phi(Q)) reduced to the order-n subgroup of F_p^2*."""
    if P is None or Q is None:
        return (1, 0)
    f = miller(P, Q, n, p)
    # f^(p-1) = conj(f)/f since p = 3 mod 4; then ^((p+1)/n)
    g = f2_mul(f2_conj(f, p), f2_inv(f, p), p)
    return f2_pow(g, cofactor, p)


def sqrt_mod(a, p):
    """Square root for p = 3 mod 4, or None."""
    a %= p
    r = pow(a, (p + 1) // 4, p)
    if r * r % p != a:
        return None
    return r


def hash_to_point(seed: bytes, p, cofactor, n, factors=()):
    """Deterministic point of order exactly n, derived from seed. Pass the
    prime factors of n to rule out points of smaller order."""
    ctr = 0
    plen = (p.bit_length() + 7) // 8 + 8
    while True:
        h = b''
        i = 0
        while len(h) < plen:
            h += hashlib.sha256(seed + ctr.to_bytes(4, 'big') + bytes([i])).digest()
            i += 1
        ctr += 1
        x = int.from_bytes(h[:plen], 'big') % p
        y = sqrt_mod(x * x * x + x, p)
        if y is None or y == 0:
            continue
        P = ec_mul((x, y), cofactor, p)
        if P is None:
            continue
        if ec_mul(P, n, p) is None and all(ec_mul(P, n // f, p) is not None for f in factors):
            return P
