"""Independent reference implementations used as test oracles."""

import math


def bloom_length(p, n):
    """Smallest l whose k=1 false-positive rate 1 - (1 - 1/l)^n is at most p,
    by bisection on the inequality in log form."""
    def ok(l):
        return l > 1 and n * math.log1p(-1 / l) >= math.log1p(-p)
    hi = 2
    while not ok(hi):
        hi *= 2
    lo = 1
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def rm_bit(x, j):
    """Codeword bit j for information word x (x0 constant, xi on bit i-1 of j)."""
    v = x[0]
    for i in range(1, len(x)):
        v ^= x[i] & ((j >> (i - 1)) & 1)
    return v


def qgrams_padded(s, q, pad='#'):
    ext = pad * (q - 1) + s + pad * (q - 1)
    return {ext[i:i + q] for i in range(len(ext) - q + 1)}


def levenshtein(a, b):
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[-1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def pearson(xs, ys):
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    return sxy / math.sqrt(sxx * syy)


def fnv1a(data, seed=0):
    h = 0xcbf29ce484222325 ^ seed
    for b in data:
        h ^= b
        h = (h * 0x100000001b3) % (1 << 64)
    return h


def popcount(bits):
    return sum(int(b) for b in bits)
