"""Shortened first-order Reed-Muller code with odd-size decoding-equation
sets, so majority-logic decoding never ties.

Bit convention: d[j] = x0 ^ XOR_i x_i * bit_{i-1}(j), positions 0..l-1.
"""

from dataclasses import dataclass

import numpy as np


class CodeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CodeSpec:
    m: int
    l: int
    equations: tuple        # equations[i-1] -> (lo, hi) index arrays for info bit i
    all_pairs: tuple        # every surviving pair before the odd-count trim
    const_positions: np.ndarray

    @property
    def info_len(self):
        return self.m + 1

    def dump(self):
        lines = ['m=%d l=%d' % (self.m, self.l)]
        for i, (lo, hi) in enumerate(self.equations, 1):
            lines.append('%d: ' % i + ' '.join('(%d,%d)' % (a, b) for a, b in zip(lo, hi)))
        lines.append('0: %d const positions' % len(self.const_positions))
        return '\n'.join(lines)


def make_spec(m, l):
    if m < 1 or not 1 <= l <= 1 << m:
        raise CodeError('need 1 <= l <= 2^m')
    eqs, full = [], []
    j = np.arange(l)
    for i in range(1, m + 1):
        s = 1 << (i - 1)
        lo = j[((j & s) == 0) & (j + s < l)]
        hi = lo + s
        if len(lo) == 0:
            raise CodeError('info bit %d has no decoding equation' % i)
        full.append((lo, hi))
        if len(lo) % 2 == 0:
            lo, hi = lo[:-1], hi[:-1]
        eqs.append((lo, hi))
    const = np.arange(l if l % 2 else l - 1)
    return CodeSpec(m, l, tuple(eqs), tuple(full), const)


def word_to_int(x):
    return sum(int(b) << i for i, b in enumerate(x))


def int_to_word(v, m):
    return tuple((v >> i) & 1 for i in range(m + 1))


def _linear(spec, x):
    j = np.arange(spec.l)
    out = np.zeros(spec.l, dtype=np.uint8)
    for i in range(1, spec.m + 1):
        if x[i]:
            out ^= ((j >> (i - 1)) & 1).astype(np.uint8)
    return out


def encode(spec, x):
    if len(x) != spec.m + 1:
        raise CodeError('information word must have m+1 bits')
    return _linear(spec, x) ^ np.uint8(x[0] & 1)


def decode(spec, y):
    y = np.asarray(y, dtype=np.uint8)
    if len(y) != spec.l:
        raise CodeError('received word length mismatch')
    x = [0]
    for lo, hi in spec.equations:
        ones = int(np.count_nonzero(y[lo] ^ y[hi]))
        x.append(1 if 2 * ones > len(lo) else 0)
    r = y ^ _linear(spec, x)
    ones = int(np.count_nonzero(r[spec.const_positions]))
    x[0] = 1 if 2 * ones > len(spec.const_positions) else 0
    return tuple(x)


def reencode(spec, y):
    x = decode(spec, y)
    return x, encode(spec, x)


def weight_spectrum(spec):
    """Weights of all 2^(m+1) shortened codewords, via a Walsh-Hadamard transform
    of the indicator of [0, l). Index is the information-word integer."""
    N = 1 << spec.m
    w = np.zeros(N, dtype=np.int64)
    w[:spec.l] = 1
    h = 1
    while h < N:
        w = w.reshape(-1, 2, h)
        w = np.concatenate([w[:, 0] + w[:, 1], w[:, 0] - w[:, 1]], axis=1).reshape(-1)
        h *= 2
    # w[a] = sum_{j<l} (-1)^{a.j}; info word bits 1..m carry a, bit 0 is x0
    zero = (spec.l - w) // 2
    out = np.empty(2 * N, dtype=np.int64)
    out[0::2] = zero
    out[1::2] = spec.l - zero
    return out


def min_distance(spec):
    ws = weight_spectrum(spec)
    return int(ws[1:].min())
