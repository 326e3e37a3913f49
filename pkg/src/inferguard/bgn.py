"""BGN somewhat-homomorphic encryption.

Ciphertexts are g^x h^r (level 1) and G^x H^rho (level 2) with G = e(g, g),
H = e(g, h). Randomizers compose additively in the exponent.

Two backends share one interface:
  real  supersingular curve y^2 = x^3 + x, Tate pairing into F_p^2
  mock  the same cyclic group of order n written as exponents of g mod n
        (insecure, for protocol logic and attack experiments)
"""

import hashlib
import math
import random
import secrets
from dataclasses import dataclass
from functools import cached_property

import gmpy2

from . import pairing as pr

REAL, MOCK = 'real', 'mock'
TAG = {REAL: 0x01, MOCK: 0x02}


class BGNError(ValueError):
    pass


class ParamGenError(BGNError):
    pass


class OutOfRange(BGNError):
    pass


def _rng(seed):
    if seed is None:
        return random.SystemRandom()
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


class _RealGroup:
    def __init__(self, pp):
        self.p = pp.descriptor['p']
        self.cof = pp.descriptor['cofactor']
        self.n = pp.n
        self.g = pp.g
        self.h = pp.h
        bits = self.n.bit_length()
        self._gt = pr.fixed_table(self.g, bits, self.p)
        self._ht = pr.fixed_table(self.h, bits, self.p)
        self.one = None
        self.one2 = (1, 0)
        self.G = pr.tate(self.g, self.g, self.n, self.p, self.cof)
        self.H = pr.tate(self.g, self.h, self.n, self.p, self.cof)
        self._Gt = self._sqr_table(self.G, bits)
        self._Ht = self._sqr_table(self.H, bits)
        self.width = (self.p.bit_length() + 7) // 8

    def _sqr_table(self, a, bits, w=pr.WINDOW):
        tab = []
        for _ in range((bits + w - 1) // w):
            row = [(1, 0)]
            for _ in range((1 << w) - 1):
                row.append(pr.f2_mul(row[-1], a, self.p))
            tab.append(row)
            a = pr.f2_mul(row[-1], a, self.p)
        return tab

    def _tpow(self, tab, k, w=pr.WINDOW):
        R = (1, 0)
        mask = (1 << w) - 1
        i = 0
        while k:
            v = k & mask
            if v:
                R = pr.f2_mul(R, tab[i][v], self.p)
            k >>= w
            i += 1
        return R

    # level 1
    def mul(self, A, B):
        return pr.ec_add(A, B, self.p)

    def pow(self, A, k):
        return pr.ec_mul(A, k % self.n, self.p)

    def inv(self, A):
        return pr.ec_neg(A, self.p)

    def gpow(self, k):
        return pr.table_mul(self._gt, k % self.n, self.p)

    def hpow(self, k):
        return pr.table_mul(self._ht, k % self.n, self.p)

    def pair(self, A, B):
        return pr.tate(A, B, self.n, self.p, self.cof)

    # level 2
    def mul2(self, A, B):
        return pr.f2_mul(A, B, self.p)

    def pow2(self, A, k):
        return pr.f2_pow(A, k % self.n, self.p)

    def inv2(self, A):
        # elements of the order-n subgroup are unitary
        return pr.f2_conj(A, self.p)

    def Gpow(self, k):
        return self._tpow(self._Gt, k % self.n)

    def Hpow(self, k):
        return self._tpow(self._Ht, k % self.n)

    def enc1(self, A):
        x, y = A if A is not None else (0, 0)
        return x.to_bytes(self.width, 'big') + y.to_bytes(self.width, 'big')

    def dec1(self, b):
        w = self.width
        x, y = int.from_bytes(b[:w], 'big'), int.from_bytes(b[w:2 * w], 'big')
        if x == 0 and y == 0:
            return None
        P = (x, y)
        if x >= self.p or y >= self.p or not pr.on_curve(P, self.p):
            raise BGNError('point not on curve')
        return P

    def enc2(self, A):
        return A[0].to_bytes(self.width, 'big') + A[1].to_bytes(self.width, 'big')

    def dec2(self, b):
        w = self.width
        a = (int.from_bytes(b[:w], 'big'), int.from_bytes(b[w:2 * w], 'big'))
        if a[0] >= self.p or a[1] >= self.p:
            raise BGNError('bad F_p^2 element')
        return a


class _MockGroup:
    """Element g^e stored as e mod n; serialized as (e mod q2, e mod q1)."""

    def __init__(self, pp):
        self.n = n = pp.n
        self.q1 = pp.descriptor['q1']
        self.q2 = pp.descriptor['q2']
        self.g = pp.g
        self.h = pp.h
        self.one = self.one2 = 0
        self.G = 1
        self.H = self.h
        self.width = (max(self.q1, self.q2).bit_length() + 7) // 8
        self._crt = (self.q1 * pow(self.q1, -1, self.q2), self.q2 * pow(self.q2, -1, self.q1))
        self.mul = self.mul2 = lambda A, B: (A + B) % n
        self.pow = self.pow2 = lambda A, k: A * k % n
        self.inv = self.inv2 = lambda A: -A % n
        self.gpow = self.Gpow = lambda k: k % n
        self.hpow = self.Hpow = lambda k: self.h * k % n
        self.pair = lambda A, B: A * B % n

    def enc1(self, A):
        w = self.width
        return (A % self.q2).to_bytes(w, 'big') + (A % self.q1).to_bytes(w, 'big')

    def dec1(self, b):
        w = self.width
        a, r = int.from_bytes(b[:w], 'big'), int.from_bytes(b[w:2 * w], 'big')
        if a >= self.q2 or r >= self.q1:
            raise BGNError('mock element out of range')
        return (a * self._crt[0] + r * self._crt[1]) % self.n

    enc2 = enc1
    dec2 = dec1


@dataclass(frozen=True)
class PublicParams:
    n: int
    g: object
    h: object
    descriptor: dict
    backend: str
    plaintext_bound: int
    prime_bits: int

    def __hash__(self):
        return hash((self.n, self.backend))

    @cached_property
    def group(self):
        return _RealGroup(self) if self.backend == REAL else _MockGroup(self)

    def to_text(self):
        lines = ['backend=%s' % self.backend, 'n=%d' % self.n,
                 'plaintext_bound=%d' % self.plaintext_bound, 'prime_bits=%d' % self.prime_bits]
        for k in sorted(self.descriptor):
            v = self.descriptor[k]
            lines.append('%s=%s' % (k, v.hex() if isinstance(v, bytes) else v))
        if self.backend == REAL:
            lines.append('g=%d,%d' % self.g)
            lines.append('h=%d,%d' % self.h)
        else:
            lines.append('g=%d' % self.g)
            lines.append('h=%d' % self.h)
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text):
        kv = parse_kv(text)
        backend = kv['backend']
        if backend == REAL:
            desc = {'p': int(kv['p']), 'cofactor': int(kv['cofactor'])}
            g = tuple(int(v) for v in kv['g'].split(','))
            h = tuple(int(v) for v in kv['h'].split(','))
        elif backend == MOCK:
            desc = {'q1': int(kv['q1']), 'q2': int(kv['q2'])}
            g, h = int(kv['g']), int(kv['h'])
        else:
            raise BGNError('unknown backend %r' % backend)
        return cls(int(kv['n']), g, h, desc, backend, int(kv['plaintext_bound']),
                   int(kv['prime_bits']))

    def digest(self):
        return hashlib.sha256(self.to_text().encode()).digest()


@dataclass(frozen=True)
class PrivateKey:
    q1: int
    q2: int
    beta: int = 1
    gen_seed: bytes = b''

    @property
    def theta(self):
        # log_g h, needed by the prover for level-2 randomizers
        return self.beta * self.q2

    def to_text(self):
        return 'q1=%d\nq2=%d\nbeta=%d\ngen_seed=%s\n' % (self.q1, self.q2, self.beta, self.gen_seed.hex())

    @classmethod
    def from_text(cls, text):
        kv = parse_kv(text)
        return cls(int(kv['q1']), int(kv['q2']), int(kv.get('beta', 1)),
                   bytes.fromhex(kv.get('gen_seed', '')))


def parse_kv(text):
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        k, _, v = line.partition('=')
        out[k.strip()] = v.strip()
    return out


def _prime(rng, bits, avoid=(), attempts=10000):
    for _ in range(attempts):
        c = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if c not in avoid and gmpy2.is_prime(c, 40):
            return c
    raise ParamGenError('no %d-bit prime found' % bits)


def gen_params(bit_size=64, plaintext_bound=1 << 15, seed=None, backend=REAL, attempts=1000):
    """Return (PublicParams, PrivateKey). Deterministic for a fixed seed."""
    if bit_size < 16:
        raise BGNError('bit_size must be >= 16')
    if backend not in TAG:
        raise BGNError('unknown backend %r' % backend)
    rng = _rng(seed)
    half = bit_size // 2
    for _ in range(attempts):
        q1 = _prime(rng, half)
        q2 = _prime(rng, bit_size - half, avoid=(q1,))
        n = q1 * q2
        if backend == MOCK:
            break
        c = 4
        while c < 4000 and not gmpy2.is_prime(c * n - 1, 40):
            c += 4
        if c < 4000:
            break
    else:
        raise ParamGenError('parameter search failed')
    gen_seed = rng.getrandbits(128).to_bytes(16, 'big')
    beta = rng.randrange(1, q1)
    sk = PrivateKey(q1, q2, beta, gen_seed)
    return make_public(sk, backend, plaintext_bound, cofactor=None if backend == MOCK else c), sk


def make_public(sk, backend, plaintext_bound, cofactor=None):
    """Rebuild public parameters from the key material disclosed at setup."""
    n = sk.q1 * sk.q2
    pb = min(sk.q1, sk.q2).bit_length()
    if backend == MOCK:
        return PublicParams(n, 1, sk.theta % n, {'q1': sk.q1, 'q2': sk.q2}, MOCK, plaintext_bound, pb)
    if cofactor is None:
        cofactor = 4
        while not gmpy2.is_prime(cofactor * n - 1, 40):
            cofactor += 4
    p = cofactor * n - 1
    g = pr.hash_to_point(sk.gen_seed, p, cofactor, n, (sk.q1, sk.q2))
    h = pr.ec_mul(g, sk.theta % n, p)
    return PublicParams(n, g, h, {'p': p, 'cofactor': cofactor}, REAL, plaintext_bound, pb)


def mock_params(q1, q2, beta=1, plaintext_bound=None):
    sk = PrivateKey(q1, q2, beta)
    if plaintext_bound is None:
        plaintext_bound = min(q1, q2) - 1
    return make_public(sk, MOCK, plaintext_bound), sk


@dataclass(frozen=True)
class CipherL1:
    element: object
    params: PublicParams

    def to_bytes(self):
        return bytes([TAG[self.params.backend]]) + self.params.group.enc1(self.element)


@dataclass(frozen=True)
class CipherL2:
    element: object
    params: PublicParams

    def to_bytes(self):
        return bytes([TAG[self.params.backend] | 0x80]) + self.params.group.enc2(self.element)


def elem_size(params):
    return 1 + 2 * params.group.width


def from_bytes(params, b, level=1):
    tag = TAG[params.backend] | (0x80 if level == 2 else 0)
    if len(b) != elem_size(params) or b[0] != tag:
        raise BGNError('bad ciphertext encoding')
    grp = params.group
    if level == 1:
        return CipherL1(grp.dec1(b[1:]), params)
    return CipherL2(grp.dec2(b[1:]), params)


def _same(a, b):
    if a.params is not b.params and a.params != b.params:
        raise BGNError('parameter/backend mismatch')


def fresh_r(params, rng=None):
    rng = rng or secrets.SystemRandom()
    return rng.randrange(params.n)


def encrypt1(params, x, r=None, rng=None):
    if not 0 <= x < params.n:
        raise BGNError('plaintext out of range')
    if r is None:
        r = fresh_r(params, rng)
    grp = params.group
    return CipherL1(grp.mul(grp.gpow(x), grp.hpow(r)), params)


def encrypt2(params, x, rho=None, rng=None):
    if rho is None:
        rho = fresh_r(params, rng)
    grp = params.group
    return CipherL2(grp.mul2(grp.Gpow(x), grp.Hpow(rho)), params)


def add_l1(a, b):
    _same(a, b)
    return CipherL1(a.params.group.mul(a.element, b.element), a.params)


def add_l2(a, b):
    _same(a, b)
    return CipherL2(a.params.group.mul2(a.element, b.element), a.params)


def neg(a):
    grp = a.params.group
    if isinstance(a, CipherL1):
        return CipherL1(grp.inv(a.element), a.params)
    return CipherL2(grp.inv2(a.element), a.params)


def smul(a, k):
    grp = a.params.group
    if isinstance(a, CipherL1):
        return CipherL1(grp.pow(a.element, k), a.params)
    return CipherL2(grp.pow2(a.element, k), a.params)


def pair(a, b):
    _same(a, b)
    return CipherL2(a.params.group.pair(a.element, b.element), a.params)


_bsgs_cache = {}


def _bsgs(grp, level, base, target, bound):
    m = math.isqrt(bound) + 1
    key = (grp.n, grp.g, level, bound)
    mul, pw, inv = (grp.mul, grp.pow, grp.inv) if level == 1 else (grp.mul2, grp.pow2, grp.inv2)
    tab = _bsgs_cache.get(key)
    if tab is None:
        tab = {}
        e = grp.one if level == 1 else grp.one2
        for j in range(m):
            tab.setdefault(e, j)
            e = mul(e, base)
        tab = (tab, inv(pw(base, m)))
        _bsgs_cache[key] = tab
    baby, giant = tab
    y = target
    for i in range(m + 1):
        j = baby.get(y)
        if j is not None and i * m + j <= bound:
            return i * m + j
        y = mul(y, giant)
    return None


def decrypt(sk, c, bound=None):
    """Strip the randomizer with ^q1, then BSGS over [0, bound].
    Unique only for plaintexts below q2."""
    params = c.params
    if bound is None:
        bound = params.plaintext_bound
    if bound > params.plaintext_bound:
        raise BGNError('bound exceeds plaintext_bound')
    grp = params.group
    if isinstance(c, CipherL1):
        x = _bsgs(grp, 1, grp.gpow(sk.q1), grp.pow(c.element, sk.q1), bound)
    else:
        x = _bsgs(grp, 2, grp.Gpow(sk.q1), grp.pow2(c.element, sk.q1), bound)
    if x is None:
        raise OutOfRange('plaintext not in [0, %d]' % bound)
    return x


def open_randomizer(c, claimed_x, claimed_r):
    if not 0 <= claimed_x < c.params.n:
        return False
    return encrypt1(c.params, claimed_x, claimed_r).element == c.element


def open_zero2(c, rho):
    """Level-2 check that c = H^rho."""
    return c.params.group.Hpow(rho) == c.element


def validate_disclosure(params, sk):
    """Verifier-side check of the setup disclosure: primes, n, generators."""
    q1, q2 = sk.q1, sk.q2
    if q1 == q2 or not gmpy2.is_prime(q1, 40) or not gmpy2.is_prime(q2, 40):
        return False
    if q1 * q2 != params.n:
        return False
    cof = params.descriptor.get('cofactor')
    try:
        rebuilt = make_public(sk, params.backend, params.plaintext_bound, cofactor=cof)
    except Exception:
        return False
    return rebuilt == params
