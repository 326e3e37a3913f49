"""Genome strings -> variable-length gram sets -> k=1 Bloom filters."""

import hashlib
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

ALPHABET = 'ACGT'
PAD = '#'

FNV_OFFSET = 0xcbf29ce484222325
FNV_PRIME = 0x100000001b3


class GramError(ValueError):
    pass


def required_length(p, k, n):
    """Bloom length giving false-positive rate p for n elements and k hashes."""
    if not 0 < p < 1:
        raise GramError('p must lie in (0, 1)')
    if k < 1 or n < 1:
        raise GramError('k and n must be positive')
    t = (1 - p ** (1.0 / k)) ** (1.0 / (k * n))
    return math.ceil(-1.0 / (t - 1))


def fp_rate(l, k, n):
    if l < 1:
        raise GramError('l must be positive')
    return (1 - (1 - 1.0 / l) ** (k * n)) ** k


def check_genome(s, alphabet=ALPHABET):
    if not s:
        raise GramError('empty genome')
    bad = set(s) - set(alphabet)
    if bad:
        raise GramError('characters outside alphabet: %s' % ''.join(sorted(bad)))
    return s


def read_genome(path, alphabet=ALPHABET):
    """Plain text or FASTA; '>' header lines skipped, whitespace dropped, uppercased."""
    with open(path) as f:
        parts = [line.strip() for line in f if not line.startswith('>')]
    return check_genome(''.join(''.join(parts).split()).upper(), alphabet)


@dataclass(frozen=True)
class GramDictionary:
    qmin: int
    qmax: int
    freq_threshold: int
    trie: dict

    def __contains__(self, gram):
        return gram in self.trie

    def digest(self):
        h = hashlib.sha256(b'%d,%d,%d;' % (self.qmin, self.qmax, self.freq_threshold))
        for g in sorted(self.trie):
            h.update(b'%s:%d;' % (g.encode(), self.trie[g]))
        return h.hexdigest()

    def to_text(self):
        head = 'qmin=%d\nqmax=%d\nfreq_threshold=%d\n' % (self.qmin, self.qmax, self.freq_threshold)
        return head + ''.join('%s\t%d\n' % (g, self.trie[g]) for g in sorted(self.trie))

    @classmethod
    def from_text(cls, text):
        lines = text.splitlines()
        kv = dict(line.split('=', 1) for line in lines[:3])
        trie = {}
        for line in lines[3:]:
            if line:
                g, f = line.split('\t')
                trie[g] = int(f)
        return cls(int(kv['qmin']), int(kv['qmax']), int(kv['freq_threshold']), trie)


def train_dictionary(corpus, qmin, qmax, freq_threshold):
    """Frequencies of all unpadded substrings of length qmin..qmax, kept if >= threshold."""
    if not corpus:
        raise GramError('empty corpus')
    if not 1 <= qmin <= qmax:
        raise GramError('need 1 <= qmin <= qmax')
    trie = {}
    for q in range(qmin, qmax + 1):
        cnt = Counter()
        for s in corpus:
            cnt.update(s[i:i + q] for i in range(len(s) - q + 1))
        for g, f in cnt.items():
            if f >= freq_threshold:
                trie[g] = f
    return GramDictionary(qmin, qmax, freq_threshold, trie)


def fixed_dictionary(q):
    """Degenerate dictionary for plain q-grams."""
    return GramDictionary(q, q, 1, {})


def generate_grams(s, gd):
    ext = PAD * (gd.qmax - 1) + s + PAD * (gd.qmax - 1)
    L = len(ext)
    trie = gd.trie
    out = set()
    for i in range(L - gd.qmin + 1):
        q = gd.qmin
        # frequency is monotone under extension, so stop at the first miss
        while q < gd.qmax and i + q < L and ext[i:i + q + 1] in trie:
            q += 1
        out.add(ext[i:i + q])
    return out


def fnv1a(data: bytes, seed=0):
    h = FNV_OFFSET ^ seed
    for b in data:
        h = ((h ^ b) * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def hash_positions(grams, l, seed):
    """Vectorized seeded FNV-1a over a list of grams, reduced mod l."""
    grams = list(grams)
    if not grams:
        return np.zeros(0, dtype=np.int64)
    lens = np.fromiter((len(g) for g in grams), dtype=np.int64, count=len(grams))
    w = int(lens.max())
    buf = np.frombuffer(''.join(g.ljust(w, '\0') for g in grams).encode('latin-1'),
                        dtype=np.uint8).reshape(len(grams), w)
    h = np.full(len(grams), (FNV_OFFSET ^ seed) & 0xFFFFFFFFFFFFFFFF, dtype=np.uint64)
    prime = np.uint64(FNV_PRIME)
    for k in range(w):
        live = lens > k
        hk = (h ^ buf[:, k].astype(np.uint64)) * prime
        h = np.where(live, hk, h)
    return (h % np.uint64(l)).astype(np.int64)


@dataclass(frozen=True, eq=False)
class BloomFilter:
    bits: np.ndarray
    l: int
    hash_seed: int
    k: int = 1

    def __post_init__(self):
        if self.k != 1:
            raise GramError('only k = 1 is supported')
        if len(self.bits) != self.l:
            raise GramError('bit vector length mismatch')
        self.bits.setflags(write=False)

    def __eq__(self, other):
        return (isinstance(other, BloomFilter) and self.l == other.l
                and self.hash_seed == other.hash_seed and np.array_equal(self.bits, other.bits))

    def weight(self):
        return int(np.count_nonzero(self.bits))

    def contains(self, gram):
        return bool(self.bits[hash_positions([gram], self.l, self.hash_seed)[0]])

    def to_bytes(self):
        return (self.l.to_bytes(4, 'big') + self.hash_seed.to_bytes(8, 'big')
                + np.packbits(self.bits, bitorder='little').tobytes())

    @classmethod
    def from_bytes(cls, b):
        l = int.from_bytes(b[:4], 'big')
        seed = int.from_bytes(b[4:12], 'big')
        if len(b) != 12 + (l + 7) // 8:
            raise GramError('bad filter encoding')
        bits = np.unpackbits(np.frombuffer(b[12:], dtype=np.uint8), count=l, bitorder='little')
        return cls(bits.copy(), l, seed)


def from_bits(bits, hash_seed=0):
    bits = np.asarray(bits, dtype=np.uint8).copy()
    return BloomFilter(bits, len(bits), hash_seed)


def build_filter(grams, l, hash_seed=0):
    if l < 1:
        raise GramError('l must be positive')
    bits = np.zeros(l, dtype=np.uint8)
    bits[hash_positions(grams, l, hash_seed)] = 1
    return BloomFilter(bits, l, hash_seed)


def hamming(a, b):
    if a.l != b.l or a.hash_seed != b.hash_seed:
        raise GramError('filter configuration mismatch')
    return int(np.count_nonzero(a.bits != b.bits))


def genome_filter(s, gd, l, hash_seed=0):
    return build_filter(generate_grams(s, gd), l, hash_seed)


def edit_distance(a, b):
    from rapidfuzz.distance import Levenshtein
    return Levenshtein.distance(a, b)
