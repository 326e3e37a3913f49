"""Synthetic genome corpus: a reference with segmental duplications and
population variants derived from it by point mutations."""

import random

from .grams import ALPHABET


def random_genome(length, rng, alphabet=ALPHABET):
    return ''.join(rng.choice(alphabet) for _ in range(length))


def reference(length, rng, dup_fraction=0.0, seg_len=(100, 400), alphabet=ALPHABET):
    """Random sequence where roughly dup_fraction of the positions are copies of
    earlier segments (the repeats a real mitochondrial genome carries)."""
    s = list(random_genome(length, rng, alphabet))
    target = int(dup_fraction * length)
    copied = 0
    while copied < target:
        k = min(rng.randint(*seg_len), target - copied)
        if k < 2 or k * 2 >= length:
            break
        src = rng.randrange(0, length - k)
        dst = rng.randrange(0, length - k)
        if abs(src - dst) < k:
            continue
        s[dst:dst + k] = s[src:src + k]
        copied += k
    return ''.join(s)


def substitute(s, pos, rng, alphabet=ALPHABET):
    c = s[pos]
    return s[:pos] + rng.choice([a for a in alphabet if a != c]) + s[pos + 1:]


def mutate(s, edits, rng, kinds=('sub', 'ins', 'del'), alphabet=ALPHABET):
    """Apply `edits` random edit operations."""
    for _ in range(edits):
        kind = rng.choice(kinds)
        if kind == 'sub' or len(s) < 2:
            s = substitute(s, rng.randrange(len(s)), rng, alphabet)
        elif kind == 'ins':
            i = rng.randrange(len(s) + 1)
            s = s[:i] + rng.choice(alphabet) + s[i:]
        else:
            i = rng.randrange(len(s))
            s = s[:i] + s[i + 1:]
    return s


def spaced_substitutions(s, u, gap, rng, start=None, alphabet=ALPHABET):
    """u substitutions at positions start, start+gap, ..."""
    span = (u - 1) * gap + 1 if u else 0
    if span > len(s):
        raise ValueError('edits do not fit')
    if start is None:
        start = rng.randrange(len(s) - span + 1)
    for k in range(u):
        s = substitute(s, start + k * gap, rng, alphabet)
    return s


def population(ref, count, rng, rate=0.002, alphabet=ALPHABET):
    """Variants of ref carrying ~rate*len point substitutions each."""
    out = []
    for _ in range(count):
        k = max(1, int(rng.gauss(rate * len(ref), (rate * len(ref)) ** 0.5)))
        out.append(mutate(ref, k, rng, kinds=('sub',), alphabet=alphabet))
    return out


def corpus(count, length, seed=0, alphabet=ALPHABET):
    rng = random.Random(seed)
    return [random_genome(length, rng, alphabet) for _ in range(count)]
